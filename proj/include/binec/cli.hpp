#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "binec/codes.hpp"

namespace binec::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kGuard = 2, kFailure = 3 };

enum class NoiseKind { uniform, concentrated, exhaustive };

/// Flat key=value experiment description; see README for the keys.
struct ExperimentConfig {
    std::string network = "synthetic";
    std::size_t capacity = 0;
    std::size_t edges = 0;
    unsigned m = 1;
    std::size_t n = 1;
    Rational p;
    std::uint64_t seed = 1;
    CodingMode mode = CodingMode::coherent;
    NoiseKind noise = NoiseKind::uniform;
    std::vector<std::size_t> targets;
    std::size_t trials = 0;
    std::string family_file;
    std::size_t retries = 64;
    std::uint64_t extra_budget = 0;
};

using ConfigMap = std::map<std::string, std::string>;

/// Reads `key = value` lines; `#` starts a comment.
ConfigMap parse_config_text(std::istream& in);
ConfigMap load_config_file(const std::string& path);
ExperimentConfig to_experiment(const ConfigMap& values);

/// The channel an experiment runs over, rebuilt deterministically from its config.
struct Setup {
    Field field;
    ChannelParams params;
    TransferPair transfer;
    std::size_t attempts = 1;
};

Setup make_setup(const ExperimentConfig& cfg);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace binec::cli
