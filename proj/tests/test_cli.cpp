#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "binec/cli.hpp"

using namespace binec;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "binec");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "binec_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

const char* const kDesk = "# desk instance\nC = 2\nE = 3\nm = 1\nn = 6\np = 1/18\nseed = 4\nnoise = exhaustive\n";

} // namespace

TEST_SUITE("cli") {

TEST_CASE("config parsing") {
    std::istringstream in("a = 1\n\n  # comment\nb=two words # trailing\n");
    const auto map = cli::parse_config_text(in);
    CHECK(map.size() == 2);
    CHECK(map.at("a") == "1");
    CHECK(map.at("b") == "two words");
    std::istringstream bad("novalue\n");
    CHECK_THROWS(cli::parse_config_text(bad));
    CHECK_THROWS(cli::to_experiment({{"colour", "red"}}));
    CHECK_THROWS(cli::to_experiment({{"n", "-3"}}));
    CHECK_THROWS(cli::to_experiment({{"noise", "concentrated"}}));
    const auto cfg = cli::to_experiment({{"p", "1/18"}, {"mode", "noncoherent"}, {"targets", "0, 2"},
                                         {"noise", "concentrated"}});
    CHECK(cfg.p == Rational(1, 18));
    CHECK(cfg.mode == CodingMode::noncoherent);
    CHECK(cfg.targets == std::vector<std::size_t>{0, 2});
}

TEST_CASE("flags override the config file") {
    const auto cfg = scratch("flags.cfg");
    write(cfg, kDesk);
    const Result a = run_cli({"build", "--config", cfg.string()});
    const Result b = run_cli({"build", "--config", cfg.string(), "--p", "0"});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out.find("budget 1\n") != std::string::npos);
    CHECK(b.out.find("budget 0\n") != std::string::npos);
    CHECK(b.out.find("size 4096\n") != std::string::npos);
}

TEST_CASE("verify-field") {
    CHECK(run_cli({"verify-field", "--m", "2"}).code == 0);
    const Result r4 = run_cli({"verify-field", "--m", "4"});
    CHECK(r4.code == 0);
    CHECK(r4.out.find("mode exhaustive") != std::string::npos);
    CHECK(run_cli({"verify-field", "--m", "9", "--samples", "500"}).code == 0);
    CHECK(run_cli({"verify-field", "--m", "17"}).code == cli::kUsage);
    CHECK(run_cli({"verify-field"}).code == cli::kUsage);
}

TEST_CASE("bounds prints one row and reports regime violations without failing") {
    const Result r = run_cli({"bounds", "--p", "1/3", "--C", "2", "--E", "3", "--m", "1", "--n", "6"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row, extra;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK_FALSE(std::getline(lines, extra));
    CHECK(row.substr(row.size() - 2) == ",0");
}

TEST_CASE("build, simulate and exit codes") {
    const auto cfg = scratch("desk.cfg");
    const auto cb = scratch("desk.cb");
    write(cfg, kDesk);
    const Result built = run_cli({"build", "--config", cfg.string(), "--codebook", cb.string()});
    REQUIRE(built.code == 0);
    CHECK(built.out.find("gv_size_guarantee 9\n") != std::string::npos);
    CHECK(built.out.find("invariants ok\n") != std::string::npos);

    const Result sim = run_cli({"simulate", "--config", cfg.string(), "--codebook", cb.string()});
    CHECK(sim.code == 0);
    CHECK(sim.out.find("failures 0\n") != std::string::npos);

    const Result over = run_cli({"simulate", "--config", cfg.string(), "--codebook", cb.string(), "--extra-budget", "1"});
    CHECK(over.code == 0);
    CHECK(over.out.find("witness message=") != std::string::npos);

    const Result none = run_cli({"simulate", "--config", cfg.string(), "--codebook", cb.string(), "--noise", "uniform",
                                 "--trials", "0"});
    CHECK(none.code == 0);
    CHECK(none.out.find("trials 0\nfailures 0\n") != std::string::npos);

    const Result rnd = run_cli({"simulate", "--config", cfg.string(), "--codebook", cb.string(), "--noise",
                                "concentrated", "--targets", "2", "--trials", "40"});
    CHECK(rnd.code == 0);
    CHECK(rnd.out.find("trials 40\nfailures 0\n") != std::string::npos);

    CHECK(run_cli({"simulate", "--config", cfg.string(), "--codebook", cb.string(), "--n", "5"}).code == cli::kUsage);
    CHECK(run_cli({"simulate", "--config", cfg.string(), "--codebook", cb.string(), "--mode", "noncoherent"}).code ==
          cli::kUsage);
    CHECK(run_cli({"build", "--config", cfg.string(), "--n", "20"}).code == cli::kGuard);
    CHECK(run_cli({"build", "--C", "4", "--E", "8", "--m", "2", "--n", "2"}).code == cli::kGuard);
    CHECK(run_cli({"build", "--config", cfg.string(), "--unknown"}).code == cli::kUsage);
    CHECK(run_cli({}).code == cli::kUsage);
}

TEST_CASE("network files and mds-check") {
    const auto net = scratch("diamond.net");
    write(net, "net 5\nsource 0\nsink 4\nedge 0 1\nedge 0 2\nedge 1 2\nedge 1 3\nedge 2 3\nedge 3 4\nedge 3 4\n");
    CHECK(run_cli({"mds-check", "--network", net.string(), "--m", "4"}).code == cli::kGuard);
    const auto relay = scratch("relay.net");
    write(relay, "net 3\nsource 0\nsink 2\nedge 0 1\nedge 0 1\nedge 1 2\nedge 1 2\n");
    const auto table = scratch("relay.bnct");
    const Result r = run_cli({"mds-check", "--network", relay.string(), "--m", "4", "--seed", "3", "--export-table",
                              table.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("C 2\nE 4\n") != std::string::npos);
    CHECK(r.out.find("mds yes\n") != std::string::npos);
    CHECK(slurp(table).substr(0, 4) == "BNCT");
    CHECK(run_cli({"mds-check", "--network", relay.string(), "--m", "1", "--retries", "8"}).code == cli::kGuard);
    CHECK(run_cli({"mds-check", "--network", relay.string(), "--m", "4", "--C", "3"}).code == cli::kUsage);
    CHECK(run_cli({"mds-check", "--network", scratch("missing.net").string()}).code == cli::kUsage);

    const auto fam = scratch("desk.family");
    const Result f = run_cli({"mds-check", "--C", "2", "--E", "3", "--m", "1", "--export-family", fam.string()});
    CHECK(f.code == 0);
    CHECK(f.out.find("family 6\n") != std::string::npos);
    const Result nc = run_cli({"build", "--C", "2", "--E", "3", "--m", "1", "--n", "6", "--p", "1/18", "--mode",
                               "noncoherent", "--family", fam.string()});
    CHECK(nc.code == 0);
    CHECK(nc.out.find("family 6\n") != std::string::npos);
}

TEST_CASE("reruns are byte-identical") {
    const auto cfg = scratch("det.cfg");
    write(cfg, kDesk);
    const auto a = scratch("det_a.cb"), b = scratch("det_b.cb");
    const Result ra = run_cli({"build", "--config", cfg.string(), "--codebook", a.string(), "--mode", "noncoherent"});
    const Result rb = run_cli({"build", "--config", cfg.string(), "--codebook", b.string(), "--mode", "noncoherent"});
    CHECK(ra.out == rb.out);
    CHECK(slurp(a) == slurp(b));
    const auto ca = scratch("det_a.csv"), cb = scratch("det_b.csv");
    run_cli({"simulate", "--config", cfg.string(), "--codebook", a.string(), "--mode", "noncoherent", "--noise",
             "uniform", "--trials", "25", "--csv", ca.string()});
    run_cli({"simulate", "--config", cfg.string(), "--codebook", a.string(), "--mode", "noncoherent", "--noise",
             "uniform", "--trials", "25", "--csv", cb.string()});
    CHECK(slurp(ca) == slurp(cb));
    CHECK(slurp(ca).size() > 100);
}

} // TEST_SUITE
