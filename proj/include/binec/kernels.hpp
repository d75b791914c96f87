#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "binec/metric.hpp"

namespace binec {

/// What a decoder knows about one candidate impulse-response matrix.
struct MemberTables {
    CosetLeaderTable table; // over lift(T-hat)
    /// images[M] = columns of lift(T) X(M).
    std::vector<std::vector<std::uint32_t>> images;
};

struct DecodingTables {
    std::size_t rows = 0; // Cm
    std::size_t n = 0;
    std::size_t num_messages = 0;
    std::vector<MemberTables> members;
};

/// The realized channel: codeword images and the columns of lift(T-hat),
/// so that noise bit (r, k) of Z flips column k of Y by noise_columns[r].
struct ChannelTables {
    std::size_t rows = 0;
    std::size_t n = 0;
    std::vector<std::vector<std::uint32_t>> images;
    std::vector<std::uint32_t> noise_columns;
};

struct DecodeResult {
    std::size_t message = 0;
    Distance distance = kInfiniteDistance;
    bool unique = false;
    std::size_t member = 0;

    friend bool operator==(const DecodeResult&, const DecodeResult&) = default;
};

struct Witness {
    std::size_t message = 0;
    std::vector<std::size_t> support; // row-major positions in Z
    DecodeResult decoded;

    friend bool operator==(const Witness&, const Witness&) = default;
};

struct FailureScan {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    /// First failing (message, weight, colex rank), if any.
    std::optional<Witness> first;

    friend bool operator==(const FailureScan&, const FailureScan&) = default;
};

// The serial kernels are the reference implementation; the parallel ones
// must return identical results for any thread count.
namespace serial {

/// argmin over (message, member) of the transform distance; ties go to the
/// lowest message, then the lowest member. unique is false when another
/// message attains the same distance.
DecodeResult nearest(const DecodingTables& dec, std::span<const std::uint32_t> y);

/// min over members and message pairs of d(image_i, image_j); infinite for
/// fewer than two messages.
Distance min_pairwise_distance(const DecodingTables& dec);

/// Every noise pattern of weight <= budget applied to every listed message.
FailureScan scan_failures(const ChannelTables& channel, const DecodingTables& dec, std::uint64_t budget,
                          std::span<const std::size_t> messages);

} // namespace serial

namespace parallel {

DecodeResult nearest(const DecodingTables& dec, std::span<const std::uint32_t> y);
Distance min_pairwise_distance(const DecodingTables& dec);
FailureScan scan_failures(const ChannelTables& channel, const DecodingTables& dec, std::uint64_t budget,
                          std::span<const std::size_t> messages);

} // namespace parallel

} // namespace binec
