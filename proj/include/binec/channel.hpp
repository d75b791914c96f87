#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "binec/bit_matrix.hpp"
#include "binec/gf2m.hpp"
#include "binec/network.hpp"
#include "binec/rational.hpp"

namespace binec {

struct ChannelParams {
    std::size_t capacity = 0; // C
    std::size_t edges = 0;    // E
    unsigned m = 1;
    std::size_t n = 1;
    Rational p;

    /// Throws std::invalid_argument unless n >= 1, 1 <= C <= E, 0 <= p < 1.
    void validate() const;

    /// floor(p * E * m * n): the worst-case number of bit flips.
    std::uint64_t budget() const;
    std::size_t noise_rows() const { return edges * m; }
    std::size_t packet_rows() const { return capacity * m; }

    friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

/// Em x n flip pattern together with the budget it was drawn under.
struct NoiseMatrix {
    BitMatrix z;
    std::uint64_t budget = 0;
};

/// Exactly budget() flips, uniform over all Em*n positions without replacement.
NoiseMatrix noise_uniform(const ChannelParams& params, std::uint64_t seed);
/// As above with an explicit number of flips in place of budget().
NoiseMatrix noise_uniform(const ChannelParams& params, std::uint64_t seed, std::uint64_t weight);

/// budget() flips confined to the m-row blocks of the targeted edges.
NoiseMatrix noise_concentrated(const ChannelParams& params, std::span<const std::size_t> target_edges,
                               std::uint64_t seed);
NoiseMatrix noise_concentrated(const ChannelParams& params, std::span<const std::size_t> target_edges,
                               std::uint64_t seed, std::uint64_t weight);

/// Flip pattern with ones at the given row-major positions (row * n + col).
BitMatrix noise_from_support(const ChannelParams& params, std::span<const std::size_t> support);

/// Y = lift(T) X xor lift(T-hat) Z over GF(2).
BitMatrix transmit(const TransferPair& tp, const Field& field, const BitMatrix& x, const BitMatrix& z);

/// The same channel evaluated over GF(2^m) and mapped back to bits.
BitMatrix transmit_field(const TransferPair& tp, const Field& field, const BitMatrix& x, const BitMatrix& z);

} // namespace binec
