#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <vector>

#include "binec/bit_matrix.hpp"
#include "binec/combinatorics.hpp"
#include "binec/rational.hpp"

namespace binec {

using Distance = std::uint64_t;
inline constexpr Distance kInfiniteDistance = std::numeric_limits<Distance>::max();

/**
 * Minimum number of columns of B (a x c) whose XOR equals each syndrome in
 * GF(2)^a, found by breadth-first search from 0. Syndromes outside the
 * column span of B are unreachable and have infinite weight.
 *
 * Over GF(2) a repeated column cancels, so the BFS count is automatically a
 * count of distinct columns.
 */
class CosetLeaderTable {
public:
    static constexpr std::size_t kMaxRows = 24;
    static constexpr std::uint8_t kUnreachable = 0xFF;

    explicit CosetLeaderTable(BitMatrix b);

    const BitMatrix& matrix() const { return b_; }
    std::size_t rows() const { return b_.rows(); }
    std::size_t cols() const { return b_.cols(); }
    std::span<const std::uint8_t> weights() const { return weights_; }

    Distance delta(std::uint32_t syndrome) const {
        const std::uint8_t w = weights_[syndrome];
        return w == kUnreachable ? kInfiniteDistance : w;
    }
    bool spans() const { return reachable_ == weights_.size(); }

    /// Binary blob: "BNCT", version, a, c (u32 little endian), the bits of B
    /// row-major MSB-first, then one weight byte per syndrome.
    void write(std::ostream& out) const;
    static CosetLeaderTable read(std::istream& in);

private:
    CosetLeaderTable(BitMatrix b, std::vector<std::uint8_t> weights);

    BitMatrix b_;
    std::vector<std::uint8_t> weights_;
    std::size_t reachable_ = 0;
};

CosetLeaderTable build_coset_table(const BitMatrix& b);

Distance delta(const CosetLeaderTable& table, const std::vector<bool>& v);

/// Sum over columns of delta(M1(i) xor M2(i)); infinite if any term is.
Distance transform_distance(const CosetLeaderTable& table, const BitMatrix& m1, const BitMatrix& m2);
Distance transform_distance(const CosetLeaderTable& table, std::span<const std::uint32_t> cols1,
                            std::span<const std::uint32_t> cols2);

/// counts[d] = number of syndromes of weight d (reachable ones only).
struct BallVolumeProfile {
    std::vector<std::uint64_t> counts;
    std::uint64_t reachable() const;
};

BallVolumeProfile ball_profile(const CosetLeaderTable& table);

/// Number of a x n difference matrices D with sum_i delta(D(i)) <= radius.
BigInt ball_volume_exact(const CosetLeaderTable& table, std::uint64_t radius, std::size_t n);

/// (Em choose floor(pEm))^n.
BigInt sphere_count_lower(std::size_t edges, unsigned m, std::size_t n, const Rational& p);
/// (2b + 1) * (Emn choose 2b) with b = floor(pEmn).
BigInt sphere_count_upper(std::size_t edges, unsigned m, std::size_t n, const Rational& p);

/// An a x n matrix packed column-major into one integer: column i occupies
/// bits [i*a, (i+1)*a). Requires a*n <= 32.
std::uint32_t pack_columns(std::span<const std::uint32_t> cols, std::size_t a);
std::vector<std::uint32_t> unpack_columns(std::uint32_t packed, std::size_t a, std::size_t n);

/// Every packed difference matrix in the radius ball, in a fixed order.
std::vector<std::uint32_t> ball_offsets(const CosetLeaderTable& table, std::uint64_t radius, std::size_t n);

} // namespace binec
