#include <doctest.h>

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "binec/errors.hpp"
#include "binec/metric.hpp"
#include "support.hpp"

using namespace binec;

namespace {

// Smallest number of columns of b whose XOR is s, over all 2^c subsets.
Distance delta_by_subsets(const BitMatrix& b, std::uint32_t s) {
    const auto cols = b.columns();
    Distance best = kInfiniteDistance;
    for (std::uint32_t mask = 0; mask < (1U << cols.size()); ++mask) {
        std::uint32_t x = 0;
        for (std::size_t i = 0; i < cols.size(); ++i)
            if ((mask >> i) & 1U) x ^= cols[i];
        if (x == s) best = std::min<Distance>(best, std::popcount(mask));
    }
    return best;
}

Distance distance_by_subsets(const BitMatrix& b, const BitMatrix& m1, const BitMatrix& m2) {
    Distance total = 0;
    for (std::size_t i = 0; i < m1.cols(); ++i) {
        const Distance d = delta_by_subsets(b, m1.column(i) ^ m2.column(i));
        if (d == kInfiniteDistance) return kInfiniteDistance;
        total += d;
    }
    return total;
}

BitMatrix spanning_matrix(std::size_t a, std::size_t c, Rng& rng) {
    for (;;) {
        BitMatrix b = BitMatrix::random(a, c, rng);
        if (b.rank() == a) return b;
    }
}

} // namespace

TEST_SUITE("metric") {

TEST_CASE("coset-leader weights equal the subset-minimization oracle") {
    Rng rng(31);
    for (int t = 0; t < 200; ++t) {
        const std::size_t a = 1 + uniform_below(rng, 6);
        const std::size_t c = 1 + uniform_below(rng, 8);
        const std::size_t n = 1 + uniform_below(rng, 4);
        const BitMatrix b = BitMatrix::random(a, c, rng);
        const CosetLeaderTable table = build_coset_table(b);
        for (std::uint32_t s = 0; s < (1U << a); ++s) REQUIRE(table.delta(s) == delta_by_subsets(b, s));
        const BitMatrix m1 = BitMatrix::random(a, n, rng);
        const BitMatrix m2 = BitMatrix::random(a, n, rng);
        REQUIRE(transform_distance(table, m1, m2) == distance_by_subsets(b, m1, m2));
        REQUIRE(transform_distance(table, m1.columns(), m2.columns()) == distance_by_subsets(b, m1, m2));
        CHECK(table.spans() == (b.rank() == a));
    }
}

TEST_CASE("metric axioms on random triples") {
    Rng rng(37);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t a = 1 + uniform_below(rng, 6);
        const std::size_t c = a + uniform_below(rng, 4);
        const std::size_t n = 1 + uniform_below(rng, 4);
        const CosetLeaderTable table = build_coset_table(spanning_matrix(a, c, rng));
        const BitMatrix x = BitMatrix::random(a, n, rng);
        const BitMatrix y = BitMatrix::random(a, n, rng);
        const BitMatrix z = BitMatrix::random(a, n, rng);
        const Distance dxy = transform_distance(table, x, y);
        REQUIRE(transform_distance(table, x, x) == 0);
        REQUIRE((dxy == 0) == (x == y));
        REQUIRE(dxy == transform_distance(table, y, x));
        REQUIRE(dxy <= transform_distance(table, x, z) + transform_distance(table, z, y));
    }
}

TEST_CASE("identity B gives Hamming distance") {
    Rng rng(41);
    const CosetLeaderTable table = build_coset_table(BitMatrix::identity(5));
    for (int t = 0; t < 200; ++t) {
        const BitMatrix x = BitMatrix::random(5, 6, rng);
        const BitMatrix y = BitMatrix::random(5, 6, rng);
        REQUIRE(transform_distance(table, x, y) == (x ^ y).popcount());
    }
}

TEST_CASE("unreachable syndromes give infinite distance") {
    BitMatrix b(2, 1);
    b.set(0, 0, true);
    const CosetLeaderTable table = build_coset_table(b);
    CHECK(table.delta(2) == kInfiniteDistance);
    CHECK_FALSE(table.spans());
    CHECK(delta(table, std::vector<bool>{true, false}) == 1);
    CHECK_THROWS(delta(table, std::vector<bool>{true}));
    const std::vector<std::uint32_t> c1{0, 0}, c2{1, 2};
    CHECK(transform_distance(table, c1, c2) == kInfiniteDistance);
}

TEST_CASE("table guard") {
    CHECK_THROWS_AS(build_coset_table(BitMatrix(25, 25)), GuardError);
}

TEST_CASE("table blob round trip") {
    Rng rng(43);
    const CosetLeaderTable table = build_coset_table(BitMatrix::random(6, 9, rng));
    std::stringstream buf;
    table.write(buf);
    CHECK(buf.str().substr(0, 4) == "BNCT");
    const CosetLeaderTable again = CosetLeaderTable::read(buf);
    CHECK(again.matrix() == table.matrix());
    CHECK(std::equal(again.weights().begin(), again.weights().end(), table.weights().begin(),
                     table.weights().end()));
    std::stringstream bad("BNCX");
    CHECK_THROWS(CosetLeaderTable::read(bad));
}

TEST_CASE("ball volumes and offsets against exhaustive counting") {
    Rng rng(47);
    for (int t = 0; t < 30; ++t) {
        const std::size_t a = 1 + uniform_below(rng, 4);
        const std::size_t c = a + uniform_below(rng, 3);
        const std::size_t n = 1 + uniform_below(rng, 4);
        const BitMatrix b = BitMatrix::random(a, c, rng);
        const CosetLeaderTable table = build_coset_table(b);
        for (std::uint64_t radius = 0; radius <= 4; ++radius) {
            std::set<std::uint32_t> brute;
            for (std::uint32_t packed = 0; packed < (1U << (a * n)); ++packed) {
                Distance total = 0;
                for (const auto col : unpack_columns(packed, a, n)) {
                    const Distance d = delta_by_subsets(b, col);
                    total = d == kInfiniteDistance ? kInfiniteDistance : total + d;
                    if (total == kInfiniteDistance) break;
                }
                if (total <= radius) brute.insert(packed);
            }
            const auto offsets = ball_offsets(table, radius, n);
            REQUIRE(std::set<std::uint32_t>(offsets.begin(), offsets.end()) == brute);
            REQUIRE(offsets.size() == brute.size());
            REQUIRE(ball_volume_exact(table, radius, n) == brute.size());
        }
    }
}

TEST_CASE("ball profile counts syndromes by weight") {
    const BallVolumeProfile prof = ball_profile(build_coset_table(BitMatrix::identity(4)));
    REQUIRE(prof.counts.size() >= 5);
    CHECK(prof.counts[0] == 1);
    CHECK(prof.counts[1] == 4);
    CHECK(prof.counts[2] == 6);
    CHECK(prof.reachable() == 16);
}

TEST_CASE("packing round trip") {
    const std::vector<std::uint32_t> cols{1, 2, 3};
    const std::uint32_t packed = pack_columns(cols, 2);
    CHECK(packed == (1U | (2U << 2) | (3U << 4)));
    CHECK(unpack_columns(packed, 2, 3) == cols);
}

TEST_CASE("sphere counts for the desk instance") {
    const auto p = testing::desk_params();
    CHECK(sphere_count_upper(p.edges, p.m, p.n, p.p) == 459); // 3 * C(18, 2)
    CHECK(sphere_count_lower(p.edges, p.m, p.n, p.p) == 1);   // C(3, 0)^6
    CHECK(sphere_count_lower(3, 2, 2, Rational(1, 6)) == 36);  // C(6, 1)^2
    // the radius-2 ball of the desk T-hat is at most the upper count
    const CosetLeaderTable table = build_coset_table(lift_matrix(Field(1), testing::desk_transfer().impulse));
    CHECK(ball_volume_exact(table, 2, 6) <= 459);
}

} // TEST_SUITE
