#include <doctest.h>

#include <algorithm>

#include "binec/channel.hpp"
#include "support.hpp"

using namespace binec;

TEST_SUITE("channel") {

TEST_CASE("budget is floor(pEmn), exactly") {
    CHECK(testing::desk_params().budget() == 1);
    CHECK(ChannelParams{2, 3, 1, 6, Rational(1, 19)}.budget() == 0);
    CHECK(ChannelParams{4, 6, 3, 10, Rational::parse("0.01")}.budget() == 1);
    CHECK(ChannelParams{4, 6, 3, 10, Rational::parse("0.0099")}.budget() == 1);
    CHECK(ChannelParams{4, 6, 3, 10, Rational(1, 180)}.budget() == 1);
    CHECK(ChannelParams{4, 6, 3, 10, Rational(1, 181)}.budget() == 0);
    CHECK_THROWS_AS((ChannelParams{3, 2, 1, 1, Rational()}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ChannelParams{1, 2, 1, 0, Rational()}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ChannelParams{1, 2, 1, 1, Rational(1, 1)}.validate()), std::invalid_argument);
}

TEST_CASE("uniform noise has exactly the budget and is seed-deterministic") {
    const ChannelParams params{3, 5, 2, 8, Rational(1, 20)};
    REQUIRE(params.budget() == 4);
    const NoiseMatrix a = noise_uniform(params, 9);
    CHECK(a.z.rows() == 10);
    CHECK(a.z.cols() == 8);
    CHECK(a.z.popcount() == 4);
    CHECK(noise_uniform(params, 9).z == a.z);
    bool differs = false;
    for (std::uint64_t s = 10; s < 20 && !differs; ++s) differs = !(noise_uniform(params, s).z == a.z);
    CHECK(differs);
    CHECK(noise_uniform(params, 9, 7).z.popcount() == 7);
    CHECK_THROWS(noise_uniform(params, 9, 81));
}

TEST_CASE("concentrated noise stays on the targeted edges") {
    const ChannelParams params{3, 5, 2, 8, Rational(1, 10)};
    const std::vector<std::size_t> targets{1, 4};
    for (std::uint64_t s = 0; s < 20; ++s) {
        const NoiseMatrix z = noise_concentrated(params, targets, s);
        CHECK(z.z.popcount() == params.budget());
        for (std::size_t r = 0; r < z.z.rows(); ++r) {
            const bool targeted = std::find(targets.begin(), targets.end(), r / params.m) != targets.end();
            if (!targeted)
                for (std::size_t c = 0; c < z.z.cols(); ++c) REQUIRE_FALSE(z.z.get(r, c));
        }
    }
    // more flips than the targeted rows can hold
    const std::vector<std::size_t> one{0};
    CHECK_THROWS(noise_concentrated(params, one, 1, 17));
}

TEST_CASE("support positions are row-major") {
    const auto params = testing::desk_params();
    const std::vector<std::size_t> support{0, 7, 17};
    const BitMatrix z = noise_from_support(params, support);
    CHECK(z.popcount() == 3);
    CHECK(z.get(0, 0));
    CHECK(z.get(1, 1));
    CHECK(z.get(2, 5));
}

TEST_CASE("one flipped noise bit moves Y by the matching lifted column") {
    const Field f(1);
    const TransferPair tp = testing::desk_transfer();
    const auto params = testing::desk_params();
    const BitMatrix x(2, 6);
    for (std::size_t pos = 0; pos < 18; ++pos) {
        const std::vector<std::size_t> support{pos};
        const BitMatrix y = transmit(tp, f, x, noise_from_support(params, support));
        const std::size_t edge = pos / 6, col = pos % 6;
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 6; ++c)
                REQUIRE(y.get(r, c) == (c == col && tp.impulse(r, edge).value == 1));
    }
}

} // TEST_SUITE
