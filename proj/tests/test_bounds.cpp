#include <doctest.h>

#include <cmath>
#include <sstream>

#include "binec/bounds.hpp"
#include "binec/errors.hpp"
#include "hp_oracle.hpp"

using namespace binec;
namespace hp = binec::testing::hp;

TEST_SUITE("bounds") {

TEST_CASE("entropy against the high-precision reference") {
    CHECK(entropy(0.0) == 0.0);
    CHECK(entropy(1.0) == 0.0);
    CHECK(entropy(0.5) == 1.0);
    for (int i = 1; i < 1000; ++i) {
        const Rational p(i, 1000);
        REQUIRE(std::abs(entropy(p.to_double()) - hp::h2(hp::real(p)).convert_to<double>()) < 1e-14);
    }
    for (double p : {1e-9, 1e-12, 1e-15}) {
        const double ref = hp::h2(hp::Real(p)).convert_to<double>();
        CHECK(std::abs(entropy(p) - ref) <= 1e-15 * ref);
    }
    CHECK_THROWS(entropy(-0.1));
    CHECK_THROWS(entropy(1.5));
}

TEST_CASE("asymptotic bounds from their definitions") {
    const Rational p(1, 100);
    const hp::Real pr = hp::real(p);
    CHECK(hamming_bound(p, 6, 4) == doctest::Approx((1 - hp::h2(pr) * 6 / 4).convert_to<double>()).epsilon(1e-14));
    CHECK(gv_rate(p, 6, 4) == doctest::Approx((1 - hp::h2(2 * pr) * 6 / 4).convert_to<double>()).epsilon(1e-14));
    CHECK(hamming_bound(Rational(), 5, 5) == 1.0);
    CHECK(gv_rate(Rational(), 5, 5) == 1.0);
    CHECK(gv_rate(Rational(1, 4), 4, 1) == 0.0); // clamped
    CHECK_THROWS(gv_rate(Rational(3, 5), 4, 4));
}

TEST_CASE("finite-length terms") {
    // desk instance: 1 - H(1/9) * 3/2 - log2(2pEmn + 1) / 6 with 2pEmn = 2 is negative
    const double desk = (1 - hp::h2(hp::Real(1) / 9) * 3 / 2).convert_to<double>() - std::log2(3.0) / 6;
    CHECK(desk < 0);
    CHECK(gv_rate(Rational(1, 18), 3, 2, 6, 1, false) == 0.0);
    const Rational q(1, 1000);
    const hp::Real qr = hp::real(q);
    const double pen = std::log2(2.0 * 8 * 4 * 100 / 1000 + 1);
    CHECK(gv_rate(q, 8, 4, 100, 4, false) ==
          doctest::Approx((1 - hp::h2(2 * qr) * 2).convert_to<double>() - pen / 100).epsilon(1e-13));
    CHECK(gv_rate(q, 8, 4, 100, 4, true) ==
          doctest::Approx((1 - hp::h2(2 * qr) * 2).convert_to<double>() - (pen + 8) / 100).epsilon(1e-13));
    CHECK(hamming_bound(q, 8, 4, 4, 100) ==
          doctest::Approx((1 - hp::h2(qr) * 2).convert_to<double>() + std::log2(33.0) / 1600).epsilon(1e-13));
}

TEST_CASE("Hamming regime is strict") {
    // C/(2Em) = 4 / (2 * 8 * 4) = 1/16
    CHECK(hamming_regime(Rational(1, 17), 4, 8, 4));
    CHECK_FALSE(hamming_regime(Rational(1, 16), 4, 8, 4));
    CHECK_THROWS_AS(hamming_bound(Rational(1, 16), 8, 4, 4u), RegimeError);
    CHECK_NOTHROW(hamming_bound(Rational(1, 16), 8, 4));
}

TEST_CASE("regime checker is strict at both thresholds") {
    // min(C/(2Em), 2^-(m+1)) with the second term binding: C=8, E=8, m=3 -> min(1/6, 1/16)
    CHECK_FALSE(regime_check(Rational(1, 16), 8, 8, 3));
    CHECK(regime_check(Rational(62499999, 1000000000), 8, 8, 3));
    // first term binding: C=1, E=8, m=2 -> min(1/32, 1/8)
    CHECK_FALSE(regime_check(Rational(1, 32), 1, 8, 2));
    CHECK(regime_check(Rational(31249999, 1000000000), 1, 8, 2));
}

TEST_CASE("size bound") {
    CHECK(hamming_codebook_size_bound(2, 3, 1, 6, Rational(1, 18)) == 4096);
    CHECK(hamming_codebook_size_bound(2, 3, 2, 2, Rational(1, 6)) == 7); // 256 / 36
}

TEST_CASE("benchmark schemes against the high-precision reference") {
    for (unsigned c : {1u, 2u, 3u, 8u, 16u, 64u})
        for (double p : {1e-5, 1e-4, 3e-4, 1e-3, 1e-2, 0.1}) {
            const BenchmarkRates b = benchmark_rates(c, p);
            const hp::Real pr(p);
            CHECK(b.link_by_link == doctest::Approx(hp::r1(c, pr).convert_to<double>()).epsilon(1e-12));
            CHECK(b.concatenated == doctest::Approx(hp::r2(c, pr).convert_to<double>()).epsilon(1e-12));
            CHECK(b.end_to_end == doctest::Approx(hp::r_ours(c, pr).convert_to<double>()).epsilon(1e-12));
        }
    CHECK(benchmark_rates(2, 1e-4).best_k == 0);
    CHECK(benchmark_rates(2, 1e-4).concatenated == 0.0);
    const BenchmarkRates b64 = benchmark_rates(64, 1e-4);
    CHECK(b64.end_to_end > b64.concatenated);
    CHECK(b64.concatenated > b64.link_by_link);
    CHECK(b64.best_k == 2);
}

TEST_CASE("Hamming bound is non-increasing in p") {
    double prev = 2;
    for (int i = 0; i <= 250; ++i) {
        const double h = hamming_bound(Rational(i, 1000), 3, 2);
        REQUIRE(h <= prev);
        prev = h;
    }
}

TEST_CASE("report rows and CSV") {
    CHECK(rate_report(Rational(1, 4), 2, 3, 1, 6).hamming_finite);
    const RateReport outside = rate_report(Rational(1, 3), 2, 3, 1, 6);
    CHECK_FALSE(outside.hamming_asym);
    CHECK_FALSE(outside.regime_ok);
    std::ostringstream out;
    write_csv_row(out, rate_report(Rational(1, 2), 2, 3, 1));
    CHECK(out.str().find("NA") != std::string::npos);
    std::ostringstream all;
    write_csv(all, {rate_report(Rational(1, 100), 2, 3, 1, 6)});
    CHECK(all.str().rfind(std::string(kRateCsvHeader) + "\n", 0) == 0);
}

TEST_CASE("sweep order and grid") {
    const auto grid = linear_grid(Rational(1, 100), Rational(3, 100), 3);
    REQUIRE(grid.size() == 3);
    CHECK(grid[1] == Rational(1, 50));
    SweepRanges s;
    s.p = grid;
    s.capacity = {2, 4};
    s.edges = {3};
    s.m = {1, 2};
    s.n = {5, 10};
    const auto rows = sweep(s);
    CHECK(rows.size() == 3 * 1 * 1 * 2 * 2); // C = 4 > E = 3 skipped
    CHECK(*rows[1].n == 10);
    CHECK(rows[2].m == 2);
    CHECK(rows[4].p == grid[1]);
}

} // TEST_SUITE
