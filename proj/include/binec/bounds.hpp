#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "binec/combinatorics.hpp"
#include "binec/rational.hpp"

namespace binec {

/// Binary entropy in bits, with 0 log 0 = 0. Throws for p outside [0, 1].
double entropy(double p);

/// p < C / (2Em): the condition under which the Hamming-type bound holds.
bool hamming_regime(const Rational& p, std::size_t capacity, std::size_t edges, unsigned m);

/**
 * Upper bound on the rate of any code: 1 - H(p) E/C, plus log2(Em+1)/(Cmn)
 * when n is given. Throws RegimeError if p >= C/(2Em) (checked when m is
 * given). Clamped to [0, 1].
 */
double hamming_bound(const Rational& p, std::size_t edges, std::size_t capacity, std::optional<unsigned> m = {},
                     std::optional<std::size_t> n = {});

/**
 * Rate guaranteed by the greedy constructions: 1 - H(2p) E/C. With n and m
 * the finite-length exponent is used: minus log2(2pEmn + 1)/n, and in
 * non-coherent mode minus (log2(2pEmn + 1) + E)/n. Clamped to [0, 1].
 */
double gv_rate(const Rational& p, std::size_t edges, std::size_t capacity, std::optional<std::size_t> n = {},
               std::optional<unsigned> m = {}, bool noncoherent = false);

/// Largest size any code correcting floor(pEmn) flips can have:
/// floor(2^(Cmn) / (Em choose floor(pEm))^n).
BigInt hamming_codebook_size_bound(std::size_t capacity, std::size_t edges, unsigned m, std::size_t n,
                                   const Rational& p);

/// Total rates on C disjoint two-hop paths.
struct BenchmarkRates {
    double link_by_link = 0;  // C (1 - H(4Cp))
    double concatenated = 0;  // max_k (C - 2k)(1 - H(4Cp/k))
    std::size_t best_k = 0;   // 0 when no k in [1, ceil(C/2) - 1]
    double end_to_end = 0;    // C (1 - 2H(2p))
};

BenchmarkRates benchmark_rates(std::size_t capacity, double p);

/// p < min(C/(2Em), 2^-(m+1)).
bool regime_check(const Rational& p, std::size_t capacity, std::size_t edges, unsigned m);

struct RateReport {
    Rational p;
    std::size_t capacity = 0;
    std::size_t edges = 0;
    unsigned m = 1;
    std::optional<std::size_t> n;
    std::optional<double> hamming_asym;   // absent outside the Hamming regime
    std::optional<double> hamming_finite; // needs n as well
    double gv_asym = 0;
    std::optional<double> gv_finite_coherent;
    std::optional<double> gv_finite_noncoherent;
    BenchmarkRates benchmarks;
    bool regime_ok = false;
};

RateReport rate_report(const Rational& p, std::size_t capacity, std::size_t edges, unsigned m,
                       std::optional<std::size_t> n = {});

struct SweepRanges {
    std::vector<Rational> p;
    std::vector<std::size_t> capacity;
    std::vector<std::size_t> edges;
    std::vector<unsigned> m;
    std::vector<std::size_t> n; // empty: asymptotic only
};

/// Cartesian product in the order p, C, E, m, n (n varies fastest); points
/// with E < C are skipped.
std::vector<RateReport> sweep(const SweepRanges& ranges);

/// n evenly spaced rationals from lo to hi inclusive.
std::vector<Rational> linear_grid(const Rational& lo, const Rational& hi, std::size_t count);

extern const char* const kRateCsvHeader;
void write_csv_row(std::ostream& out, const RateReport& r);
void write_csv(std::ostream& out, const std::vector<RateReport>& rows);

} // namespace binec
