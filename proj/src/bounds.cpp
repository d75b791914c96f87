#include "binec/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "binec/errors.hpp"
#include "binec/metric.hpp"

namespace binec {

namespace {

double clamp_unit(double r) { return std::clamp(r, 0.0, 1.0); }

// 1 - H(x), or 0 once x >= 1/2.
double link_rate(double x) { return x >= 0.5 ? 0.0 : 1.0 - entropy(x); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : "NA"; }

} // namespace

double entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("entropy argument must lie in [0, 1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log1p(-p) / std::numbers::ln2;
}

bool hamming_regime(const Rational& p, std::size_t capacity, std::size_t edges, unsigned m) {
    return p < Rational(static_cast<std::int64_t>(capacity), static_cast<std::int64_t>(2 * edges * m));
}

double hamming_bound(const Rational& p, std::size_t edges, std::size_t capacity, std::optional<unsigned> m,
                     std::optional<std::size_t> n) {
    if (capacity == 0 || edges == 0) throw std::invalid_argument("C and E must be positive");
    if (m && !hamming_regime(p, capacity, edges, *m))
        throw RegimeError("Hamming-type bound needs p < C/(2Em) = " +
                          Rational(static_cast<std::int64_t>(capacity), static_cast<std::int64_t>(2 * edges * *m)).str());
    const double ratio = static_cast<double>(edges) / static_cast<double>(capacity);
    double r = 1.0 - entropy(p.to_double()) * ratio;
    if (n && m) {
        const double em = static_cast<double>(edges * *m);
        r += std::log2(em + 1.0) / static_cast<double>(capacity * *m * *n);
    }
    return clamp_unit(r);
}

double gv_rate(const Rational& p, std::size_t edges, std::size_t capacity, std::optional<std::size_t> n,
               std::optional<unsigned> m, bool noncoherent) {
    if (capacity == 0 || edges == 0) throw std::invalid_argument("C and E must be positive");
    const double pd = p.to_double();
    if (2 * pd > 1.0) throw std::domain_error("gv_rate needs 2p <= 1");
    const double ratio = static_cast<double>(edges) / static_cast<double>(capacity);
    double r = 1.0 - entropy(2 * pd) * ratio;
    if (n && m) {
        const double emn = static_cast<double>(edges * *m * *n);
        double penalty = std::log2(2 * pd * emn + 1.0);
        if (noncoherent) penalty += static_cast<double>(edges);
        r -= penalty / static_cast<double>(*n);
    }
    return clamp_unit(r);
}

BigInt hamming_codebook_size_bound(std::size_t capacity, std::size_t edges, unsigned m, std::size_t n,
                                   const Rational& p) {
    const BigInt space = BigInt(1) << (capacity * m * n);
    return space / sphere_count_lower(edges, m, n, p);
}

BenchmarkRates benchmark_rates(std::size_t capacity, double p) {
    if (capacity == 0) throw std::invalid_argument("C must be >= 1");
    if (p < 0) throw std::domain_error("p must be >= 0");
    const double c = static_cast<double>(capacity);
    BenchmarkRates b;
    b.link_by_link = c * link_rate(4 * c * p);
    const std::size_t k_max = (capacity + 1) / 2 - 1;
    for (std::size_t k = 1; k <= k_max; ++k) {
        const double r = static_cast<double>(capacity - 2 * k) * link_rate(4 * c * p / static_cast<double>(k));
        if (b.best_k == 0 || r > b.concatenated) {
            b.concatenated = r;
            b.best_k = k;
        }
    }
    b.end_to_end = 2 * p >= 0.5 ? 0.0 : std::max(0.0, c * (1.0 - 2.0 * entropy(2 * p)));
    return b;
}

bool regime_check(const Rational& p, std::size_t capacity, std::size_t edges, unsigned m) {
    const Rational second(1, std::int64_t{1} << (m + 1));
    return hamming_regime(p, capacity, edges, m) && p < second;
}

RateReport rate_report(const Rational& p, std::size_t capacity, std::size_t edges, unsigned m,
                       std::optional<std::size_t> n) {
    RateReport r;
    r.p = p;
    r.capacity = capacity;
    r.edges = edges;
    r.m = m;
    r.n = n;
    if (hamming_regime(p, capacity, edges, m)) {
        r.hamming_asym = hamming_bound(p, edges, capacity, m);
        if (n) r.hamming_finite = hamming_bound(p, edges, capacity, m, n);
    }
    if (2 * p.to_double() > 1.0) {
        r.benchmarks = benchmark_rates(capacity, p.to_double());
        return r;
    }
    r.gv_asym = gv_rate(p, edges, capacity);
    if (n) {
        r.gv_finite_coherent = gv_rate(p, edges, capacity, n, m, false);
        r.gv_finite_noncoherent = gv_rate(p, edges, capacity, n, m, true);
    }
    r.benchmarks = benchmark_rates(capacity, p.to_double());
    r.regime_ok = regime_check(p, capacity, edges, m);
    return r;
}

std::vector<RateReport> sweep(const SweepRanges& ranges) {
    std::vector<RateReport> rows;
    for (const auto& p : ranges.p)
        for (const auto c : ranges.capacity)
            for (const auto e : ranges.edges)
                for (const auto m : ranges.m) {
                    if (e < c) continue;
                    if (ranges.n.empty()) {
                        rows.push_back(rate_report(p, c, e, m));
                        continue;
                    }
                    for (const auto n : ranges.n) rows.push_back(rate_report(p, c, e, m, n));
                }
    return rows;
}

std::vector<Rational> linear_grid(const Rational& lo, const Rational& hi, std::size_t count) {
    std::vector<Rational> out;
    if (count == 0) return out;
    if (count == 1) return {lo};
    const Rational step = (hi - lo) / Rational(static_cast<std::int64_t>(count - 1), 1);
    for (std::size_t i = 0; i < count; ++i) out.push_back(lo + step * Rational(static_cast<std::int64_t>(i), 1));
    return out;
}

const char* const kRateCsvHeader =
    "p,C,E,m,n,hamming_asym,hamming_finite,gv_asym,gv_finite_coh,gv_finite_noncoh,R1,R2,k_star,R_ours,regime_ok";

void write_csv_row(std::ostream& out, const RateReport& r) {
    out << fmt(r.p.to_double()) << ',' << r.capacity << ',' << r.edges << ',' << r.m << ','
        << (r.n ? std::to_string(*r.n) : std::string("NA")) << ',' << fmt(r.hamming_asym) << ','
        << fmt(r.hamming_finite) << ',' << fmt(r.gv_asym) << ',' << fmt(r.gv_finite_coherent) << ','
        << fmt(r.gv_finite_noncoherent) << ',' << fmt(r.benchmarks.link_by_link) << ','
        << fmt(r.benchmarks.concatenated) << ',' << r.benchmarks.best_k << ',' << fmt(r.benchmarks.end_to_end) << ','
        << (r.regime_ok ? 1 : 0) << '\n';
}

void write_csv(std::ostream& out, const std::vector<RateReport>& rows) {
    out << kRateCsvHeader << '\n';
    for (const auto& r : rows) write_csv_row(out, r);
}

} // namespace binec
