#include "binec/combinatorics.hpp"

#include <stdexcept>

namespace binec {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(r);
}

std::uint64_t subsets_up_to(std::uint64_t n, std::uint64_t k) {
    std::uint64_t total = 0;
    for (std::uint64_t w = 0; w <= k && w <= n; ++w) {
        const std::uint64_t b = binomial_saturating(n, w);
        if (b > UINT64_MAX - total) return UINT64_MAX;
        total += b;
    }
    return total;
}

std::vector<std::size_t> colex_unrank(std::uint64_t rank, std::size_t k, std::size_t n) {
    std::vector<std::size_t> out(k);
    std::size_t hi = n;
    for (std::size_t i = k; i > 0; --i) {
        // Largest c < hi with binomial(c, i) <= rank.
        std::size_t c = i - 1;
        while (c + 1 < hi && binomial_saturating(c + 1, i) <= rank) ++c;
        if (binomial_saturating(c, i) > rank) throw std::out_of_range("colex rank out of range");
        out[i - 1] = c;
        rank -= binomial_saturating(c, i);
        hi = c;
    }
    if (rank != 0) throw std::out_of_range("colex rank out of range");
    return out;
}

bool colex_next(std::vector<std::size_t>& subset, std::size_t n) {
    const std::size_t k = subset.size();
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t limit = i + 1 < k ? subset[i + 1] : n;
        if (subset[i] + 1 < limit) {
            ++subset[i];
            for (std::size_t j = 0; j < i; ++j) subset[j] = j;
            return true;
        }
    }
    return false;
}

} // namespace binec
