#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace binec {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(std::uint64_t n, std::uint64_t k);

/// n choose k, saturating at UINT64_MAX.
std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k);

/// Number of subsets of {0..n-1} of size <= k, saturating.
std::uint64_t subsets_up_to(std::uint64_t n, std::uint64_t k);

/// The k-subset of rank `rank` in colexicographic order (largest element
/// compared first), ascending. rank must be < binomial(n, k).
std::vector<std::size_t> colex_unrank(std::uint64_t rank, std::size_t k, std::size_t n);

/// Advances an ascending k-subset of {0..n-1} to its colex successor;
/// returns false after the last one.
bool colex_next(std::vector<std::size_t>& subset, std::size_t n);

} // namespace binec
