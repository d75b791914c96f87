#include "binec/channel.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace binec {

namespace {

std::vector<std::size_t> sample_positions(std::vector<std::size_t> pool, std::uint64_t count, std::uint64_t seed) {
    // Partial Fisher-Yates.
    Rng rng(seed);
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto j = i + uniform_below(rng, pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

} // namespace

void ChannelParams::validate() const {
    if (n < 1) throw std::invalid_argument("block length n must be >= 1");
    if (capacity < 1 || capacity > edges) throw std::invalid_argument("need 1 <= C <= E");
    if (m < 1 || m > Field::kMaxBits) throw std::invalid_argument("m must be in [1, 16]");
    if (p < Rational(0, 1) || p >= Rational(1, 1)) throw std::invalid_argument("p must lie in [0, 1)");
}

std::uint64_t ChannelParams::budget() const {
    return static_cast<std::uint64_t>(p.floor_mul(static_cast<std::int64_t>(edges * m * n)));
}

NoiseMatrix noise_uniform(const ChannelParams& params, std::uint64_t seed) {
    return noise_uniform(params, seed, params.budget());
}

NoiseMatrix noise_uniform(const ChannelParams& params, std::uint64_t seed, std::uint64_t weight) {
    params.validate();
    const std::size_t total = params.noise_rows() * params.n;
    if (weight > total) throw std::invalid_argument("noise weight exceeds Emn");
    std::vector<std::size_t> pool(total);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    const auto support = sample_positions(std::move(pool), weight, seed);
    return {noise_from_support(params, support), weight};
}

NoiseMatrix noise_concentrated(const ChannelParams& params, std::span<const std::size_t> target_edges,
                               std::uint64_t seed) {
    return noise_concentrated(params, target_edges, seed, params.budget());
}

NoiseMatrix noise_concentrated(const ChannelParams& params, std::span<const std::size_t> target_edges,
                               std::uint64_t seed, std::uint64_t budget) {
    params.validate();
    std::vector<std::size_t> targets(target_edges.begin(), target_edges.end());
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    std::vector<std::size_t> pool;
    for (const auto e : targets) {
        if (e >= params.edges) throw std::invalid_argument("target edge " + std::to_string(e) + " out of range");
        for (std::size_t r = e * params.m; r < (e + 1) * params.m; ++r)
            for (std::size_t k = 0; k < params.n; ++k) pool.push_back(r * params.n + k);
    }
    if (budget > pool.size())
        throw std::invalid_argument("budget " + std::to_string(budget) + " exceeds the " + std::to_string(pool.size()) +
                                    " bits of the targeted packets");
    const auto support = sample_positions(std::move(pool), budget, seed);
    return {noise_from_support(params, support), budget};
}

BitMatrix noise_from_support(const ChannelParams& params, std::span<const std::size_t> support) {
    BitMatrix z(params.noise_rows(), params.n);
    for (const auto pos : support) {
        if (pos >= params.noise_rows() * params.n) throw std::out_of_range("noise position out of range");
        z.set(pos / params.n, pos % params.n, true);
    }
    return z;
}

BitMatrix transmit(const TransferPair& tp, const Field& field, const BitMatrix& x, const BitMatrix& z) {
    const std::size_t m = field.m();
    if (x.rows() != tp.capacity() * m || z.rows() != tp.num_edges() * m || x.cols() != z.cols())
        throw std::invalid_argument("transmit: shape mismatch");
    return (lift_matrix(field, tp.transfer) * x) ^ (lift_matrix(field, tp.impulse) * z);
}

BitMatrix transmit_field(const TransferPair& tp, const Field& field, const BitMatrix& x, const BitMatrix& z) {
    const std::size_t m = field.m();
    if (x.rows() != tp.capacity() * m || z.rows() != tp.num_edges() * m || x.cols() != z.cols())
        throw std::invalid_argument("transmit: shape mismatch");
    const auto y = add(multiply(field, tp.transfer, bits_to_symbols(field, x)),
                       multiply(field, tp.impulse, bits_to_symbols(field, z)));
    return symbols_to_bits(field, y);
}

} // namespace binec
