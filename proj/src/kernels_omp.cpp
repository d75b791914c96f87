#include "binec/kernels.hpp"

#include <omp.h>

#include "binec/combinatorics.hpp"

namespace binec::parallel {

namespace {

constexpr std::uint64_t kChunk = 2048;

} // namespace

DecodeResult nearest(const DecodingTables& dec, std::span<const std::uint32_t> y) {
    const auto count = static_cast<std::int64_t>(dec.num_messages);
    std::vector<Distance> dist(dec.num_messages, kInfiniteDistance);
    std::vector<std::size_t> member(dec.num_messages, 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
        const auto msg = static_cast<std::size_t>(i);
        for (std::size_t f = 0; f < dec.members.size(); ++f) {
            const auto& mt = dec.members[f];
            const Distance d = transform_distance(mt.table, mt.images[msg], y);
            if (d < dist[msg]) {
                dist[msg] = d;
                member[msg] = f;
            }
        }
    }
    DecodeResult best;
    bool tied = false;
    for (std::size_t msg = 0; msg < dec.num_messages; ++msg) {
        if (dist[msg] < best.distance) {
            best = {msg, dist[msg], true, member[msg]};
            tied = false;
        } else if (dist[msg] == best.distance && dist[msg] != kInfiniteDistance) {
            tied = true;
        }
    }
    best.unique = best.distance != kInfiniteDistance && !tied;
    return best;
}

Distance min_pairwise_distance(const DecodingTables& dec) {
    Distance best = kInfiniteDistance;
    const auto count = static_cast<std::int64_t>(dec.num_messages);
    for (const auto& mt : dec.members) {
#pragma omp parallel for schedule(dynamic, 8) reduction(min : best)
        for (std::int64_t i = 0; i < count; ++i)
            for (auto j = static_cast<std::size_t>(i) + 1; j < dec.num_messages; ++j) {
                const Distance d = transform_distance(mt.table, mt.images[static_cast<std::size_t>(i)], mt.images[j]);
                if (d < best) best = d;
            }
    }
    return best;
}

FailureScan scan_failures(const ChannelTables& channel, const DecodingTables& dec, std::uint64_t budget,
                          std::span<const std::size_t> messages) {
    FailureScan scan;
    const std::size_t positions = channel.noise_columns.size() * channel.n;
    for (const auto msg : messages) {
        for (std::size_t w = 0; w <= budget && w <= positions; ++w) {
            const std::uint64_t total = binomial_saturating(positions, w);
            const auto chunks = static_cast<std::int64_t>((total + kChunk - 1) / kChunk);
            std::uint64_t failures = 0;
            std::uint64_t first_rank = UINT64_MAX;
            Witness first;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : failures)
            for (std::int64_t c = 0; c < chunks; ++c) {
                const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
                const std::uint64_t end = std::min(total, begin + kChunk);
                auto support = colex_unrank(begin, w, positions);
                std::vector<std::uint32_t> y(channel.n);
                for (std::uint64_t rank = begin; rank < end; ++rank) {
                    y = channel.images[msg];
                    for (const auto pos : support) y[pos % channel.n] ^= channel.noise_columns[pos / channel.n];
                    const auto r = serial::nearest(dec, y);
                    if (r.message != msg) {
                        ++failures;
#pragma omp critical(binec_first_witness)
                        if (rank < first_rank) {
                            first_rank = rank;
                            first = Witness{msg, support, r};
                        }
                    }
                    colex_next(support, positions);
                }
            }
            scan.trials += total;
            scan.failures += failures;
            if (!scan.first && first_rank != UINT64_MAX) scan.first = std::move(first);
        }
    }
    return scan;
}

} // namespace binec::parallel
