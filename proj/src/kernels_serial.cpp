#include "binec/kernels.hpp"

#include "binec/combinatorics.hpp"

namespace binec::serial {

DecodeResult nearest(const DecodingTables& dec, std::span<const std::uint32_t> y) {
    DecodeResult best;
    bool tied = false;
    for (std::size_t msg = 0; msg < dec.num_messages; ++msg) {
        Distance d_msg = kInfiniteDistance;
        std::size_t member = 0;
        for (std::size_t f = 0; f < dec.members.size(); ++f) {
            const auto& mt = dec.members[f];
            const Distance d = transform_distance(mt.table, mt.images[msg], y);
            if (d < d_msg) {
                d_msg = d;
                member = f;
            }
        }
        if (d_msg < best.distance) {
            best = {msg, d_msg, true, member};
            tied = false;
        } else if (d_msg == best.distance && d_msg != kInfiniteDistance) {
            tied = true;
        }
    }
    best.unique = best.distance != kInfiniteDistance && !tied;
    return best;
}

Distance min_pairwise_distance(const DecodingTables& dec) {
    Distance best = kInfiniteDistance;
    for (const auto& mt : dec.members)
        for (std::size_t i = 0; i < dec.num_messages; ++i)
            for (std::size_t j = i + 1; j < dec.num_messages; ++j) {
                const Distance d = transform_distance(mt.table, mt.images[i], mt.images[j]);
                if (d < best) best = d;
            }
    return best;
}

FailureScan scan_failures(const ChannelTables& channel, const DecodingTables& dec, std::uint64_t budget,
                          std::span<const std::size_t> messages) {
    FailureScan scan;
    const std::size_t positions = channel.noise_columns.size() * channel.n;
    std::vector<std::uint32_t> y(channel.n);
    for (const auto msg : messages) {
        for (std::size_t w = 0; w <= budget && w <= positions; ++w) {
            std::vector<std::size_t> support(w);
            for (std::size_t i = 0; i < w; ++i) support[i] = i;
            do {
                y = channel.images[msg];
                for (const auto pos : support) y[pos % channel.n] ^= channel.noise_columns[pos / channel.n];
                const auto r = nearest(dec, y);
                ++scan.trials;
                if (r.message != msg) {
                    ++scan.failures;
                    if (!scan.first) scan.first = Witness{msg, support, r};
                }
            } while (colex_next(support, positions));
        }
    }
    return scan;
}

} // namespace binec::serial
