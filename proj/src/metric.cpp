#include "binec/metric.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "binec/errors.hpp"

namespace binec {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
    const std::array<char, 4> b = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                                   static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
    out.write(b.data(), 4);
}

std::uint32_t get_u32(std::istream& in) {
    std::array<unsigned char, 4> b{};
    if (!in.read(reinterpret_cast<char*>(b.data()), 4)) throw std::invalid_argument("coset table blob truncated");
    return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::vector<std::uint8_t> bfs_weights(const BitMatrix& b) {
    if (b.rows() > CosetLeaderTable::kMaxRows)
        throw GuardError("coset table needs a <= 24 rows, got " + std::to_string(b.rows()));
    const auto cols = b.columns();
    std::vector<std::uint8_t> w(std::size_t{1} << b.rows(), CosetLeaderTable::kUnreachable);
    std::vector<std::uint32_t> frontier{0};
    w[0] = 0;
    for (std::uint8_t depth = 1; !frontier.empty(); ++depth) {
        std::vector<std::uint32_t> next;
        for (const auto v : frontier)
            for (const auto c : cols) {
                const std::uint32_t u = v ^ c;
                if (w[u] != CosetLeaderTable::kUnreachable) continue;
                w[u] = depth;
                next.push_back(u);
            }
        frontier = std::move(next);
    }
    return w;
}

} // namespace

CosetLeaderTable::CosetLeaderTable(BitMatrix b) : CosetLeaderTable(b, bfs_weights(b)) {}

CosetLeaderTable::CosetLeaderTable(BitMatrix b, std::vector<std::uint8_t> weights)
    : b_(std::move(b)), weights_(std::move(weights)) {
    for (const auto w : weights_)
        if (w != kUnreachable) ++reachable_;
}

void CosetLeaderTable::write(std::ostream& out) const {
    out.write("BNCT", 4);
    put_u32(out, 1);
    put_u32(out, static_cast<std::uint32_t>(rows()));
    put_u32(out, static_cast<std::uint32_t>(cols()));
    const std::size_t nbits = rows() * cols();
    for (std::size_t byte = 0; byte * 8 < nbits; ++byte) {
        unsigned v = 0;
        for (std::size_t i = 0; i < 8; ++i) {
            const std::size_t k = byte * 8 + i;
            if (k < nbits && b_.get(k / cols(), k % cols())) v |= 0x80U >> i;
        }
        out.put(static_cast<char>(v));
    }
    out.write(reinterpret_cast<const char*>(weights_.data()), static_cast<std::streamsize>(weights_.size()));
}

CosetLeaderTable CosetLeaderTable::read(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), 4) || std::string(magic.data(), 4) != "BNCT")
        throw std::invalid_argument("not a coset table blob");
    if (get_u32(in) != 1) throw std::invalid_argument("unsupported coset table version");
    const std::size_t a = get_u32(in);
    const std::size_t c = get_u32(in);
    if (a > kMaxRows) throw std::invalid_argument("coset table blob: a exceeds 24");
    BitMatrix b(a, c);
    const std::size_t nbits = a * c;
    for (std::size_t byte = 0; byte * 8 < nbits; ++byte) {
        const int v = in.get();
        if (v == EOF) throw std::invalid_argument("coset table blob truncated");
        for (std::size_t i = 0; i < 8; ++i) {
            const std::size_t k = byte * 8 + i;
            if (k < nbits) b.set(k / c, k % c, v & (0x80 >> i));
        }
    }
    std::vector<std::uint8_t> w(std::size_t{1} << a);
    if (!in.read(reinterpret_cast<char*>(w.data()), static_cast<std::streamsize>(w.size())))
        throw std::invalid_argument("coset table blob truncated");
    return CosetLeaderTable(std::move(b), std::move(w));
}

CosetLeaderTable build_coset_table(const BitMatrix& b) { return CosetLeaderTable(b); }

Distance delta(const CosetLeaderTable& table, const std::vector<bool>& v) {
    if (v.size() != table.rows())
        throw std::invalid_argument("syndrome length " + std::to_string(v.size()) + " != table rows " +
                                    std::to_string(table.rows()));
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) s |= std::uint32_t{1} << i;
    return table.delta(s);
}

Distance transform_distance(const CosetLeaderTable& table, std::span<const std::uint32_t> cols1,
                            std::span<const std::uint32_t> cols2) {
    if (cols1.size() != cols2.size()) throw std::invalid_argument("transform_distance: shape mismatch");
    Distance total = 0;
    for (std::size_t i = 0; i < cols1.size(); ++i) {
        const Distance d = table.delta(cols1[i] ^ cols2[i]);
        if (d == kInfiniteDistance) return kInfiniteDistance;
        total += d;
    }
    return total;
}

Distance transform_distance(const CosetLeaderTable& table, const BitMatrix& m1, const BitMatrix& m2) {
    if (m1.rows() != m2.rows() || m1.cols() != m2.cols() || m1.rows() != table.rows())
        throw std::invalid_argument("transform_distance: shape mismatch");
    return transform_distance(table, m1.columns(), m2.columns());
}

std::uint64_t BallVolumeProfile::reachable() const {
    std::uint64_t total = 0;
    for (const auto c : counts) total += c;
    return total;
}

BallVolumeProfile ball_profile(const CosetLeaderTable& table) {
    BallVolumeProfile p;
    for (const auto w : table.weights()) {
        if (w == CosetLeaderTable::kUnreachable) continue;
        if (w >= p.counts.size()) p.counts.resize(w + 1, 0);
        ++p.counts[w];
    }
    return p;
}

BigInt ball_volume_exact(const CosetLeaderTable& table, std::uint64_t radius, std::size_t n) {
    const auto profile = ball_profile(table);
    // ways[d] = number of column prefixes of total weight d, truncated at radius.
    std::vector<BigInt> ways(radius + 1, 0);
    ways[0] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<BigInt> next(radius + 1, 0);
        for (std::uint64_t d = 0; d <= radius; ++d) {
            if (ways[d] == 0) continue;
            for (std::uint64_t w = 0; w < profile.counts.size() && d + w <= radius; ++w)
                if (profile.counts[w] != 0) next[d + w] += ways[d] * profile.counts[w];
        }
        ways = std::move(next);
    }
    BigInt total = 0;
    for (const auto& w : ways) total += w;
    return total;
}

BigInt sphere_count_lower(std::size_t edges, unsigned m, std::size_t n, const Rational& p) {
    if (p < Rational(0, 1) || p >= Rational(1, 1)) throw std::domain_error("p must lie in [0, 1)");
    const std::uint64_t em = edges * m;
    const auto per_column = static_cast<std::uint64_t>(p.floor_mul(static_cast<std::int64_t>(em)));
    return boost::multiprecision::pow(binomial(em, per_column), static_cast<unsigned>(n));
}

BigInt sphere_count_upper(std::size_t edges, unsigned m, std::size_t n, const Rational& p) {
    if (p < Rational(0, 1) || p >= Rational(1, 1)) throw std::domain_error("p must lie in [0, 1)");
    const std::uint64_t emn = edges * m * n;
    const auto budget = static_cast<std::uint64_t>(p.floor_mul(static_cast<std::int64_t>(emn)));
    if (2 * budget > emn) throw std::domain_error("2*floor(pEmn) exceeds Emn; p too large for the ball bound");
    return BigInt(2 * budget + 1) * binomial(emn, 2 * budget);
}

std::uint32_t pack_columns(std::span<const std::uint32_t> cols, std::size_t a) {
    if (a * cols.size() > 32) throw std::invalid_argument("packed matrix exceeds 32 bits");
    std::uint32_t packed = 0;
    for (std::size_t i = 0; i < cols.size(); ++i) packed |= cols[i] << (i * a);
    return packed;
}

std::vector<std::uint32_t> unpack_columns(std::uint32_t packed, std::size_t a, std::size_t n) {
    const std::uint32_t mask = a >= 32 ? ~0U : ((std::uint32_t{1} << a) - 1);
    std::vector<std::uint32_t> cols(n);
    for (std::size_t i = 0; i < n; ++i) cols[i] = (packed >> (i * a)) & mask;
    return cols;
}

std::vector<std::uint32_t> ball_offsets(const CosetLeaderTable& table, std::uint64_t radius, std::size_t n) {
    const std::size_t a = table.rows();
    if (a * n > 32) throw GuardError("ball enumeration needs a*n <= 32");
    std::vector<std::vector<std::uint32_t>> by_weight;
    const auto w = table.weights();
    for (std::uint32_t s = 0; s < w.size(); ++s) {
        if (w[s] == CosetLeaderTable::kUnreachable || w[s] > radius) continue;
        if (w[s] >= by_weight.size()) by_weight.resize(w[s] + 1);
        by_weight[w[s]].push_back(s);
    }
    std::vector<std::uint32_t> out;
    // Depth-first over columns with the remaining weight budget.
    struct Frame {
        std::size_t col;
        std::uint64_t left;
        std::uint32_t packed;
    };
    std::vector<Frame> stack{{0, radius, 0}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.col == n) {
            out.push_back(f.packed);
            continue;
        }
        for (std::size_t d = by_weight.size(); d-- > 0;) {
            if (d > f.left) continue;
            for (auto it = by_weight[d].rbegin(); it != by_weight[d].rend(); ++it)
                stack.push_back({f.col + 1, f.left - d, f.packed | (*it << (f.col * a))});
        }
    }
    return out;
}

} // namespace binec
