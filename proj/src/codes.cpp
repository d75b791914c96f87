#include "binec/codes.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "binec/combinatorics.hpp"
#include "binec/errors.hpp"

namespace binec {

namespace {

// Bitset of surviving Y-space indices with a Fenwick tree over per-word
// popcounts, so the k-th survivor is found in O(log) time.
class SurvivorSet {
public:
    explicit SurvivorSet(std::size_t bits) : words_((std::size_t{1} << bits) / 64 + 1, 0), tree_(words_.size() + 1, 0) {
        const std::size_t total = std::size_t{1} << bits;
        for (std::size_t i = 0; i < total; ++i) words_[i >> 6] |= std::uint64_t{1} << (i & 63);
        for (std::size_t w = 0; w < words_.size(); ++w) {
            tree_[w + 1] += static_cast<std::uint32_t>(std::popcount(words_[w]));
            const std::size_t parent = (w + 1) + ((w + 1) & (~(w + 1) + 1));
            if (parent < tree_.size()) tree_[parent] += tree_[w + 1];
        }
        count_ = total;
    }

    std::size_t count() const { return count_; }

    void erase(std::uint32_t i) {
        std::uint64_t& w = words_[i >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (i & 63);
        if (!(w & bit)) return;
        w &= ~bit;
        --count_;
        for (std::size_t k = (i >> 6) + 1; k < tree_.size(); k += k & (~k + 1)) --tree_[k];
    }

    /// Index of the k-th surviving element (0-based, ascending order).
    std::uint32_t select(std::size_t k) const {
        std::size_t pos = 0;
        std::size_t step = std::bit_floor(tree_.size() - 1);
        for (; step != 0; step >>= 1) {
            if (pos + step < tree_.size() && tree_[pos + step] <= k) {
                pos += step;
                k -= tree_[pos];
            }
        }
        std::uint64_t w = words_[pos];
        for (; k > 0; --k) w &= w - 1;
        return static_cast<std::uint32_t>(pos * 64 + static_cast<std::size_t>(std::countr_zero(w)));
    }

private:
    std::vector<std::uint64_t> words_;
    std::vector<std::uint32_t> tree_;
    std::size_t count_ = 0;
};

// Binary a x a matrix applied column by column to a packed a x n matrix.
class PackedMap {
public:
    PackedMap(const BitMatrix& map, std::size_t n) : a_(map.rows()), n_(n), cols_(map.columns()) {
        if (a_ <= 16) {
            lut_.resize(std::size_t{1} << a_);
            for (std::uint32_t s = 0; s < lut_.size(); ++s) lut_[s] = apply_column(s);
        }
    }

    std::uint32_t operator()(std::uint32_t packed) const {
        const std::uint32_t mask = (std::uint32_t{1} << a_) - 1;
        std::uint32_t out = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            const std::uint32_t col = (packed >> (i * a_)) & mask;
            out |= (lut_.empty() ? apply_column(col) : lut_[col]) << (i * a_);
        }
        return out;
    }

private:
    std::uint32_t apply_column(std::uint32_t s) const {
        std::uint32_t out = 0;
        for (std::size_t j = 0; s != 0; ++j, s >>= 1)
            if (s & 1U) out ^= cols_[j];
        return out;
    }

    std::size_t a_;
    std::size_t n_;
    std::vector<std::uint32_t> cols_;
    std::vector<std::uint32_t> lut_;
};

struct LiftedMember {
    BitMatrix transfer;
    BitMatrix transfer_inverse;
    CosetLeaderTable table;
};

LiftedMember lift_member(const TransferPair& tp, const Field& field, const ChannelParams& params) {
    if (tp.capacity() != params.capacity || tp.num_edges() != params.edges)
        throw std::invalid_argument("transfer pair shape does not match C x E = " + std::to_string(params.capacity) +
                                    " x " + std::to_string(params.edges));
    if (!check_every_square_submatrix_invertible(field, tp.impulse))
        throw std::invalid_argument("impulse-response matrix is not MDS");
    auto t = lift_matrix(field, tp.transfer);
    auto inv = t.inverse();
    if (!inv) throw std::invalid_argument("transfer matrix T is singular");
    return {std::move(t), std::move(*inv), CosetLeaderTable(lift_matrix(field, tp.impulse))};
}

void check_construction_guards(const Field& field, const ChannelParams& params) {
    params.validate();
    if (field.m() != params.m) throw std::invalid_argument("field and channel parameters disagree on m");
    const std::size_t bits = params.packet_rows() * params.n;
    if (bits > kMaxCodewordBits)
        throw GuardError("Cmn = " + std::to_string(bits) + " exceeds the explicit survivor-set limit of " +
                         std::to_string(kMaxCodewordBits) + " bits; reduce C, m or n");
    if (params.packet_rows() > CosetLeaderTable::kMaxRows) throw GuardError("Cm exceeds the coset table limit of 24");
}

BitMatrix codeword_from_packed(const BitMatrix& t_inverse, std::uint32_t packed, std::size_t a, std::size_t n) {
    return t_inverse * BitMatrix::from_columns(a, unpack_columns(packed, a, n));
}

std::string hex_digits(std::uint32_t v, std::size_t width) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s(width, '0');
    for (std::size_t i = width; i-- > 0; v >>= 4) s[i] = kDigits[v & 15];
    return s;
}

std::string next_content_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') return line;
    throw std::invalid_argument("unexpected end of file");
}

std::string expect_key(std::istream& in, const std::string& key) {
    const auto line = next_content_line(in);
    if (line.rfind(key + " ", 0) != 0) throw std::invalid_argument("expected '" + key + " ...', got '" + line + "'");
    return line.substr(key.size() + 1);
}

void write_family_block(std::ostream& out, const ChannelParams& params, std::span<const TransferPair> family) {
    const std::size_t width = (params.m + 3) / 4;
    out << "family " << family.size() << '\n';
    for (const auto& tp : family) {
        out << "sources";
        for (const auto s : tp.source_edges) out << ' ' << s;
        out << '\n';
        for (std::size_t i = 0; i < tp.impulse.rows(); ++i)
            for (std::size_t j = 0; j < tp.impulse.cols(); ++j) out << hex_digits(tp.impulse(i, j).value, width);
        out << '\n';
    }
}

std::vector<TransferPair> read_family_block(std::istream& in, const ChannelParams& params) {
    const std::size_t count = std::stoull(expect_key(in, "family"));
    const std::size_t width = (params.m + 3) / 4;
    std::vector<TransferPair> family;
    for (std::size_t f = 0; f < count; ++f) {
        std::istringstream src(expect_key(in, "sources"));
        std::vector<std::size_t> sources;
        for (std::size_t s; src >> s;) sources.push_back(s);
        const auto hex = next_content_line(in);
        if (hex.size() != params.capacity * params.edges * width)
            throw std::invalid_argument("family member has wrong length");
        FieldMatrix impulse(params.capacity, params.edges);
        for (std::size_t k = 0; k < params.capacity * params.edges; ++k) {
            const auto v = std::stoul(hex.substr(k * width, width), nullptr, 16);
            if (v >= (1UL << params.m)) throw std::invalid_argument("family entry outside the field");
            impulse(k / params.edges, k % params.edges) = FieldElem{static_cast<std::uint32_t>(v)};
        }
        family.push_back(make_transfer_pair(std::move(impulse), std::move(sources)));
    }
    return family;
}

std::string format_params(const ChannelParams& p) {
    std::ostringstream os;
    os << "C=" << p.capacity << " E=" << p.edges << " m=" << p.m << " n=" << p.n << " p=" << p.p.str();
    return os.str();
}

ChannelParams parse_params(const std::string& text) {
    ChannelParams p;
    std::istringstream is(text);
    for (std::string kv; is >> kv;) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad params entry '" + kv + "'");
        const auto key = kv.substr(0, eq);
        const auto val = kv.substr(eq + 1);
        if (key == "C") p.capacity = std::stoull(val);
        else if (key == "E") p.edges = std::stoull(val);
        else if (key == "m") p.m = static_cast<unsigned>(std::stoul(val));
        else if (key == "n") p.n = std::stoull(val);
        else if (key == "p") p.p = Rational::parse(val);
        else throw std::invalid_argument("unknown params key '" + key + "'");
    }
    p.validate();
    return p;
}

} // namespace

std::string to_string(CodingMode mode) { return mode == CodingMode::coherent ? "coherent" : "noncoherent"; }

CodingMode parse_coding_mode(const std::string& text) {
    if (text == "coherent") return CodingMode::coherent;
    if (text == "noncoherent") return CodingMode::noncoherent;
    throw std::invalid_argument("mode must be 'coherent' or 'noncoherent', got '" + text + "'");
}

double Codebook::rate() const {
    if (codewords.empty()) return 0.0;
    return std::log2(static_cast<double>(codewords.size())) /
           static_cast<double>(params.packet_rows() * params.n);
}

Codebook gv_construct_coherent(const TransferPair& tp, const Field& field, const ChannelParams& params,
                               std::uint64_t seed) {
    check_construction_guards(field, params);
    const auto member = lift_member(tp, field, params);
    const std::size_t a = params.packet_rows();
    const std::size_t bits = a * params.n;
    Codebook cb{params, CodingMode::coherent, 2 * params.budget(), seed, {}, {tp}};
    const auto offsets = ball_offsets(member.table, cb.radius, params.n);

    SurvivorSet survivors(bits);
    Rng rng(seed);
    while (survivors.count() > 0) {
        const std::uint32_t y = survivors.select(uniform_below(rng, survivors.count()));
        cb.codewords.push_back(codeword_from_packed(member.transfer_inverse, y, a, params.n));
        for (const auto d : offsets) survivors.erase(y ^ d);
    }
    return cb;
}

Codebook gv_construct_noncoherent(std::vector<TransferPair> family, const Field& field, const ChannelParams& params,
                                  std::uint64_t seed) {
    check_construction_guards(field, params);
    if (family.empty()) throw std::invalid_argument("non-coherent construction needs a nonempty family");
    const std::size_t a = params.packet_rows();
    const std::size_t bits = a * params.n;
    if (family.size() > (kMaxFamilyWork >> bits))
        throw GuardError("|family| * 2^(Cmn) exceeds 2^32; shrink the family or Cmn");

    std::vector<LiftedMember> members;
    std::vector<std::vector<std::uint32_t>> radius_b;
    std::vector<PackedMap> to_reference; // lift(T_0) lift(T_F)^-1
    std::vector<PackedMap> image;        // lift(T_F)
    const std::uint64_t budget = params.budget();
    for (const auto& tp : family) {
        members.push_back(lift_member(tp, field, params));
        radius_b.push_back(ball_offsets(members.back().table, budget, params.n));
    }
    for (const auto& mb : members) {
        to_reference.emplace_back(members.front().transfer * mb.transfer_inverse, params.n);
        image.emplace_back(mb.transfer, params.n);
    }

    Codebook cb{params, CodingMode::noncoherent, 2 * budget, seed, {}, std::move(family)};
    const std::size_t space = std::size_t{1} << bits;
    SurvivorSet survivors(bits);
    std::vector<bool> in_union(space, false);
    std::vector<bool> in_dilation(space, false);
    std::vector<std::uint32_t> union_list;
    std::vector<std::uint32_t> dilation;
    const PackedMap from_reference(members.front().transfer_inverse, params.n);
    Rng rng(seed);
    while (survivors.count() > 0) {
        const std::uint32_t y = survivors.select(uniform_below(rng, survivors.count()));
        const std::uint32_t x = from_reference(y);
        cb.codewords.push_back(codeword_from_packed(members.front().transfer_inverse, y, a, params.n));

        // Outputs within radius b of the new codeword under any member.
        for (std::size_t g = 0; g < members.size(); ++g) {
            const std::uint32_t centre = image[g](x);
            for (const auto d : radius_b[g])
                if (!in_union[centre ^ d]) {
                    in_union[centre ^ d] = true;
                    union_list.push_back(centre ^ d);
                }
        }
        // Codewords whose radius-b ball under member F reaches that set.
        for (std::size_t f = 0; f < members.size(); ++f) {
            for (const auto u : union_list)
                for (const auto d : radius_b[f])
                    if (!in_dilation[u ^ d]) {
                        in_dilation[u ^ d] = true;
                        dilation.push_back(u ^ d);
                    }
            for (const auto v : dilation) {
                survivors.erase(to_reference[f](v));
                in_dilation[v] = false;
            }
            dilation.clear();
        }
        for (const auto u : union_list) in_union[u] = false;
        union_list.clear();
    }
    return cb;
}

std::vector<TransferPair> enumerate_mds_family(const Field& field, std::size_t capacity, std::size_t edges,
                                               const std::vector<std::size_t>& source_edges) {
    const std::size_t entries = capacity * edges;
    if (entries * field.m() > 16)
        throw GuardError("q^(CE) = 2^" + std::to_string(entries * field.m()) +
                         " exceeds 2^16; supply a family file instead");
    const std::uint64_t total = std::uint64_t{1} << (entries * field.m());
    const std::uint32_t mask = field.order() - 1;
    std::vector<TransferPair> family;
    for (std::uint64_t code = 0; code < total; ++code) {
        FieldMatrix impulse(capacity, edges);
        // Entry (0, 0) is the most significant digit.
        for (std::size_t k = 0; k < entries; ++k)
            impulse(k / edges, k % edges) = FieldElem{static_cast<std::uint32_t>(code >> ((entries - 1 - k) * field.m())) & mask};
        if (check_every_square_submatrix_invertible(field, impulse))
            family.push_back(make_transfer_pair(std::move(impulse), source_edges));
    }
    return family;
}

const BitMatrix& encode(const Codebook& cb, std::size_t message) {
    if (message >= cb.codewords.size())
        throw std::out_of_range("message " + std::to_string(message) + " out of range for codebook of size " +
                                std::to_string(cb.codewords.size()));
    return cb.codewords[message];
}

Decoder::Decoder(const Codebook& cb, std::span<const TransferPair> family, const Field& field) {
    const std::size_t a = cb.params.packet_rows();
    tables_.rows = a;
    tables_.n = cb.params.n;
    tables_.num_messages = cb.codewords.size();
    for (const auto& tp : family) {
        if (tp.capacity() != cb.params.capacity || tp.num_edges() != cb.params.edges)
            throw std::invalid_argument("family member shape does not match the codebook");
        MemberTables mt{CosetLeaderTable(lift_matrix(field, tp.impulse)), {}};
        const auto t = lift_matrix(field, tp.transfer);
        mt.images.reserve(cb.codewords.size());
        for (const auto& x : cb.codewords) mt.images.push_back((t * x).columns());
        tables_.members.push_back(std::move(mt));
    }
}

DecodeResult Decoder::decode(const BitMatrix& y) const {
    if (y.rows() != tables_.rows || y.cols() != tables_.n)
        throw std::invalid_argument("received matrix has the wrong shape");
    return decode(y.columns());
}

ChannelTables make_channel_tables(const Codebook& cb, const TransferPair& tp, const Field& field) {
    ChannelTables ch;
    ch.rows = cb.params.packet_rows();
    ch.n = cb.params.n;
    const auto t = lift_matrix(field, tp.transfer);
    for (const auto& x : cb.codewords) ch.images.push_back((t * x).columns());
    ch.noise_columns = lift_matrix(field, tp.impulse).columns();
    return ch;
}

DecodeResult decode_coherent(const Codebook& cb, const TransferPair& tp, const Field& field, const BitMatrix& y) {
    return Decoder(cb, std::span<const TransferPair>(&tp, 1), field).decode(y);
}

DecodeResult decode_noncoherent(const Codebook& cb, const Field& field, const BitMatrix& y) {
    if (cb.family.empty()) throw std::invalid_argument("codebook carries no family");
    return Decoder(cb, cb.family, field).decode(y);
}

Distance min_distance(const Codebook& cb, std::span<const TransferPair> family, const Field& field) {
    return parallel::min_pairwise_distance(Decoder(cb, family, field).tables());
}

Decoder make_decoder(const Codebook& cb, const TransferPair& tp, const Field& field) {
    if (cb.mode == CodingMode::coherent) return Decoder(cb, std::span<const TransferPair>(&tp, 1), field);
    return Decoder(cb, cb.family, field);
}

std::optional<NoiseMatrix> noise_worst_exhaustive(const Codebook& cb, const TransferPair& tp, const Field& field,
                                                  const BitMatrix& x, std::uint64_t budget) {
    std::size_t message = cb.codewords.size();
    for (std::size_t i = 0; i < cb.codewords.size(); ++i)
        if (cb.codewords[i] == x) {
            message = i;
            break;
        }
    if (message == cb.codewords.size()) throw std::invalid_argument("x is not a codeword of this codebook");
    const std::size_t positions = cb.params.noise_rows() * cb.params.n;
    if (binomial_saturating(positions, std::min<std::uint64_t>(budget, positions)) > kMaxAdversaryCandidates)
        throw GuardError("exhaustive adversary would enumerate more than 10^7 patterns of one weight");
    const auto decoder = make_decoder(cb, tp, field);
    const auto channel = make_channel_tables(cb, tp, field);
    const std::size_t msgs[] = {message};
    const auto scan = parallel::scan_failures(channel, decoder.tables(), budget, msgs);
    if (!scan.first) return std::nullopt;
    return NoiseMatrix{noise_from_support(cb.params, scan.first->support), budget};
}

void write_family(std::ostream& out, const ChannelParams& params, std::span<const TransferPair> family) {
    out << "binec-family v1\nparams " << format_params(params) << '\n';
    write_family_block(out, params, family);
}

std::vector<TransferPair> read_family(std::istream& in, const ChannelParams& params) {
    if (next_content_line(in) != "binec-family v1") throw std::invalid_argument("not a binec-family v1 file");
    const auto fp = parse_params(expect_key(in, "params"));
    if (fp.capacity != params.capacity || fp.edges != params.edges || fp.m != params.m)
        throw std::invalid_argument("family file C/E/m do not match the experiment");
    return read_family_block(in, params);
}

void write_codebook(std::ostream& out, const Codebook& cb) {
    out << "binec-codebook v1\n";
    out << "params " << format_params(cb.params) << '\n';
    out << "mode " << to_string(cb.mode) << '\n';
    out << "radius " << cb.radius << '\n';
    out << "seed " << cb.seed << '\n';
    out << "codewords " << cb.codewords.size() << '\n';
    for (const auto& x : cb.codewords) out << x.to_hex() << '\n';
    write_family_block(out, cb.params, cb.family);
}

Codebook read_codebook(std::istream& in) {
    if (next_content_line(in) != "binec-codebook v1") throw std::invalid_argument("not a binec-codebook v1 file");
    Codebook cb;
    cb.params = parse_params(expect_key(in, "params"));
    cb.mode = parse_coding_mode(expect_key(in, "mode"));
    cb.radius = std::stoull(expect_key(in, "radius"));
    cb.seed = std::stoull(expect_key(in, "seed"));
    const std::size_t count = std::stoull(expect_key(in, "codewords"));
    for (std::size_t i = 0; i < count; ++i)
        cb.codewords.push_back(BitMatrix::from_hex(cb.params.packet_rows(), cb.params.n, next_content_line(in)));
    cb.family = read_family_block(in, cb.params);
    return cb;
}

} // namespace binec
