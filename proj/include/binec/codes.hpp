#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "binec/channel.hpp"
#include "binec/kernels.hpp"
#include "binec/network.hpp"

namespace binec {

enum class CodingMode { coherent, noncoherent };

std::string to_string(CodingMode mode);
CodingMode parse_coding_mode(const std::string& text);

/// Explicit survivor sets are 2^(Cmn) flags.
inline constexpr std::size_t kMaxCodewordBits = 28;
/// Cap on |family| * 2^(Cmn) for the non-coherent construction.
inline constexpr std::uint64_t kMaxFamilyWork = std::uint64_t{1} << 32;
/// Largest q^(CE) for which the full MDS family is enumerated.
inline constexpr std::uint64_t kMaxFamilyEnumeration = std::uint64_t{1} << 16;

struct Codebook {
    ChannelParams params;
    CodingMode mode = CodingMode::coherent;
    std::uint64_t radius = 0; // 2 * floor(pEmn)
    std::uint64_t seed = 0;
    std::vector<BitMatrix> codewords; // Cm x n each; message M is codewords[M]
    std::vector<TransferPair> family; // singleton in coherent mode

    std::size_t size() const { return codewords.size(); }
    /// log2(size) / (Cmn).
    double rate() const;
};

/**
 * Greedy construction with a known channel. Survivors live in Y-space: each
 * round picks a uniformly random surviving Y', takes X' = lift(T)^-1 Y' as
 * the next codeword and removes the radius-2b transform-metric ball around
 * Y' under lift(T-hat). Requires Cmn <= 28 and an MDS impulse matrix.
 */
Codebook gv_construct_coherent(const TransferPair& tp, const Field& field, const ChannelParams& params,
                               std::uint64_t seed);

/**
 * Greedy construction against a family of candidate channels. Survivors are
 * indexed in the Y-space of the first member. After picking X', every X''
 * whose radius-b ball under some member F meets the radius-b ball of X'
 * under some member G is removed, so minimum-distance decoding over
 * (message, member) pairs succeeds for any member and any Z of weight <= b.
 * With a single member this removes exactly the radius-2b ball and
 * reproduces gv_construct_coherent bit for bit.
 */
Codebook gv_construct_noncoherent(std::vector<TransferPair> family, const Field& field, const ChannelParams& params,
                                  std::uint64_t seed);

/// All MDS C x E matrices over the field with the given source columns, in
/// lexicographic order of their entries. Requires q^(CE) <= 2^16.
std::vector<TransferPair> enumerate_mds_family(const Field& field, std::size_t capacity, std::size_t edges,
                                               const std::vector<std::size_t>& source_edges);

const BitMatrix& encode(const Codebook& cb, std::size_t message);

/// Precomputed decoding tables for a codebook against a set of channels.
class Decoder {
public:
    Decoder(const Codebook& cb, std::span<const TransferPair> family, const Field& field);

    DecodeResult decode(const BitMatrix& y) const;
    DecodeResult decode(std::span<const std::uint32_t> y) const { return parallel::nearest(tables_, y); }

    const DecodingTables& tables() const { return tables_; }

private:
    DecodingTables tables_;
};

/// Channel tables for the realized (T, T-hat).
ChannelTables make_channel_tables(const Codebook& cb, const TransferPair& tp, const Field& field);

DecodeResult decode_coherent(const Codebook& cb, const TransferPair& tp, const Field& field, const BitMatrix& y);
DecodeResult decode_noncoherent(const Codebook& cb, const Field& field, const BitMatrix& y);

/// min over family members and message pairs of d(T X(M), T X(M')).
Distance min_distance(const Codebook& cb, std::span<const TransferPair> family, const Field& field);

/// Decoder for the codebook's mode: the given channel when coherent, the
/// stored family otherwise.
Decoder make_decoder(const Codebook& cb, const TransferPair& tp, const Field& field);

/// First (colex order) Z of weight <= budget that makes the decoder return
/// a message other than the one carried by x. Throws GuardError if the
/// largest weight class has more than 10^7 patterns.
std::optional<NoiseMatrix> noise_worst_exhaustive(const Codebook& cb, const TransferPair& tp, const Field& field,
                                                  const BitMatrix& x, std::uint64_t budget);

inline constexpr std::uint64_t kMaxAdversaryCandidates = 10'000'000;

// Text formats. Codewords are BitMatrix::to_hex() strings; family members are
// row-major impulse entries, each as ceil(m/4) hex digits.
void write_codebook(std::ostream& out, const Codebook& cb);
Codebook read_codebook(std::istream& in);
void write_family(std::ostream& out, const ChannelParams& params, std::span<const TransferPair> family);
std::vector<TransferPair> read_family(std::istream& in, const ChannelParams& params);

} // namespace binec
