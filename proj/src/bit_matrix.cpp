#include "binec/bit_matrix.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace binec {

namespace {

constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

int hex_value(char ch) {
    if (ch >= '0' && ch <= '9') return ch - '0';
    if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
    return -1;
}

} // namespace

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), words_(rows * words_for(cols), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix id(n, n);
    for (std::size_t i = 0; i < n; ++i) id.set(i, i, true);
    return id;
}

BitMatrix BitMatrix::random(std::size_t rows, std::size_t cols, Rng& rng) {
    BitMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) out.set(r, c, rng() & 1U);
    return out;
}

BitMatrix BitMatrix::from_columns(std::size_t rows, std::span<const std::uint32_t> columns) {
    if (rows > 32) throw std::invalid_argument("packed columns hold at most 32 rows");
    BitMatrix out(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) out.set_column(c, columns[c]);
    return out;
}

std::uint32_t BitMatrix::column(std::size_t c) const {
    if (rows_ > 32) throw std::invalid_argument("packed columns hold at most 32 rows");
    std::uint32_t s = 0;
    for (std::size_t r = 0; r < rows_; ++r)
        if (get(r, c)) s |= std::uint32_t{1} << r;
    return s;
}

std::vector<std::uint32_t> BitMatrix::columns() const {
    std::vector<std::uint32_t> out(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out[c] = column(c);
    return out;
}

void BitMatrix::set_column(std::size_t c, std::uint32_t syndrome) {
    for (std::size_t r = 0; r < rows_; ++r) set(r, c, (syndrome >> r) & 1U);
}

std::size_t BitMatrix::popcount() const {
    std::size_t n = 0;
    for (const auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

BitMatrix BitMatrix::operator^(const BitMatrix& o) const {
    BitMatrix out = *this;
    out ^= o;
    return out;
}

BitMatrix& BitMatrix::operator^=(const BitMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("BitMatrix xor: shape mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

BitMatrix BitMatrix::operator*(const BitMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("BitMatrix product: shape mismatch");
    BitMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t* dst = &out.words_[i * out.stride_];
        for (std::size_t k = 0; k < cols_; ++k) {
            if (!get(i, k)) continue;
            const std::uint64_t* src = &o.words_[k * o.stride_];
            for (std::size_t w = 0; w < out.stride_; ++w) dst[w] ^= src[w];
        }
    }
    return out;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) out.set(c, r, true);
    return out;
}

BitMatrix BitMatrix::block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
    if (r0 + rows > rows_ || c0 + cols > cols_) throw std::out_of_range("BitMatrix block out of range");
    BitMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) out.set(r, c, get(r0 + r, c0 + c));
    return out;
}

void BitMatrix::set_block(std::size_t r0, std::size_t c0, const BitMatrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("BitMatrix block out of range");
    for (std::size_t r = 0; r < b.rows_; ++r)
        for (std::size_t c = 0; c < b.cols_; ++c) set(r0 + r, c0 + c, b.get(r, c));
}

std::size_t BitMatrix::rank() const {
    BitMatrix a = *this;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows_ && !a.get(pivot, c)) ++pivot;
        if (pivot == rows_) continue;
        for (std::size_t w = 0; w < stride_; ++w) std::swap(a.words_[pivot * stride_ + w], a.words_[rank * stride_ + w]);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == rank || !a.get(r, c)) continue;
            for (std::size_t w = 0; w < stride_; ++w) a.words_[r * stride_ + w] ^= a.words_[rank * stride_ + w];
        }
        ++rank;
    }
    return rank;
}

std::optional<BitMatrix> BitMatrix::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    const std::size_t n = rows_;
    BitMatrix a = *this;
    BitMatrix inv = identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && !a.get(pivot, c)) ++pivot;
        if (pivot == n) return std::nullopt;
        for (std::size_t w = 0; w < stride_; ++w) {
            std::swap(a.words_[pivot * stride_ + w], a.words_[c * stride_ + w]);
            std::swap(inv.words_[pivot * stride_ + w], inv.words_[c * stride_ + w]);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || !a.get(r, c)) continue;
            for (std::size_t w = 0; w < stride_; ++w) {
                a.words_[r * stride_ + w] ^= a.words_[c * stride_ + w];
                inv.words_[r * stride_ + w] ^= inv.words_[c * stride_ + w];
            }
        }
    }
    return inv;
}

std::string BitMatrix::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    const std::size_t nbits = rows_ * cols_;
    std::string out;
    out.reserve(2 * ((nbits + 7) / 8));
    for (std::size_t byte = 0; byte * 8 < nbits; ++byte) {
        unsigned v = 0;
        for (std::size_t b = 0; b < 8; ++b) {
            const std::size_t k = byte * 8 + b;
            if (k < nbits && get(k / cols_, k % cols_)) v |= 0x80U >> b;
        }
        out.push_back(kDigits[v >> 4]);
        out.push_back(kDigits[v & 15]);
    }
    return out;
}

BitMatrix BitMatrix::from_hex(std::size_t rows, std::size_t cols, std::string_view hex) {
    const std::size_t nbits = rows * cols;
    if (hex.size() != 2 * ((nbits + 7) / 8)) throw std::invalid_argument("hex matrix: wrong length");
    BitMatrix out(rows, cols);
    for (std::size_t byte = 0; byte < hex.size() / 2; ++byte) {
        const int hi = hex_value(hex[2 * byte]);
        const int lo = hex_value(hex[2 * byte + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("hex matrix: bad digit");
        const unsigned v = static_cast<unsigned>(hi << 4 | lo);
        for (std::size_t b = 0; b < 8; ++b) {
            const std::size_t k = byte * 8 + b;
            const bool bit = v & (0x80U >> b);
            if (k < nbits) out.set(k / cols, k % cols, bit);
            else if (bit) throw std::invalid_argument("hex matrix: nonzero padding");
        }
    }
    return out;
}

std::string BitMatrix::to_coordinates() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) os << '(' << r << ", " << c << ")\n";
    return os.str();
}

std::string BitMatrix::to_string() const {
    std::string out;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out.push_back(get(r, c) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

} // namespace binec
