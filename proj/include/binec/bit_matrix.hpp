#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "binec/random.hpp"

namespace binec {

/**
 * Dense matrix over GF(2), row-major, 64 bits per storage word.
 *
 * Row r of a lifted packet matrix holds bit (r mod m) of symbol positions
 * of packet r / m; column k holds the k-th symbol of every packet. Columns
 * with at most 32 rows can be read and written as packed syndromes, bit i of
 * the syndrome being row i.
 */
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);
    static BitMatrix random(std::size_t rows, std::size_t cols, Rng& rng);
    static BitMatrix from_columns(std::size_t rows, std::span<const std::uint32_t> columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (words_[r * stride_ + (c >> 6)] >> (c & 63)) & 1U;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        auto& w = words_[r * stride_ + (c >> 6)];
        const std::uint64_t bit = std::uint64_t{1} << (c & 63);
        w = v ? (w | bit) : (w & ~bit);
    }
    void flip(std::size_t r, std::size_t c) { words_[r * stride_ + (c >> 6)] ^= std::uint64_t{1} << (c & 63); }

    std::uint32_t column(std::size_t c) const;
    std::vector<std::uint32_t> columns() const;
    void set_column(std::size_t c, std::uint32_t syndrome);

    std::size_t popcount() const;
    bool is_zero() const { return popcount() == 0; }

    BitMatrix operator^(const BitMatrix& o) const;
    BitMatrix& operator^=(const BitMatrix& o);
    /// Matrix product over GF(2).
    BitMatrix operator*(const BitMatrix& o) const;

    BitMatrix transpose() const;
    BitMatrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
    void set_block(std::size_t r0, std::size_t c0, const BitMatrix& b);

    std::size_t rank() const;
    std::optional<BitMatrix> inverse() const;

    /// Row-major bit stream, MSB-first within each byte, hex encoded.
    std::string to_hex() const;
    static BitMatrix from_hex(std::size_t rows, std::size_t cols, std::string_view hex);

    /// Sparse "(row, col)" listing, one coordinate per line.
    std::string to_coordinates() const;
    std::string to_string() const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace binec
