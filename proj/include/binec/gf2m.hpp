#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "binec/bit_matrix.hpp"

namespace binec {

/// Element of GF(2^m) in polynomial basis: bit j is the coefficient of x^j.
struct FieldElem {
    std::uint32_t value = 0;

    constexpr FieldElem() = default;
    constexpr explicit FieldElem(std::uint32_t v) : value(v) {}
    friend constexpr bool operator==(FieldElem, FieldElem) = default;
};

/**
 * GF(2^m) for 1 <= m <= 16, reduced modulo a fixed minimal-weight
 * irreducible polynomial. The binary images of symbols and coefficients
 * (bit vectors and m x m multiplication matrices) are defined here.
 */
class Field {
public:
    static constexpr unsigned kMaxBits = 16;

    explicit Field(unsigned m);

    unsigned m() const { return m_; }
    std::uint32_t modulus() const { return modulus_; }
    std::uint32_t order() const { return std::uint32_t{1} << m_; }
    bool contains(FieldElem a) const { return a.value < order(); }

    FieldElem add(FieldElem a, FieldElem b) const { return FieldElem{a.value ^ b.value}; }
    FieldElem mul(FieldElem a, FieldElem b) const;
    FieldElem pow(FieldElem a, std::uint64_t e) const;
    /// a^(2^m - 2); throws std::domain_error for a == 0.
    FieldElem inv(FieldElem a) const;

    std::vector<bool> to_bits(FieldElem a) const;
    FieldElem from_bits(const std::vector<bool>& bits) const;

    /// Multiplication-by-a matrix: column j is the bit image of a * x^j.
    BitMatrix to_matrix(FieldElem a) const;

    friend bool operator==(const Field& a, const Field& b) { return a.m_ == b.m_ && a.modulus_ == b.modulus_; }

private:
    unsigned m_;
    std::uint32_t modulus_;
};

/// Irreducible polynomial used for GF(2^m); bit j is the coefficient of x^j.
std::uint32_t irreducible_polynomial(unsigned m);

/// Field element matrices (T, T-hat, packets X over GF(2^m)).
class FieldMatrix {
public:
    FieldMatrix() = default;
    FieldMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static FieldMatrix identity(std::size_t n);
    static FieldMatrix random(const Field& field, std::size_t rows, std::size_t cols, Rng& rng);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    FieldElem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    FieldElem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    FieldMatrix select_columns(std::span<const std::size_t> cols) const;

    friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<FieldElem> data_;
};

FieldMatrix multiply(const Field& field, const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix add(const FieldMatrix& a, const FieldMatrix& b);
std::size_t rank(const Field& field, FieldMatrix a);
bool is_invertible(const Field& field, const FieldMatrix& a);

/// Blockwise replacement of each entry by its m x m multiplication matrix.
BitMatrix lift_matrix(const Field& field, const FieldMatrix& a);

/// Packet matrix (r x n over the field) to its (r*m) x n binary image and back.
BitMatrix symbols_to_bits(const Field& field, const FieldMatrix& a);
FieldMatrix bits_to_symbols(const Field& field, const BitMatrix& bits);

struct FieldAudit {
    std::uint64_t checks = 0;
    std::uint64_t violations = 0;
    bool exhaustive = false;
};

/**
 * Checks the symbol/coefficient maps against field arithmetic: the matrix
 * map is a ring homomorphism, the bit map is a bijection compatible with
 * addition, multiplication matches matrix-vector products, and a * inv(a) = 1.
 * All pairs are visited when samples == 0, otherwise `samples` random pairs.
 */
FieldAudit audit_field(const Field& field, std::uint64_t samples = 0, std::uint64_t seed = 1);

} // namespace binec
