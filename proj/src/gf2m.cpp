#include "binec/gf2m.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace binec {

namespace {

// Minimal-weight irreducible polynomials (trinomials where one exists,
// otherwise pentanomials), indexed by degree.
constexpr std::array<std::uint32_t, 17> kIrreducible = {
    0,
    0x3,     // x + 1
    0x7,     // x^2 + x + 1
    0xB,     // x^3 + x + 1
    0x13,    // x^4 + x + 1
    0x25,    // x^5 + x^2 + 1
    0x43,    // x^6 + x + 1
    0x83,    // x^7 + x + 1
    0x11D,   // x^8 + x^4 + x^3 + x^2 + 1
    0x211,   // x^9 + x^4 + 1
    0x409,   // x^10 + x^3 + 1
    0x805,   // x^11 + x^2 + 1
    0x1009,  // x^12 + x^3 + 1
    0x201B,  // x^13 + x^4 + x^3 + x + 1
    0x4021,  // x^14 + x^5 + 1
    0x8003,  // x^15 + x + 1
    0x1002B, // x^16 + x^5 + x^3 + x + 1
};

} // namespace

std::uint32_t irreducible_polynomial(unsigned m) {
    if (m < 1 || m > Field::kMaxBits)
        throw std::invalid_argument("field size m must be in [1, 16], got " + std::to_string(m));
    return kIrreducible[m];
}

Field::Field(unsigned m) : m_(m), modulus_(irreducible_polynomial(m)) {}

FieldElem Field::mul(FieldElem a, FieldElem b) const {
    std::uint32_t x = a.value;
    std::uint32_t y = b.value;
    std::uint32_t acc = 0;
    const std::uint32_t top = std::uint32_t{1} << m_;
    while (y != 0) {
        if (y & 1U) acc ^= x;
        y >>= 1;
        x <<= 1;
        if (x & top) x ^= modulus_;
    }
    return FieldElem{acc};
}

FieldElem Field::pow(FieldElem a, std::uint64_t e) const {
    FieldElem result{1};
    while (e != 0) {
        if (e & 1U) result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

FieldElem Field::inv(FieldElem a) const {
    if (a.value == 0) throw std::domain_error("inverse of zero in GF(2^m)");
    return pow(a, (std::uint64_t{1} << m_) - 2);
}

std::vector<bool> Field::to_bits(FieldElem a) const {
    std::vector<bool> bits(m_);
    for (unsigned j = 0; j < m_; ++j) bits[j] = (a.value >> j) & 1U;
    return bits;
}

FieldElem Field::from_bits(const std::vector<bool>& bits) const {
    if (bits.size() != m_)
        throw std::invalid_argument("bit vector length " + std::to_string(bits.size()) + " != m = " + std::to_string(m_));
    std::uint32_t v = 0;
    for (unsigned j = 0; j < m_; ++j)
        if (bits[j]) v |= std::uint32_t{1} << j;
    return FieldElem{v};
}

BitMatrix Field::to_matrix(FieldElem a) const {
    BitMatrix out(m_, m_);
    FieldElem column = a;
    const FieldElem x{m_ > 1 ? 2U : 1U};
    for (unsigned j = 0; j < m_; ++j) {
        for (unsigned i = 0; i < m_; ++i) out.set(i, j, (column.value >> i) & 1U);
        column = mul(column, x);
    }
    return out;
}

FieldMatrix FieldMatrix::identity(std::size_t n) {
    FieldMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = FieldElem{1};
    return out;
}

FieldMatrix FieldMatrix::random(const Field& field, std::size_t rows, std::size_t cols, Rng& rng) {
    FieldMatrix out(rows, cols);
    for (auto& e : out.data_) e = FieldElem{static_cast<std::uint32_t>(uniform_below(rng, field.order()))};
    return out;
}

FieldMatrix FieldMatrix::select_columns(std::span<const std::size_t> cols) const {
    FieldMatrix out(rows_, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] >= cols_) throw std::out_of_range("column index out of range");
        for (std::size_t i = 0; i < rows_; ++i) out(i, j) = (*this)(i, cols[j]);
    }
    return out;
}

FieldMatrix multiply(const Field& field, const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("FieldMatrix product: shape mismatch");
    FieldMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const FieldElem aik = a(i, k);
            if (aik.value == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = field.add(out(i, j), field.mul(aik, b(k, j)));
        }
    return out;
}

FieldMatrix add(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("FieldMatrix sum: shape mismatch");
    FieldMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = FieldElem{a(i, j).value ^ b(i, j).value};
    return out;
}

std::size_t rank(const Field& field, FieldMatrix a) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t pivot = r;
        while (pivot < a.rows() && a(pivot, c).value == 0) ++pivot;
        if (pivot == a.rows()) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(r, j));
        const FieldElem scale = field.inv(a(r, c));
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, c).value == 0) continue;
            const FieldElem f = field.mul(a(i, c), scale);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = field.add(a(i, j), field.mul(f, a(r, j)));
        }
        ++r;
    }
    return r;
}

bool is_invertible(const Field& field, const FieldMatrix& a) {
    return a.rows() == a.cols() && rank(field, a) == a.rows();
}

BitMatrix lift_matrix(const Field& field, const FieldMatrix& a) {
    const std::size_t m = field.m();
    BitMatrix out(a.rows() * m, a.cols() * m);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j).value != 0) out.set_block(i * m, j * m, field.to_matrix(a(i, j)));
    return out;
}

BitMatrix symbols_to_bits(const Field& field, const FieldMatrix& a) {
    const std::size_t m = field.m();
    BitMatrix out(a.rows() * m, a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            for (std::size_t j = 0; j < m; ++j) out.set(i * m + j, k, (a(i, k).value >> j) & 1U);
    return out;
}

FieldMatrix bits_to_symbols(const Field& field, const BitMatrix& bits) {
    const std::size_t m = field.m();
    if (bits.rows() % m != 0) throw std::invalid_argument("binary packet matrix rows not a multiple of m");
    FieldMatrix out(bits.rows() / m, bits.cols());
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t k = 0; k < bits.cols(); ++k) {
            std::uint32_t v = 0;
            for (std::size_t j = 0; j < m; ++j)
                if (bits.get(i * m + j, k)) v |= std::uint32_t{1} << j;
            out(i, k) = FieldElem{v};
        }
    return out;
}

} // namespace binec

namespace binec {

namespace {

BitMatrix as_column(const Field& field, FieldElem a) {
    BitMatrix v(field.m(), 1);
    for (unsigned j = 0; j < field.m(); ++j) v.set(j, 0, (a.value >> j) & 1U);
    return v;
}

} // namespace

FieldAudit audit_field(const Field& field, std::uint64_t samples, std::uint64_t seed) {
    FieldAudit audit;
    audit.exhaustive = samples == 0;
    const auto check = [&](bool ok) {
        ++audit.checks;
        if (!ok) ++audit.violations;
    };
    const auto single = [&](FieldElem a) {
        check(field.from_bits(field.to_bits(a)) == a);
        if (a.value != 0) check(field.mul(a, field.inv(a)) == FieldElem{1});
    };
    const auto pair = [&](FieldElem a, FieldElem b) {
        const auto ma = field.to_matrix(a);
        const auto mb = field.to_matrix(b);
        check(field.to_matrix(field.add(a, b)) == (ma ^ mb));
        check(field.to_matrix(field.mul(a, b)) == ma * mb);
        check(ma * as_column(field, b) == as_column(field, field.mul(a, b)));
        check((as_column(field, a) ^ as_column(field, b)) == as_column(field, field.add(a, b)));
    };
    if (audit.exhaustive) {
        for (std::uint32_t a = 0; a < field.order(); ++a) {
            single(FieldElem{a});
            for (std::uint32_t b = 0; b < field.order(); ++b) pair(FieldElem{a}, FieldElem{b});
        }
    } else {
        Rng rng(seed);
        for (std::uint64_t i = 0; i < samples; ++i) {
            const FieldElem a{static_cast<std::uint32_t>(uniform_below(rng, field.order()))};
            const FieldElem b{static_cast<std::uint32_t>(uniform_below(rng, field.order()))};
            single(a);
            pair(a, b);
        }
    }
    return audit;
}

} // namespace binec
