#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "parityq/common.hpp"
#include "parityq/rng.hpp"

namespace parityq {

// Bit-packed vector over GF(2). Bit i lives at bit (i % 64) of word (i / 64);
// index 0 is the least-significant bit of the first word. Every module in
// this library shares that convention.
class F2Vector {
  public:
    F2Vector() = default;
    explicit F2Vector(std::size_t len) : len_(len), w_(words_for_bits(len), 0) {}

    static F2Vector from_bits(std::initializer_list<int> bits) {
        F2Vector v(bits.size());
        std::size_t i = 0;
        for (int b : bits) v.set(i++, b != 0);
        return v;
    }

    static F2Vector from_word(std::size_t len, uint64_t bits) {
        F2Vector v(len);
        if (len > 0) v.w_[0] = (len >= 64) ? bits : (bits & ((1ULL << len) - 1));
        return v;
    }

    static F2Vector unit(std::size_t len, std::size_t i) {
        F2Vector v(len);
        v.set(i, true);
        return v;
    }

    static F2Vector random(std::size_t len, Rng& rng) {
        F2Vector v(len);
        for (auto& w : v.w_) w = rng.u64();
        v.mask_tail();
        return v;
    }

    std::size_t size() const { return len_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool b) {
        uint64_t m = 1ULL << (i & 63);
        if (b) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= 1ULL << (i & 63); }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (uint64_t w : w_) c += popcount_u64(w);
        return c;
    }
    int parity() const {
        uint64_t acc = 0;
        for (uint64_t w : w_) acc ^= w;
        return parity_u64(acc);
    }

    // Parity of the AND of two vectors (inner product over GF(2)).
    int dot(const F2Vector& o) const {
        if (o.len_ != len_) throw ShapeError("F2Vector::dot: length mismatch");
        uint64_t acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
        return parity_u64(acc);
    }

    F2Vector& operator^=(const F2Vector& o) {
        if (o.len_ != len_) throw ShapeError("F2Vector::xor: length mismatch");
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    friend F2Vector operator^(F2Vector a, const F2Vector& b) { return a ^= b; }

    friend bool operator==(const F2Vector& a, const F2Vector& b) {
        return a.len_ == b.len_ && a.w_ == b.w_;
    }
    friend bool operator!=(const F2Vector& a, const F2Vector& b) { return !(a == b); }

    bool is_zero() const {
        for (uint64_t w : w_) if (w) return false;
        return true;
    }

    const std::vector<uint64_t>& words() const { return w_; }
    uint64_t low_word() const { return w_.empty() ? 0 : w_[0]; }

    // Bytes little-endian in bit index, each byte as two lowercase hex digits.
    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string s;
        std::size_t nbytes = (len_ + 7) / 8;
        for (std::size_t b = 0; b < nbytes; ++b) {
            uint8_t byte = uint8_t(w_[b >> 3] >> ((b & 7) * 8));
            s.push_back(digits[byte >> 4]);
            s.push_back(digits[byte & 15]);
        }
        return s;
    }

    static F2Vector from_hex(std::size_t len, const std::string& hex) {
        std::size_t nbytes = (len + 7) / 8;
        if (hex.size() != 2 * nbytes)
            throw ShapeError("F2Vector::from_hex: bad digit count for length");
        F2Vector v(len);
        for (std::size_t b = 0; b < nbytes; ++b) {
            auto nib = [&](char c) -> uint64_t {
                if (c >= '0' && c <= '9') return uint64_t(c - '0');
                if (c >= 'a' && c <= 'f') return uint64_t(c - 'a' + 10);
                if (c >= 'A' && c <= 'F') return uint64_t(c - 'A' + 10);
                throw ShapeError("F2Vector::from_hex: bad hex digit");
            };
            uint64_t byte = (nib(hex[2 * b]) << 4) | nib(hex[2 * b + 1]);
            v.w_[b >> 3] |= byte << ((b & 7) * 8);
        }
        v.check_tail();
        return v;
    }

  private:
    void mask_tail() {
        if (len_ & 63) w_.back() &= (1ULL << (len_ & 63)) - 1;
    }
    void check_tail() const {
        if ((len_ & 63) && (w_.back() & ~((1ULL << (len_ & 63)) - 1)))
            throw ShapeError("F2Vector: set bits beyond declared length");
    }

    std::size_t len_ = 0;
    std::vector<uint64_t> w_;
};

// Dense bit-packed matrix over GF(2), row-major.
class F2Matrix {
  public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_(words_for_bits(cols)), w_(rows * wpr_, 0) {}

    static F2Matrix identity(std::size_t n) {
        F2Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (w_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(std::size_t r, std::size_t c, bool b) {
        uint64_t m = 1ULL << (c & 63);
        if (b) w_[r * wpr_ + (c >> 6)] |= m; else w_[r * wpr_ + (c >> 6)] &= ~m;
    }

    F2Vector row(std::size_t r) const {
        F2Vector v(cols_);
        for (std::size_t c = 0; c < cols_; ++c) v.set(c, get(r, c));
        return v;
    }
    void set_row(std::size_t r, const F2Vector& v) {
        if (v.size() != cols_) throw ShapeError("F2Matrix::set_row: length mismatch");
        for (std::size_t c = 0; c < cols_; ++c) set(r, c, v.get(c));
    }

    F2Matrix transpose() const {
        F2Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (get(r, c)) t.set(c, r, true);
        return t;
    }

    F2Vector mul(const F2Vector& x) const {
        if (x.size() != cols_) throw ShapeError("F2Matrix::mul: dimension mismatch");
        F2Vector y(rows_);
        const auto& xw = x.words();
        for (std::size_t r = 0; r < rows_; ++r) {
            uint64_t acc = 0;
            for (std::size_t k = 0; k < wpr_; ++k) acc ^= w_[r * wpr_ + k] & xw[k];
            y.set(r, parity_u64(acc));
        }
        return y;
    }

    F2Matrix mul(const F2Matrix& o) const {
        if (o.rows_ != cols_) throw ShapeError("F2Matrix::mul: dimension mismatch");
        F2Matrix out(rows_, o.cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < cols_; ++k)
                if (get(r, k))
                    for (std::size_t j = 0; j < o.wpr_; ++j)
                        out.w_[r * out.wpr_ + j] ^= o.w_[k * o.wpr_ + j];
        return out;
    }

    friend bool operator==(const F2Matrix& a, const F2Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.w_ == b.w_;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = r + 1; c < cols_; ++c)
                if (get(r, c) != get(c, r)) return false;
        return true;
    }

    void xor_row_into(std::size_t src, std::size_t dst) {
        for (std::size_t k = 0; k < wpr_; ++k) w_[dst * wpr_ + k] ^= w_[src * wpr_ + k];
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t k = 0; k < wpr_; ++k)
            std::swap(w_[a * wpr_ + k], w_[b * wpr_ + k]);
    }

  private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<uint64_t> w_;
};

// Vector with entries in Z4 = {0,1,2,3}.
class Z4Vector {
  public:
    Z4Vector() = default;
    explicit Z4Vector(std::size_t len) : e_(len, 0) {}
    explicit Z4Vector(std::vector<uint8_t> entries) : e_(std::move(entries)) {
        for (uint8_t v : e_)
            if (v > 3) throw ShapeError("Z4Vector: entry out of {0,1,2,3}");
    }

    std::size_t size() const { return e_.size(); }
    uint8_t get(std::size_t i) const { return e_[i]; }
    void set(std::size_t i, uint8_t v) {
        if (v > 3) throw ShapeError("Z4Vector: entry out of {0,1,2,3}");
        e_[i] = v;
    }
    const std::vector<uint8_t>& entries() const { return e_; }

    friend bool operator==(const Z4Vector& a, const Z4Vector& b) { return a.e_ == b.e_; }

  private:
    std::vector<uint8_t> e_;
};

namespace detail {

// Row echelon reduction; records pivot column per pivot row. Pivoting picks
// the first row with a set bit in the scanned column, so results are
// deterministic.
struct Echelon {
    F2Matrix m;
    std::vector<std::size_t> pivot_cols; // one per pivot row, ascending
};

inline Echelon echelonize(F2Matrix a) {
    Echelon e{std::move(a), {}};
    std::size_t r = 0;
    for (std::size_t c = 0; c < e.m.cols() && r < e.m.rows(); ++c) {
        std::size_t p = r;
        while (p < e.m.rows() && !e.m.get(p, c)) ++p;
        if (p == e.m.rows()) continue;
        e.m.swap_rows(p, r);
        for (std::size_t i = 0; i < e.m.rows(); ++i)
            if (i != r && e.m.get(i, c)) e.m.xor_row_into(r, i);
        e.pivot_cols.push_back(c);
        ++r;
    }
    return e;
}

} // namespace detail

inline std::size_t f2_rank(const F2Matrix& a) {
    return detail::echelonize(a).pivot_cols.size();
}

// One solution of A x = b over GF(2), or empty if inconsistent. Free
// variables are set to zero.
inline std::optional<F2Vector> f2_solve(const F2Matrix& a, const F2Vector& b) {
    if (a.rows() != b.size()) throw ShapeError("f2_solve: row/rhs mismatch");
    F2Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug.set(r, c, a.get(r, c));
        aug.set(r, a.cols(), b.get(r));
    }
    auto ech = detail::echelonize(std::move(aug));
    // A pivot in the augmented column means an inconsistent row 0 = 1.
    if (!ech.pivot_cols.empty() && ech.pivot_cols.back() == a.cols()) return std::nullopt;
    F2Vector x(a.cols());
    for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i)
        x.set(ech.pivot_cols[i], ech.m.get(i, a.cols()));
    return x;
}

// Basis of ker(A): independent vectors spanning {x : A x = 0}.
// Size is cols - rank(A).
inline std::vector<F2Vector> f2_kernel_basis(const F2Matrix& a) {
    auto ech = detail::echelonize(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t c : ech.pivot_cols) is_pivot[c] = true;
    std::vector<F2Vector> basis;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        if (is_pivot[c]) continue;
        F2Vector v(a.cols());
        v.set(c, true);
        for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i)
            if (ech.m.get(i, c)) v.set(ech.pivot_cols[i], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace parityq
