#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "conic/errors.hpp"

namespace conic {

/// Fixed-length bit vector over GF(2), packed into 64-bit words.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    void xor_with(const BitVec& o) {
        if (o.n_ != n_) throw DimensionMismatchError("bit vector length mismatch");
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    }

    bool is_zero() const {
        for (auto w : w_)
            if (w) return false;
        return true;
    }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    /// Index of the lowest set bit, or size() if none.
    std::size_t first_set() const;

    std::span<const std::uint64_t> words() const { return w_; }
    std::span<std::uint64_t> words() { return w_; }

    friend bool operator==(const BitVec& a, const BitVec& b) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Row-major bit-packed 0-1 matrix. Trailing pad bits of every row stay zero.
/// The public operations never mutate their input; rank and null-space work
/// on private copies, so concurrent queries on one matrix are safe.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c) { data_[r * wpr_ + (c >> 6)] |= std::uint64_t(1) << (c & 63); }
    void flip(std::size_t r, std::size_t c) { data_[r * wpr_ + (c >> 6)] ^= std::uint64_t(1) << (c & 63); }

    BitVec row(std::size_t r) const;
    BitVec col(std::size_t c) const;
    Gf2Matrix transposed() const;

    /// Matrix-vector product over GF(2); v has length cols().
    BitVec mul(const BitVec& v) const;

    std::span<const std::uint64_t> row_words(std::size_t r) const {
        return {data_.data() + r * wpr_, wpr_};
    }

    friend bool operator==(const Gf2Matrix& a, const Gf2Matrix& b) = default;

private:
    friend std::size_t rank2(Gf2Matrix m);

    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> data_;
};

/// Rank over GF(2), forward elimination with word-wide row XOR.
/// Pivot order is leftmost column, lowest row.
std::size_t rank2(Gf2Matrix m); // by-value: callers keep their matrix intact

std::size_t nullspace_dim(const Gf2Matrix& m);

/// Basis of { v : Mv = 0 }, in reduced form over the free columns.
std::vector<BitVec> nullspace_basis(const Gf2Matrix& m);

/// Incrementally maintained echelon basis for a subspace of GF(2)^n.
class Gf2Span {
public:
    explicit Gf2Span(std::size_t n) : n_(n) {}

    std::size_t length() const { return n_; }
    std::size_t dim() const { return basis_.size(); }

    /// Returns true when v enlarged the span.
    bool insert(BitVec v);
    bool contains(BitVec v) const;

    /// Remainder of v after reduction against the basis.
    BitVec reduce(BitVec v) const;

private:
    std::size_t n_;
    std::vector<std::pair<std::size_t, BitVec>> basis_; // (pivot, vector)
};

Gf2Span column_span(const Gf2Matrix& m);

/// Membership of v (length rows) in the column space of m.
bool in_colspace(const Gf2Matrix& m, const BitVec& v);

/// Dimension of col(m) + <extra vectors>.
std::size_t colspace_dim_union(const Gf2Matrix& m, std::span<const BitVec> extra);

} // namespace conic
