#include "conic/gf2.hpp"

namespace conic {

std::size_t BitVec::first_set() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i]) {
            std::size_t b = (i << 6) + static_cast<std::size_t>(__builtin_ctzll(w_[i]));
            return b < n_ ? b : n_;
        }
    return n_;
}

BitVec Gf2Matrix::row(std::size_t r) const {
    BitVec v(cols_);
    auto src = row_words(r);
    for (std::size_t i = 0; i < wpr_; ++i) v.words()[i] = src[i];
    return v;
}

BitVec Gf2Matrix::col(std::size_t c) const {
    BitVec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        if (get(r, c)) v.set(r);
    return v;
}

Gf2Matrix Gf2Matrix::transposed() const {
    Gf2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto w = row_words(r);
        for (std::size_t wi = 0; wi < wpr_; ++wi) {
            std::uint64_t word = w[wi];
            while (word) {
                int b = __builtin_ctzll(word);
                word &= word - 1;
                t.set((wi << 6) + static_cast<std::size_t>(b), r);
            }
        }
    }
    return t;
}

BitVec Gf2Matrix::mul(const BitVec& v) const {
    if (v.size() != cols_) throw DimensionMismatchError("vector length != cols");
    BitVec out(rows_);
    auto vw = v.words();
    for (std::size_t r = 0; r < rows_; ++r) {
        auto rw = row_words(r);
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < wpr_; ++i) acc ^= rw[i] & vw[i];
        if (__builtin_popcountll(acc) & 1) out.set(r);
    }
    return out;
}

std::size_t rank2(Gf2Matrix m) {
    const std::size_t rows = m.rows_, cols = m.cols_, wpr = m.wpr_;
    std::uint64_t* data = m.data_.data();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        const std::size_t wi = c >> 6;
        const std::uint64_t mask = std::uint64_t(1) << (c & 63);
        std::size_t pivot = rows;
        for (std::size_t r = rank; r < rows; ++r)
            if (data[r * wpr + wi] & mask) {
                pivot = r;
                break;
            }
        if (pivot == rows) continue;
        if (pivot != rank)
            for (std::size_t i = wi; i < wpr; ++i)
                std::swap(data[pivot * wpr + i], data[rank * wpr + i]);
        const std::uint64_t* prow = data + rank * wpr;
        for (std::size_t r = rank + 1; r < rows; ++r) {
            std::uint64_t* row = data + r * wpr;
            if (row[wi] & mask)
                for (std::size_t i = wi; i < wpr; ++i) row[i] ^= prow[i];
        }
        ++rank;
    }
    return rank;
}

std::size_t nullspace_dim(const Gf2Matrix& m) { return m.cols() - rank2(m); }

std::vector<BitVec> nullspace_basis(const Gf2Matrix& m) {
    // Reduced row echelon form of a working copy, then one basis vector per
    // free column.
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<BitVec> rref;
    rref.reserve(rows);
    for (std::size_t r = 0; r < rows; ++r) rref.push_back(m.row(r));

    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t r = rank; r < rows; ++r)
            if (rref[r].get(c)) {
                pivot = r;
                break;
            }
        if (pivot == rows) continue;
        std::swap(rref[pivot], rref[rank]);
        for (std::size_t r = 0; r < rows; ++r)
            if (r != rank && rref[r].get(c)) rref[r].xor_with(rref[rank]);
        pivot_col.push_back(c);
        ++rank;
    }

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;

    std::vector<BitVec> basis;
    basis.reserve(cols - rank);
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        BitVec v(cols);
        v.set(f);
        for (std::size_t i = 0; i < rank; ++i)
            if (rref[i].get(f)) v.set(pivot_col[i]);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool Gf2Span::insert(BitVec v) {
    v = reduce(std::move(v));
    std::size_t piv = v.first_set();
    if (piv == n_) return false;
    // keep the basis reduced: clear this pivot from existing vectors
    for (auto& [p, b] : basis_)
        if (b.get(piv)) b.xor_with(v);
    basis_.emplace_back(piv, std::move(v));
    return true;
}

bool Gf2Span::contains(BitVec v) const { return reduce(std::move(v)).is_zero(); }

BitVec Gf2Span::reduce(BitVec v) const {
    if (v.size() != n_) throw DimensionMismatchError("vector length mismatch in span");
    for (const auto& [piv, b] : basis_)
        if (v.get(piv)) v.xor_with(b);
    return v;
}

Gf2Span column_span(const Gf2Matrix& m) {
    Gf2Span span(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c) span.insert(m.col(c));
    return span;
}

bool in_colspace(const Gf2Matrix& m, const BitVec& v) {
    if (v.size() != m.rows()) throw DimensionMismatchError("vector length != rows");
    return column_span(m).contains(v);
}

std::size_t colspace_dim_union(const Gf2Matrix& m, std::span<const BitVec> extra) {
    Gf2Span span = column_span(m);
    for (const auto& v : extra) span.insert(v);
    return span.dim();
}

} // namespace conic
