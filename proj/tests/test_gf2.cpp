#include <doctest.h>

#include <random>

#include "conic/gf2.hpp"

using namespace conic;

namespace {

// Naive elimination oracle on unpacked bytes, written independently of the
// bit-packed path (different data layout, same pivot rule).
std::size_t naive_rank(std::vector<std::vector<std::uint8_t>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && !m[piv][c]) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = 0; r < rows; ++r)
            if (r != rank && m[r][c])
                for (std::size_t j = 0; j < cols; ++j) m[r][j] ^= m[rank][j];
        ++rank;
    }
    return rank;
}

Gf2Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, double density = 0.5) {
    Gf2Matrix m(rows, cols);
    std::bernoulli_distribution bit(density);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (bit(rng)) m.set(r, c);
    return m;
}

std::vector<std::vector<std::uint8_t>> unpack(const Gf2Matrix& m) {
    std::vector<std::vector<std::uint8_t>> out(m.rows(), std::vector<std::uint8_t>(m.cols(), 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m.get(r, c);
    return out;
}

} // namespace

TEST_CASE("rank of simple shapes") {
    Gf2Matrix id(4, 4);
    for (int i = 0; i < 4; ++i) id.set(i, i);
    CHECK(rank2(id) == 4);
    CHECK(nullspace_dim(id) == 0);
    CHECK(nullspace_basis(id).empty());

    Gf2Matrix ones(3, 5);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 5; ++c) ones.set(r, c);
    CHECK(rank2(ones) == 1);

    Gf2Matrix zero(3, 4);
    CHECK(rank2(zero) == 0);
    CHECK(nullspace_dim(zero) == 4);
    CHECK(nullspace_basis(zero).size() == 4);
}

TEST_CASE("rank2 does not mutate its argument") {
    std::mt19937 rng(7);
    Gf2Matrix m = random_matrix(rng, 20, 30);
    Gf2Matrix copy = m;
    (void)rank2(m);
    CHECK(m == copy);
}

TEST_CASE("rank agrees with the naive oracle") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t rows = 1 + rng() % 64, cols = 1 + rng() % 64;
        Gf2Matrix m = random_matrix(rng, rows, cols, 0.2 + 0.6 * (trial % 5) / 4.0);
        CHECK(rank2(m) == naive_rank(unpack(m)));
    }
}

TEST_CASE("rank is invariant under transpose") {
    std::mt19937 rng(99);
    for (std::size_t n : {10u, 50u, 128u, 200u}) {
        Gf2Matrix m = random_matrix(rng, n, n / 2 + 3);
        CHECK(rank2(m) == rank2(m.transposed()));
    }
}

TEST_CASE("null space vectors are actual kernel vectors") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 20; ++trial) {
        Gf2Matrix m = random_matrix(rng, 15 + trial, 20 + trial);
        auto basis = nullspace_basis(m);
        CHECK(basis.size() == nullspace_dim(m));
        for (const auto& v : basis) CHECK(m.mul(v).is_zero());
        // basis vectors are independent
        Gf2Span span(m.cols());
        for (const auto& v : basis) CHECK(span.insert(v));
    }
}

TEST_CASE("column space membership") {
    std::mt19937 rng(31);
    Gf2Matrix m = random_matrix(rng, 24, 12);
    CHECK(in_colspace(m, m.col(0)));
    CHECK(in_colspace(m, BitVec(24)));
    BitVec sum = m.col(1);
    sum.xor_with(m.col(5));
    sum.xor_with(m.col(9));
    CHECK(in_colspace(m, sum));
    CHECK_THROWS_AS((void)in_colspace(m, BitVec(7)), DimensionMismatchError);

    // union dimension: adjoining a column changes nothing, a fresh random
    // vector can only grow the dimension by one
    std::vector<BitVec> extra = {m.col(3)};
    CHECK(colspace_dim_union(m, extra) == rank2(m));
}

TEST_CASE("colspace equality is reflexive and symmetric") {
    std::mt19937 rng(8);
    auto contained = [](const Gf2Matrix& a, const Gf2Matrix& b) {
        Gf2Span span = column_span(b);
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (!span.contains(a.col(c))) return false;
        return true;
    };
    for (int trial = 0; trial < 10; ++trial) {
        Gf2Matrix a = random_matrix(rng, 16, 10);
        CHECK(contained(a, a));
        Gf2Matrix b = a;
        // permuted columns span the same space
        Gf2Matrix p(16, 10);
        for (std::size_t c = 0; c < 10; ++c) {
            BitVec col = b.col((c + 3) % 10);
            for (std::size_t r = 0; r < 16; ++r)
                if (col.get(r)) p.set(r, c);
        }
        CHECK(contained(a, p));
        CHECK(contained(p, a));
    }
}

TEST_CASE("span handles reduce correctly") {
    Gf2Span span(6);
    BitVec a(6), b(6), c(6);
    a.set(0);
    a.set(2);
    b.set(2);
    b.set(4);
    c.set(0);
    c.set(4);
    CHECK(span.insert(a));
    CHECK(span.insert(b));
    CHECK_FALSE(span.insert(c)); // a + b
    CHECK(span.dim() == 2);
    CHECK(span.contains(c));
    CHECK(span.contains(BitVec(6))); // zero vector always inside
}

TEST_CASE("bit vector primitives") {
    BitVec v(130);
    v.set(0);
    v.set(64);
    v.set(129);
    CHECK(v.popcount() == 3);
    CHECK(v.first_set() == 0);
    v.flip(0);
    CHECK(v.first_set() == 64);
    CHECK_FALSE(v.is_zero());
    BitVec w(130);
    w.set(64);
    w.set(129);
    v.xor_with(w);
    CHECK(v.is_zero());
}
