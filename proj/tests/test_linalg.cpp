#include "doctest.h"
#include "hgc/sparse.hpp"
#include "hgc/rank.hpp"
#include "hgc/graded_complex.hpp"
#include <random>
#include <algorithm>
#include <numeric>

using namespace hgc;

namespace {

SparseMatrix randomMatrix(std::mt19937_64& rng, int rows, int cols, double fill, bool withDenoms) {
    SparseMatrix m(rows, cols);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 7);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (u(rng) < fill) m.add(r, c, ratOf(num(rng), withDenoms ? den(rng) : 1));
    return m;
}

SparseMatrix permuted(const SparseMatrix& m, std::mt19937_64& rng) {
    std::vector<int> pr(m.rows()), pc(m.cols());
    std::iota(pr.begin(), pr.end(), 0);
    std::iota(pc.begin(), pc.end(), 0);
    std::shuffle(pr.begin(), pr.end(), rng);
    std::shuffle(pc.begin(), pc.end(), rng);
    SparseMatrix out(m.rows(), m.cols());
    for (auto& e : m.entries()) out.add(pr[e.row], pc[e.col], e.val);
    return out;
}

} // namespace

TEST_CASE("coordinate storage accumulates duplicates and drops zeros") {
    SparseMatrix m(2, 2);
    m.add(0, 0, ratOf(1, 2));
    m.add(0, 0, ratOf(1, 2));
    m.add(1, 1, ratOf(3));
    m.add(1, 1, ratOf(-3));
    m.add(0, 1, ratOf(0));
    CHECK(m.nnz() == 1);
    CHECK(m.entries()[0].val == 1);
    CHECK_THROWS_AS(m.add(2, 0, ratOf(1)), std::out_of_range);
    CHECK_THROWS_AS(m.add(0, -1, ratOf(1)), std::out_of_range);
}

TEST_CASE("identity and zero ranks") {
    auto id3 = SparseMatrix::identity(3);
    CHECK(rankModP(id3, 1073741827ull) == 3);
    CHECK(rankExact(id3) == 3);
    SparseMatrix z(4, 5);
    CHECK(rankModP(z, 1073741827ull) == 0);
    CHECK(rankExact(z) == 0);
    RankEngine eng(7);
    CHECK(eng.rank(id3) == 3);
    CHECK(eng.rank(z) == 0);
}

TEST_CASE("dense elimination agrees with sparse on fixed matrices") {
    std::vector<std::vector<Rat>> h(6, std::vector<Rat>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) h[i][j] = ratOf(1, i + j + 1);
    CHECK(rankExactDense(h) == 6);
    auto m = SparseMatrix::fromDense(h);
    CHECK(rankExact(m) == 6);
    RankEngine eng(3);
    CHECK(eng.rank(m) == 6);

    // rank 1: second row is a rational multiple of the first
    auto r1 = SparseMatrix::fromDense({{ratOf(1), ratOf(1, 2)}, {ratOf(2), ratOf(1)}});
    CHECK(rankExact(r1) == 1);
    CHECK(rankExactDense(r1.dense()) == 1);
}

TEST_CASE("modular rank equals exact rank on random matrices up to 200x200") {
    std::mt19937_64 rng(42);
    RankEngine eng(11);
    for (int trial = 0; trial < 8; ++trial) {
        int rows = 5 + (int)(rng() % 60);
        int cols = 5 + (int)(rng() % 60);
        auto m = randomMatrix(rng, rows, cols, 0.15, true);
        int re = rankExact(m);
        CHECK(eng.rank(m) == re);
        CHECK(rankExactDense(m.dense()) == re);
    }
    auto big = randomMatrix(rng, 200, 200, 0.03, true);
    CHECK(eng.rank(big) == rankExact(big));
}

TEST_CASE("rank is invariant under transpose and permutations") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 6; ++trial) {
        auto m = randomMatrix(rng, 20 + (int)(rng() % 30), 20 + (int)(rng() % 30), 0.2, true);
        int r = rankExact(m);
        CHECK(rankExact(m.transposed()) == r);
        CHECK(rankExact(permuted(m, rng)) == r);
        CHECK(m.transposed().transposed().equals(m));
    }
}

TEST_CASE("bad primes are rejected and the engine retries past them") {
    uint64_t p = (1ull << 30) + 1;
    while (!isPrimeU64(p)) ++p;
    uint64_t q1 = p + 1, q2;
    while (!isPrimeU64(q1)) ++q1;
    q2 = q1 + 1;
    while (!isPrimeU64(q2)) ++q2;

    SparseMatrix m(1, 1);
    m.add(0, 0, Rat(1, (unsigned long)p)); // denominator divisible by p
    CHECK_THROWS_AS(rankModP(m, p), BadPrimeError);

    RankEngine eng(1);
    eng.presetPrimes({p, q1, q2});
    CHECK(eng.rank(m) == 1);
    REQUIRE(eng.primesUsed().size() == 2);
    CHECK(eng.primesUsed()[0] == q1);
    CHECK(eng.primesUsed()[1] == q2);
}

TEST_CASE("exact mode bypasses the modular path") {
    RankEngine eng(5, true);
    auto m = SparseMatrix::fromDense({{ratOf(2), ratOf(4)}, {ratOf(1), ratOf(2)}});
    CHECK(eng.rank(m) == 1);
    CHECK(eng.primesUsed().empty());
    CHECK(eng.exactMode());
}

TEST_CASE("matrix algebra helpers") {
    auto a = SparseMatrix::fromDense({{ratOf(1), ratOf(2)}, {ratOf(3), ratOf(4)}});
    auto b = SparseMatrix::fromDense({{ratOf(0), ratOf(1)}, {ratOf(1), ratOf(0)}});
    auto ab = a.multiply(b);
    CHECK(ab.equals(SparseMatrix::fromDense({{ratOf(2), ratOf(1)}, {ratOf(4), ratOf(3)}})));
    CHECK(a.plus(a.scaled(ratOf(-1))).isZero());
    auto v = a.apply({ratOf(1), ratOf(1, 2)});
    CHECK(v[0] == 2);
    CHECK(v[1] == 5);
}

TEST_CASE("graded complex homology and euler characteristic") {
    GradedComplex c;
    c.basis[0] = {"a", "b"};
    c.basis[1] = {"c"};
    SparseMatrix d0(1, 2);
    d0.add(0, 0, ratOf(1));
    d0.add(0, 1, ratOf(1));
    c.blocks[0] = d0;
    c.checkShapes();
    CHECK(c.squareZero());

    RankEngine eng(2);
    auto h = c.homology(eng);
    REQUIRE(h.size() == 1);
    CHECK(h[0] == 1);
    CHECK(c.eulerFromDims() == 1);
    CHECK(GradedComplex::eulerFromHomology(h) == 1);
}

TEST_CASE("square-zero detection catches a bad complex") {
    GradedComplex c;
    c.basis[0] = {"a"};
    c.basis[1] = {"b"};
    c.basis[2] = {"c"};
    SparseMatrix d0(1, 1), d1(1, 1);
    d0.add(0, 0, ratOf(1));
    d1.add(0, 0, ratOf(1));
    c.blocks[0] = d0;
    c.blocks[1] = d1;
    c.checkShapes();
    CHECK_FALSE(c.squareZero());
}

TEST_CASE("euler characteristic from dims matches homology on random two-step complexes") {
    std::mt19937_64 rng(7);
    RankEngine eng(13);
    for (int trial = 0; trial < 4; ++trial) {
        int n0 = 3 + (int)(rng() % 10), n1 = 3 + (int)(rng() % 10);
        GradedComplex c;
        for (int i = 0; i < n0; ++i) c.basis[0].push_back("x" + std::to_string(i));
        for (int i = 0; i < n1; ++i) c.basis[1].push_back("y" + std::to_string(i));
        c.blocks[0] = randomMatrix(rng, n1, n0, 0.3, false);
        auto h = c.homology(eng);
        CHECK(GradedComplex::eulerFromHomology(h) == c.eulerFromDims());
    }
}
