#include "doctest.h"
#include "hgc/hairy_complex.hpp"
#include "hgc/rank.hpp"

using namespace hgc;

namespace {

HairyGraph graph(int v, std::vector<std::pair<int, int>> e, std::vector<int> h) {
    HairyGraph g;
    g.v = v;
    g.edges = std::move(e);
    g.hairs = std::move(h);
    g.normalize();
    return g;
}

HairyGraph hedgehog(int k) {
    HairyGraph g;
    g.v = k;
    for (int i = 0; i < k; ++i) {
        g.edges.push_back({i, (i + 1) % k});
        g.hairs.push_back(i);
    }
    g.normalize();
    return g;
}

} // namespace

TEST_CASE("trivalent vertices do not expand") {
    auto tripod = graph(1, {}, {0, 0, 0});
    CHECK(expandVertexSum(tripod, 0, 1, 2).empty());
    for (int k = 3; k <= 5; ++k)
        CHECK(differentialOf(hedgehog(k), 2, 2).empty());
    CHECK(differentialOf(HairyGraph{}, 2, 2).empty());
}

TEST_CASE("valence-four expansion produces the expected splittings") {
    // loop plus two hairs at a single vertex; expansion separates either the
    // whole loop or both hairs (mixed splits create a parallel pair, zero
    // for n even)
    // for n even); the two surviving splittings are isomorphic tadpoles and
    // reinforce each other
    auto src = graph(1, {{0, 0}}, {0, 0});
    REQUIRE_FALSE(canonicalize(src, 1, 2).zero);
    auto d = expandVertexSum(src, 0, 1, 2);
    REQUIRE(d.size() == 1);
    auto tadpole = canonicalize(graph(2, {{0, 0}, {0, 1}}, {1, 1}), 1, 2);
    REQUIRE_FALSE(tadpole.zero);
    REQUIRE(d.count(tadpole.canonical) == 1);
    CHECK((d[tadpole.canonical] == 2 || d[tadpole.canonical] == -2));
}

TEST_CASE("differential squares to zero across parities") {
    RankEngine eng(17);
    for (auto [m, n] : {std::pair{2, 2}, {3, 3}, {1, 2}, {2, 3}})
        for (int r = 0; r <= 3; ++r)
            for (int h = 1; h <= 3; ++h) {
                auto c = assembleHairy(m, n, r, h);
                CHECK(c.squareZero());
                auto hdims = c.homology(eng);
                CHECK(GradedComplex::eulerFromHomology(hdims) == c.eulerFromDims());
            }
}

TEST_CASE("complexes depend only on the parity of the parameters") {
    for (auto [r, h] : {std::pair{2, 2}, {1, 3}, {3, 1}}) {
        auto a = assembleHairy(2, 2, r, h);
        auto b = assembleHairy(4, 4, r, h);
        REQUIRE(a.basis.size() == b.basis.size());
        auto ita = a.basis.begin();
        auto itb = b.basis.begin();
        for (; ita != a.basis.end(); ++ita, ++itb) {
            CHECK(ita->second == itb->second);
            bool hasA = a.blocks.count(ita->first), hasB = b.blocks.count(itb->first);
            CHECK(hasA == hasB);
            if (hasA) CHECK(a.blocks.at(ita->first).equals(b.blocks.at(itb->first)));
        }
        auto c = assembleHairy(1, 2, r, h);
        auto d = assembleHairy(3, 4, r, h);
        REQUIRE(c.basis.size() == d.basis.size());
        auto itc = c.basis.begin();
        auto itd = d.basis.begin();
        for (; itc != c.basis.end(); ++itc, ++itd) CHECK(itc->second == itd->second);
    }
}

TEST_CASE("serial and parallel assembly agree") {
    for (auto [m, n] : {std::pair{2, 2}, {2, 3}}) {
        auto s = assembleHairy(m, n, 2, 2, ExecMode::Serial);
        auto p = assembleHairy(m, n, 2, 2, ExecMode::Parallel);
        REQUIRE(s.basis == p.basis);
        for (auto& [d, b] : s.blocks) CHECK(b.equals(p.blocks.at(d)));
    }
}

TEST_CASE("reference homology cells") {
    RankEngine eng(23);

    auto c1 = assembleHairy(2, 2, 3, 1);
    auto h1 = c1.homology(eng);
    REQUIRE(h1.size() == 1);
    CHECK(h1.count(1) == 1);
    CHECK(h1[1] == 1);

    auto c2 = assembleHairy(2, 2, 2, 1);
    CHECK(c2.homology(eng).empty());

    auto c3 = assembleHairy(3, 3, 2, 1);
    auto h3 = c3.homology(eng);
    REQUIRE(h3.size() == 1);
    CHECK(h3[-2] == 1);

    auto c4 = assembleHairy(2, 2, 1, 3);
    auto h4 = c4.homology(eng);
    REQUIRE(h4.size() == 1);
    CHECK(h4[4] == 1);

    auto c5 = assembleHairy(1, 2, 2, 2);
    auto h5 = c5.homology(eng);
    REQUIRE(h5.size() == 1);
    CHECK(h5[2] == 1);

    auto c6 = assembleHairy(2, 2, 0, 2);
    CHECK(c6.eulerFromDims() == -1); // one generator in odd degree m+1-n
    auto h6 = c6.homology(eng);
    REQUIRE(h6.size() == 1);
    CHECK(h6[1] == 1);
}

TEST_CASE("modular rank of an assembled block matches dense exact elimination") {
    auto c = assembleHairy(2, 2, 2, 3);
    REQUIRE_FALSE(c.blocks.empty());
    for (auto& [d, b] : c.blocks) {
        if (b.nnz() == 0) continue;
        CHECK(rankModP(b, 1073741827ull) == rankExactDense(b.dense()));
    }
}
