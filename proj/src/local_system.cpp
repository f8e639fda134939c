#include "hgc/local_system.hpp"
#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace hgc {

namespace {

// signed permutation matrix on edge space induced by an iso or contraction;
// killSlot < 0 keeps every edge
DenseMatrix edgeSpaceMap(int srcEdges, int dstEdges, const std::vector<int>& edgeMap,
                         const std::vector<bool>& flip, int killSlot) {
    DenseMatrix m = denseZero(dstEdges, srcEdges);
    for (int i = 0; i < srcEdges; ++i) {
        if (i == killSlot) continue;
        m[edgeMap[i]][i] = flip[i] ? -1 : 1;
    }
    return m;
}

class TrivialSystem final : public LocalSystem {
  public:
    std::string name() const override { return "K"; }
    int dim(const HairyGraph&) const override { return 1; }
    DenseMatrix onIso(const HairyGraph&, const CoreIso&, const HairyGraph&) const override {
        return {{Rat(1)}};
    }
    DenseMatrix onContract(const HairyGraph&, const CoreContraction&) const override {
        return {{Rat(1)}};
    }
};

class CellularSystem final : public LocalSystem {
  public:
    std::string name() const override { return "C"; }
    int dim(const HairyGraph& g) const override { return (int)g.edges.size() + g.v; }
    std::vector<int> degrees(const HairyGraph& g) const override {
        std::vector<int> d((int)g.edges.size() + g.v, 0);
        for (std::size_t i = 0; i < g.edges.size(); ++i) d[i] = -1;
        return d;
    }
    DenseMatrix onIso(const HairyGraph& src, const CoreIso& iso,
                      const HairyGraph& dst) const override {
        int se = (int)src.edges.size(), de = (int)dst.edges.size();
        DenseMatrix m = denseZero(de + dst.v, se + src.v);
        for (int i = 0; i < se; ++i) m[iso.edgeMap[i]][i] = iso.flip[i] ? -1 : 1;
        for (int a = 0; a < src.v; ++a) m[de + iso.vertexMap[a]][se + a] = 1;
        return m;
    }
    DenseMatrix onContract(const HairyGraph& src, const CoreContraction& c) const override {
        int se = (int)src.edges.size(), de = (int)c.target.edges.size();
        DenseMatrix m = denseZero(de + c.target.v, se + src.v);
        for (int i = 0; i < se; ++i) {
            if (i == c.edge) continue;
            m[c.edgeMap[i]][i] = c.flip[i] ? -1 : 1;
        }
        for (int a = 0; a < src.v; ++a) m[de + c.vertexMap[a]][se + a] = 1;
        return m;
    }
    DenseMatrix internalDiff(const HairyGraph& g) const override {
        int e = (int)g.edges.size();
        DenseMatrix m = denseZero(e + g.v, e + g.v);
        for (int i = 0; i < e; ++i) {
            m[e + g.edges[i].second][i] += 1;
            m[e + g.edges[i].first][i] -= 1;
        }
        return m;
    }
    bool isDg() const override { return true; }
};

class H1System final : public LocalSystem {
  public:
    std::string name() const override { return "H1"; }
    int dim(const HairyGraph& g) const override {
        return (int)g.edges.size() - g.v + 1;
    }
    DenseMatrix onIso(const HairyGraph& src, const CoreIso& iso,
                      const HairyGraph& dst) const override {
        auto m = edgeSpaceMap((int)src.edges.size(), (int)dst.edges.size(), iso.edgeMap,
                              iso.flip, -1);
        return induced(src, dst, m);
    }
    DenseMatrix onContract(const HairyGraph& src, const CoreContraction& c) const override {
        auto m = edgeSpaceMap((int)src.edges.size(), (int)c.target.edges.size(), c.edgeMap,
                              c.flip, c.edge);
        return induced(src, c.target, m);
    }

  private:
    static DenseMatrix induced(const HairyGraph& src, const HairyGraph& dst,
                               const DenseMatrix& edgeMapM) {
        std::vector<int> ntSrc, ntDst;
        auto csrc = cycleBasis(src, ntSrc);
        cycleBasis(dst, ntDst);
        auto img = denseMul(edgeMapM, csrc);
        // a cycle's coordinates in the fundamental basis are its entries on
        // the non-tree slots
        DenseMatrix out = denseZero((int)ntDst.size(), denseCols(img));
        for (int j = 0; j < denseCols(img); ++j)
            for (std::size_t i = 0; i < ntDst.size(); ++i) out[i][j] = img[ntDst[i]][j];
        return out;
    }
};

class DetSystem final : public LocalSystem {
  public:
    std::string name() const override { return "Det"; }
    int dim(const HairyGraph&) const override { return 1; }
    DenseMatrix onIso(const HairyGraph& src, const CoreIso& iso,
                      const HairyGraph& dst) const override {
        return {{denseDet(h1.onIso(src, iso, dst))}};
    }
    DenseMatrix onContract(const HairyGraph& src, const CoreContraction& c) const override {
        return {{denseDet(h1.onContract(src, c))}};
    }

  private:
    H1System h1;
};

// exponent vectors with given total, lexicographically decreasing first slot
void compositions(int total, int slots, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
    if (slots == 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int first = total; first >= 0; --first) {
        cur.push_back(first);
        compositions(total - first, slots - 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> monomials(int n, int k) {
    std::vector<std::vector<int>> out;
    if (n == 0) {
        if (k == 0) out.push_back({});
        return out;
    }
    std::vector<int> cur;
    compositions(k, n, cur, out);
    return out;
}

// matrix of S^k(A) in the monomial bases produced by monomials()
DenseMatrix symInduced(const DenseMatrix& a, int k) {
    int nDst = denseRows(a), nSrc = denseCols(a);
    auto srcBasis = monomials(nSrc, k);
    auto dstBasis = monomials(nDst, k);
    std::map<std::vector<int>, int> dstIndex;
    for (int i = 0; i < (int)dstBasis.size(); ++i) dstIndex[dstBasis[i]] = i;

    DenseMatrix out = denseZero((int)dstBasis.size(), (int)srcBasis.size());
    for (int j = 0; j < (int)srcBasis.size(); ++j) {
        // expand prod_t (A x_t)^{alpha_t}
        std::map<std::vector<int>, Rat> poly;
        poly[std::vector<int>(nDst, 0)] = 1;
        for (int t = 0; t < nSrc; ++t)
            for (int rep = 0; rep < srcBasis[j][t]; ++rep) {
                std::map<std::vector<int>, Rat> next;
                for (auto& [mono, coef] : poly)
                    for (int i = 0; i < nDst; ++i) {
                        if (a[i][t] == 0) continue;
                        auto m2 = mono;
                        ++m2[i];
                        next[m2] += coef * a[i][t];
                    }
                poly = std::move(next);
            }
        for (auto& [mono, coef] : poly) out[dstIndex.at(mono)][j] = coef;
    }
    return out;
}

int binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return (int)r;
}

class SymPowerSystem final : public LocalSystem {
  public:
    SymPowerSystem(SystemPtr base, int k) : base_(std::move(base)), k_(k) {}
    std::string name() const override {
        return "Sym" + std::to_string(k_) + "(" + base_->name() + ")";
    }
    int dim(const HairyGraph& g) const override {
        return binom(base_->dim(g) + k_ - 1, k_);
    }
    DenseMatrix onIso(const HairyGraph& src, const CoreIso& iso,
                      const HairyGraph& dst) const override {
        return symInduced(base_->onIso(src, iso, dst), k_);
    }
    DenseMatrix onContract(const HairyGraph& src, const CoreContraction& c) const override {
        return symInduced(base_->onContract(src, c), k_);
    }

  private:
    SystemPtr base_;
    int k_;
};

class TensorSystem final : public LocalSystem {
  public:
    TensorSystem(SystemPtr a, SystemPtr b) : a_(std::move(a)), b_(std::move(b)) {}
    std::string name() const override { return a_->name() + "*" + b_->name(); }
    int dim(const HairyGraph& g) const override { return a_->dim(g) * b_->dim(g); }
    std::vector<int> degrees(const HairyGraph& g) const override {
        auto da = a_->degrees(g), db = b_->degrees(g);
        std::vector<int> out;
        out.reserve(da.size() * db.size());
        for (int x : da)
            for (int y : db) out.push_back(x + y);
        return out;
    }
    DenseMatrix onIso(const HairyGraph& src, const CoreIso& iso,
                      const HairyGraph& dst) const override {
        return kron(a_->onIso(src, iso, dst), b_->onIso(src, iso, dst));
    }
    DenseMatrix onContract(const HairyGraph& src, const CoreContraction& c) const override {
        return kron(a_->onContract(src, c), b_->onContract(src, c));
    }
    DenseMatrix internalDiff(const HairyGraph& g) const override {
        int da = a_->dim(g), db = b_->dim(g);
        auto degA = a_->degrees(g);
        auto dA = a_->internalDiff(g), dB = b_->internalDiff(g);
        DenseMatrix out = denseZero(da * db, da * db);
        for (int i = 0; i < da; ++i)
            for (int i2 = 0; i2 < da; ++i2)
                if (dA[i2][i] != 0)
                    for (int j = 0; j < db; ++j) out[i2 * db + j][i * db + j] += dA[i2][i];
        for (int i = 0; i < da; ++i) {
            Rat sgn = degA[i] % 2 ? -1 : 1;
            for (int j = 0; j < db; ++j)
                for (int j2 = 0; j2 < db; ++j2)
                    if (dB[j2][j] != 0) out[i * db + j2][i * db + j] += sgn * dB[j2][j];
        }
        return out;
    }
    bool isDg() const override { return a_->isDg() || b_->isDg(); }

  private:
    static DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
        int ra = denseRows(a), ca = denseCols(a), rb = denseRows(b), cb = denseCols(b);
        DenseMatrix out = denseZero(ra * rb, ca * cb);
        for (int i = 0; i < ra; ++i)
            for (int j = 0; j < ca; ++j) {
                if (a[i][j] == 0) continue;
                for (int x = 0; x < rb; ++x)
                    for (int y = 0; y < cb; ++y)
                        if (b[x][y] != 0) out[i * rb + x][j * cb + y] = a[i][j] * b[x][y];
            }
        return out;
    }

    SystemPtr a_, b_;
};

} // namespace

SystemPtr trivialSystem() { return std::make_shared<TrivialSystem>(); }
SystemPtr cellularChains() { return std::make_shared<CellularSystem>(); }
SystemPtr h1System() { return std::make_shared<H1System>(); }
SystemPtr detSystem() { return std::make_shared<DetSystem>(); }
SystemPtr symPower(SystemPtr base, int k) {
    if (k < 0) throw std::invalid_argument("negative symmetric power");
    return std::make_shared<SymPowerSystem>(std::move(base), k);
}
SystemPtr tensorSystem(SystemPtr a, SystemPtr b) {
    return std::make_shared<TensorSystem>(std::move(a), std::move(b));
}
SystemPtr detTwist(SystemPtr base, int n) {
    if (((n % 2) + 2) % 2 == 0) return base;
    return tensorSystem(detSystem(), std::move(base));
}

DenseMatrix cycleBasis(const HairyGraph& g, std::vector<int>& nonTree) {
    int E = (int)g.edges.size(), V = g.v;
    std::vector<int> parent(V);
    for (int i = 0; i < V; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    std::vector<bool> inTree(E, false);
    std::vector<std::vector<std::pair<int, int>>> treeAdj(V); // (neighbor, slot)
    nonTree.clear();
    for (int i = 0; i < E; ++i) {
        auto [a, b] = g.edges[i];
        if (a != b && find(a) != find(b)) {
            parent[find(a)] = find(b);
            inTree[i] = true;
            treeAdj[a].push_back({b, i});
            treeAdj[b].push_back({a, i});
        } else {
            nonTree.push_back(i);
        }
    }

    DenseMatrix cycles = denseZero(E, (int)nonTree.size());
    for (std::size_t j = 0; j < nonTree.size(); ++j) {
        int slot = nonTree[j];
        auto [a, b] = g.edges[slot];
        cycles[slot][j] = 1;
        if (a == b) continue;
        // tree path from b back to a
        std::vector<int> prevVertex(V, -1), prevSlot(V, -1);
        std::vector<int> stack = {b};
        prevVertex[b] = b;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (auto [y, s] : treeAdj[x])
                if (prevVertex[y] < 0) {
                    prevVertex[y] = x;
                    prevSlot[y] = s;
                    stack.push_back(y);
                }
        }
        for (int x = a; x != b; x = prevVertex[x]) {
            int s = prevSlot[x];
            // the return leg traverses this slot prevVertex[x] -> x
            cycles[s][j] += g.edges[s].first == x ? -1 : 1;
        }
    }
    return cycles;
}

std::vector<Rat> sectionVector(const HairyGraph& g) {
    int r = (int)g.edges.size() - g.v + 1;
    if (r < 2) throw std::invalid_argument("section needs loop order at least 2");
    std::vector<Rat> s((std::size_t)g.v);
    for (int a = 0; a < g.v; ++a) s[a] = Rat(g.valence(a) - 2) / Rat(2 * r - 2);
    return s;
}

std::pair<DenseMatrix, DenseMatrix> splitChains(const HairyGraph& g) {
    int E = (int)g.edges.size(), V = g.v, n = E + V;
    auto s = sectionVector(g);
    DenseMatrix pII = denseZero(n, n);
    for (int a = 0; a < V; ++a)
        for (int b = 0; b < V; ++b) pII[E + a][E + b] = s[a];
    DenseMatrix pI = denseZero(n, n);
    for (int i = 0; i < n; ++i) pI[i][i] = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pI[i][j] -= pII[i][j];
    return {pI, pII};
}

} // namespace hgc
