#include "hgc/hp.hpp"
#include <algorithm>
#include <functional>
#include <mutex>
#include <stdexcept>

namespace hgc {

namespace {

int powSign(long long exponent) { return exponent % 2 ? -1 : 1; }

std::vector<HpGen> enumerateGens(const HairyGraph& g, int h) {
    int V = g.v, E = (int)g.edges.size();
    std::vector<HpGen> out;
    HpGen cur;
    cur.s.assign(V, 0);
    cur.t.assign(E, 0);
    std::function<void(int, int)> recE = [&](int e, int rem) {
        if (e == E) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        for (int te = 0; te <= rem; ++te) {
            cur.t[e] = te;
            recE(e + 1, rem - te);
        }
        cur.t[e] = 0;
    };
    std::function<void(int, int)> recV = [&](int v, int rem) {
        if (v == V) {
            recE(0, rem);
            return;
        }
        recV(v + 1, rem);
        if (rem > 0) {
            cur.s[v] = 1;
            recV(v + 1, rem - 1);
            cur.s[v] = 0;
        }
    };
    recV(0, h);
    std::sort(out.begin(), out.end(), [](const HpGen& a, const HpGen& b) {
        int ja = 0, jb = 0;
        for (char c : a.s) ja += c;
        for (char c : b.s) jb += c;
        if (ja != jb) return ja < jb;
        return a < b;
    });
    return out;
}

// faces of one generator: move an extreme tuple hair onto its undecorated
// endpoint; tail face +1, head face (-1)^t, both twisted by the Koszul prefix
// over earlier tuples when the letters are odd
void faces(const HairyGraph& g, bool dOdd, const HpGen& gen,
           const std::function<void(const HpGen&, int)>& emit) {
    int E = (int)g.edges.size();
    int prefix = 0;
    for (int e = 0; e < E; ++e) {
        int te = gen.t[e];
        if (te == 0) continue;
        auto [a, b] = g.edges[e];
        if (dOdd) {
            int ge = powSign(prefix);
            if (a == b) {
                if (gen.s[a] == 0 && te % 2 == 0) {
                    HpGen out = gen;
                    out.s[a] = 1;
                    --out.t[e];
                    emit(out, 2 * ge);
                }
            } else {
                if (gen.s[a] == 0) {
                    HpGen out = gen;
                    out.s[a] = 1;
                    --out.t[e];
                    emit(out, ge);
                }
                if (gen.s[b] == 0) {
                    HpGen out = gen;
                    out.s[b] = 1;
                    --out.t[e];
                    emit(out, ge * powSign(te));
                }
            }
            prefix += te;
        } else if (a != b) {
            auto xSign = [&](int v) {
                int k = 0;
                for (int u = 0; u < v; ++u) k += gen.s[u];
                return powSign(k);
            };
            if (gen.s[a] == 0) {
                HpGen out = gen;
                out.s[a] = 1;
                --out.t[e];
                emit(out, -xSign(a));
            }
            if (gen.s[b] == 0) {
                HpGen out = gen;
                out.s[b] = 1;
                --out.t[e];
                emit(out, xSign(b));
            }
        }
    }
}

DenseMatrix transport(const HairyGraph& src, const HpValue& hs, const HpValue& hd,
                      const std::vector<int>& vertexMap, const std::vector<int>& edgeMap,
                      const std::vector<bool>& flip, int dstV, int dstE, bool dOdd,
                      int kill) {
    int E = (int)src.edges.size();
    DenseMatrix m = denseZero((int)hd.basis.size(), (int)hs.basis.size());
    for (int col = 0; col < (int)hs.basis.size(); ++col) {
        const HpGen& gen = hs.basis[col];
        if (kill >= 0 && gen.t[kill] > 0) continue;

        HpGen out;
        out.s.assign(dstV, 0);
        out.t.assign(dstE, 0);
        bool dead = false;
        for (int v = 0; v < src.v && !dead; ++v)
            if (gen.s[v] && ++out.s[vertexMap[v]] > 1) dead = true;
        if (dead) continue;
        for (int e = 0; e < E; ++e)
            if (e != kill) out.t[edgeMap[e]] = gen.t[e];

        long long exp = 0;
        if (dOdd) {
            for (int i = 0; i < E; ++i) {
                if (i == kill) continue;
                for (int j = i + 1; j < E; ++j) {
                    if (j == kill) continue;
                    if (edgeMap[i] > edgeMap[j]) exp += (long long)gen.t[i] * gen.t[j];
                }
            }
            for (int e = 0; e < E; ++e)
                if (e != kill && flip[e]) exp += (long long)gen.t[e] * (gen.t[e] + 1) / 2;
        } else {
            for (int e = 0; e < E; ++e)
                if (e != kill && flip[e]) exp += gen.t[e];
            std::vector<int> seq;
            for (int v = 0; v < src.v; ++v)
                if (gen.s[v]) seq.push_back(vertexMap[v]);
            for (std::size_t i = 0; i < seq.size(); ++i)
                for (std::size_t j = i + 1; j < seq.size(); ++j)
                    if (seq[j] < seq[i]) ++exp;
        }
        m[hd.index.at(out)][col] = powSign(exp);
    }
    return m;
}

DenseMatrix block(const DenseMatrix& m, const std::vector<int>& rows,
                  const std::vector<int>& cols) {
    DenseMatrix out = denseZero((int)rows.size(), (int)cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out[i][j] = m[rows[i]][cols[j]];
    return out;
}

DenseMatrix identityMatrix(int n) {
    DenseMatrix m = denseZero(n, n);
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

template <class V>
class MemoMap {
  public:
    template <class F>
    std::shared_ptr<const V> get(const std::string& key, F&& make) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        auto value = std::make_shared<const V>(make());
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = map_.emplace(key, std::move(value));
        return it->second; // first insertion wins
    }

  private:
    mutable std::mutex mu_;
    mutable std::map<std::string, std::shared_ptr<const V>> map_;
};

class ChSystem final : public LocalSystem {
  public:
    ChSystem(bool dOdd, int h) : dOdd_(dOdd), h_(h) {}
    std::string name() const override {
        return std::string("CH<") + (dOdd_ ? "odd," : "even,") + std::to_string(h_) + ">";
    }
    int dim(const HairyGraph& g) const override { return (int)value(g)->basis.size(); }
    std::vector<int> degrees(const HairyGraph& g) const override { return value(g)->jDeg; }
    DenseMatrix onIso(const HairyGraph& src, const CoreIso& iso,
                      const HairyGraph& dst) const override {
        return transport(src, *value(src), *value(dst), iso.vertexMap, iso.edgeMap, iso.flip,
                         dst.v, (int)dst.edges.size(), dOdd_, -1);
    }
    DenseMatrix onContract(const HairyGraph& src, const CoreContraction& c) const override {
        return transport(src, *value(src), *value(c.target), c.vertexMap, c.edgeMap, c.flip,
                         c.target.v, (int)c.target.edges.size(), dOdd_, c.edge);
    }
    DenseMatrix internalDiff(const HairyGraph& g) const override { return value(g)->diff; }
    bool isDg() const override { return true; }

    std::shared_ptr<const HpValue> value(const HairyGraph& g) const {
        return memo_.get(g.serialize(),
                         [&] { return hpComplex(g, dOdd_, h_); });
    }

  private:
    bool dOdd_;
    int h_;
    MemoMap<HpValue> memo_;
};

// kernel at the bottom degree and homology one above it, with bases chosen so
// induced maps are exactly solvable
struct BData {
    HpValue hp;
    std::vector<int> j0, j1;
    DenseMatrix k0;     // bottom kernel basis
    DenseMatrix basis1; // image basis columns then representative columns
    int rank0 = 0, q1 = 0;
};

BData makeBData(const HairyGraph& g, int h) {
    BData b;
    b.hp = hpComplex(g, true, h);
    int maxJ = (int)b.hp.byJ.size() - 1;
    b.j0 = b.hp.byJ.empty() ? std::vector<int>{} : b.hp.byJ[0];
    b.j1 = maxJ >= 1 ? b.hp.byJ[1] : std::vector<int>{};
    auto j2 = maxJ >= 2 ? b.hp.byJ[2] : std::vector<int>{};

    if (b.j1.empty()) {
        b.k0 = identityMatrix((int)b.j0.size());
    } else {
        b.k0 = kernelBasis(block(b.hp.diff, b.j1, b.j0));
    }

    DenseMatrix d0 = block(b.hp.diff, b.j1, b.j0);
    DenseMatrix im0 = imageBasis(d0);
    b.rank0 = denseCols(im0);
    DenseMatrix k1 = j2.empty() ? identityMatrix((int)b.j1.size())
                                : kernelBasis(block(b.hp.diff, j2, b.j1));

    DenseMatrix m = denseZero((int)b.j1.size(), b.rank0 + denseCols(k1));
    for (int i = 0; i < (int)b.j1.size(); ++i) {
        for (int j = 0; j < b.rank0; ++j) m[i][j] = im0[i][j];
        for (int j = 0; j < denseCols(k1); ++j) m[i][b.rank0 + j] = k1[i][j];
    }
    DenseMatrix work = m;
    auto pivots = rref(work);
    b.basis1 = denseZero((int)b.j1.size(), (int)pivots.size());
    for (int j = 0; j < (int)pivots.size(); ++j)
        for (int i = 0; i < (int)b.j1.size(); ++i) b.basis1[i][j] = m[i][pivots[j]];
    b.q1 = (int)pivots.size() - b.rank0;

    // the decoration complex must have homology only in the two bottom
    // degrees; flag any counterexample instead of silently assuming it
    for (int j = 2; j <= maxJ; ++j) {
        auto rows = j + 1 <= maxJ ? b.hp.byJ[j + 1] : std::vector<int>{};
        auto& cols = b.hp.byJ[j];
        int rankUp = rows.empty() ? 0 : denseRank(block(b.hp.diff, rows, cols));
        int ranksDown = denseRank(block(b.hp.diff, cols, b.hp.byJ[j - 1]));
        int hDim = (int)cols.size() - rankUp - ranksDown;
        if (hDim != 0)
            throw std::logic_error("decoration homology spreads beyond two degrees on " +
                                   g.serialize());
    }
    return b;
}

class BCache {
  public:
    explicit BCache(int h) : h_(h) {}
    std::shared_ptr<const BData> get(const HairyGraph& g) const {
        return memo_.get(g.serialize(), [&] { return makeBData(g, h_); });
    }
    int h() const { return h_; }

  private:
    int h_;
    MemoMap<BData> memo_;
};

DenseMatrix repColumns(const BData& b) {
    DenseMatrix reps = denseZero(denseRows(b.basis1), b.q1);
    for (int j = 0; j < b.q1; ++j)
        for (int i = 0; i < denseRows(b.basis1); ++i) reps[i][j] = b.basis1[i][b.rank0 + j];
    return reps;
}

class BottomSystem final : public LocalSystem {
  public:
    BottomSystem(std::shared_ptr<BCache> cache) : cache_(std::move(cache)) {}
    std::string name() const override { return "B" + std::to_string(cache_->h()); }
    int dim(const HairyGraph& g) const override { return denseCols(cache_->get(g)->k0); }
    DenseMatrix onIso(const HairyGraph& src, const CoreIso& iso,
                      const HairyGraph& dst) const override {
        auto bs = cache_->get(src), bd = cache_->get(dst);
        auto m = transport(src, bs->hp, bd->hp, iso.vertexMap, iso.edgeMap, iso.flip, dst.v,
                           (int)dst.edges.size(), true, -1);
        return induced(*bs, *bd, m);
    }
    DenseMatrix onContract(const HairyGraph& src, const CoreContraction& c) const override {
        auto bs = cache_->get(src), bd = cache_->get(c.target);
        auto m = transport(src, bs->hp, bd->hp, c.vertexMap, c.edgeMap, c.flip, c.target.v,
                           (int)c.target.edges.size(), true, c.edge);
        return induced(*bs, *bd, m);
    }

  private:
    static DenseMatrix induced(const BData& bs, const BData& bd, const DenseMatrix& m) {
        auto m00 = block(m, bd.j0, bs.j0);
        return solveExact(bd.k0, denseMul(m00, bs.k0));
    }
    std::shared_ptr<BCache> cache_;
};

class MiddleSystem final : public LocalSystem {
  public:
    MiddleSystem(std::shared_ptr<BCache> cache) : cache_(std::move(cache)) {}
    std::string name() const override { return "L1B" + std::to_string(cache_->h()); }
    int dim(const HairyGraph& g) const override { return cache_->get(g)->q1; }
    DenseMatrix onIso(const HairyGraph& src, const CoreIso& iso,
                      const HairyGraph& dst) const override {
        auto bs = cache_->get(src), bd = cache_->get(dst);
        auto m = transport(src, bs->hp, bd->hp, iso.vertexMap, iso.edgeMap, iso.flip, dst.v,
                           (int)dst.edges.size(), true, -1);
        return induced(*bs, *bd, m);
    }
    DenseMatrix onContract(const HairyGraph& src, const CoreContraction& c) const override {
        auto bs = cache_->get(src), bd = cache_->get(c.target);
        auto m = transport(src, bs->hp, bd->hp, c.vertexMap, c.edgeMap, c.flip, c.target.v,
                           (int)c.target.edges.size(), true, c.edge);
        return induced(*bs, *bd, m);
    }

  private:
    static DenseMatrix induced(const BData& bs, const BData& bd, const DenseMatrix& m) {
        if (bs.q1 == 0 || bd.q1 == 0) return denseZero(bd.q1, bs.q1);
        auto m11 = block(m, bd.j1, bs.j1);
        auto coords = solveExact(bd.basis1, denseMul(m11, repColumns(bs)));
        DenseMatrix out = denseZero(bd.q1, bs.q1);
        for (int i = 0; i < bd.q1; ++i)
            for (int j = 0; j < bs.q1; ++j) out[i][j] = coords[bd.rank0 + i][j];
        return out;
    }
    std::shared_ptr<BCache> cache_;
};

} // namespace

HpValue hpComplex(const HairyGraph& g, bool dOdd, int h) {
    if (h < 0) throw std::invalid_argument("negative decoration weight");
    HpValue val;
    val.basis = enumerateGens(g, h);
    int n = (int)val.basis.size();
    val.jDeg.resize(n);
    int maxJ = 0;
    for (int i = 0; i < n; ++i) {
        int j = 0;
        for (char c : val.basis[i].s) j += c;
        val.jDeg[i] = j;
        maxJ = std::max(maxJ, j);
        val.index[val.basis[i]] = i;
    }
    val.byJ.assign(maxJ + 1, {});
    for (int i = 0; i < n; ++i) val.byJ[val.jDeg[i]].push_back(i);

    val.diff = denseZero(n, n);
    for (int col = 0; col < n; ++col)
        faces(g, dOdd, val.basis[col], [&](const HpGen& out, int coeff) {
            val.diff[val.index.at(out)][col] += coeff;
        });
    return val;
}

DenseMatrix hpIsoMatrix(const HairyGraph& src, const CoreIso& iso, const HairyGraph& dst,
                        bool dOdd, int h) {
    auto hs = hpComplex(src, dOdd, h), hd = hpComplex(dst, dOdd, h);
    return transport(src, hs, hd, iso.vertexMap, iso.edgeMap, iso.flip, dst.v,
                     (int)dst.edges.size(), dOdd, -1);
}

DenseMatrix hpContractMatrix(const HairyGraph& src, const CoreContraction& c, bool dOdd,
                             int h) {
    auto hs = hpComplex(src, dOdd, h), hd = hpComplex(c.target, dOdd, h);
    return transport(src, hs, hd, c.vertexMap, c.edgeMap, c.flip, c.target.v,
                     (int)c.target.edges.size(), dOdd, c.edge);
}

SystemPtr chSystem(bool dOdd, int h) { return std::make_shared<ChSystem>(dOdd, h); }

std::pair<SystemPtr, SystemPtr> bTypeSystems(int r, int h) {
    if (h < 0) throw std::invalid_argument("negative decoration weight");
    (void)r; // the systems evaluate any core graph; the rank is fixed by use
    auto cache = std::make_shared<BCache>(h);
    return {std::make_shared<BottomSystem>(cache), std::make_shared<MiddleSystem>(cache)};
}

DeRhamData deRham(int r, int h) {
    if (r < 1 || h < 0) throw std::invalid_argument("bad de Rham parameters");
    DeRhamData out;
    out.r = r;
    out.h = h;

    auto weightMonomials = [&](int w) {
        std::vector<std::pair<unsigned, std::vector<int>>> list;
        if (w < 0) return list;
        std::vector<int> a(r, 0);
        std::function<void(int, int, unsigned)> rec = [&](int j, int rem, unsigned eps) {
            if (j == r) {
                if (rem == 0) list.push_back({eps, a});
                return;
            }
            for (int aj = 0; 2 * aj <= rem; ++aj) {
                a[j] = aj;
                rec(j + 1, rem - 2 * aj, eps);
                if (rem - 2 * aj >= 1) rec(j + 1, rem - 2 * aj - 1, eps | (1u << j));
            }
            a[j] = 0;
        };
        rec(0, w, 0);
        std::sort(list.begin(), list.end());
        return list;
    };

    out.source = weightMonomials(h);
    out.target = weightMonomials(h - 1);
    std::map<std::pair<unsigned, std::vector<int>>, int> index;
    for (int i = 0; i < (int)out.target.size(); ++i) index[out.target[i]] = i;

    out.d = denseZero((int)out.target.size(), (int)out.source.size());
    for (int col = 0; col < (int)out.source.size(); ++col) {
        auto [eps, a] = out.source[col];
        for (int j = 0; j < r; ++j) {
            if (a[j] == 0 || (eps >> j & 1)) continue;
            auto a2 = a;
            --a2[j];
            int before = 0;
            for (int i = 0; i < j; ++i) before += eps >> i & 1;
            out.d[index.at({eps | (1u << j), a2})][col] = Rat(a[j] * powSign(before));
        }
    }
    int rank = denseRank(out.d);
    out.kerDim = (int)out.source.size() - rank;
    out.cokerDim = (int)out.target.size() - rank;
    return out;
}

} // namespace hgc
