#include "hgc/hairy_enumerate.hpp"
#include <algorithm>
#include <set>
#ifdef _OPENMP
#include <omp.h>
#endif

namespace hgc {

HairyGraph canonicalForm(const HairyGraph& g) {
    return canonicalize(g, 0, 0).canonical;
}

namespace {

// non-increasing internal degree sequences with fixed sum and deficiency cap
void degreeSequences(int v, int remaining, int maxPart, int minPart, int deficitBudget,
                     std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (v == 0) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    for (int d = std::min(maxPart, remaining - minPart * (v - 1)); d >= minPart; --d) {
        int deficit = std::max(0, 3 - d);
        if (deficit > deficitBudget) break; // d decreasing, deficit only grows
        cur.push_back(d);
        degreeSequences(v - 1, remaining - d, d, minPart, deficitBudget - deficit, cur, out);
        cur.pop_back();
    }
}

// realize a degree sequence: repeatedly allocate all stubs of the smallest
// open vertex to loops and to later vertices; emits each labeled multigraph once
struct StubFiller {
    int v;
    bool allowLoops, allowParallel;
    std::vector<int> stubs;
    std::vector<std::pair<int, int>> edges;
    std::vector<HairyGraph>* sink;

    void emit() {
        HairyGraph g;
        g.v = v;
        g.edges = edges;
        g.normalize();
        if (g.connectedInternally()) sink->push_back(g);
    }

    void allocate(int u, int j, int left) {
        if (left == 0) {
            fill(u + 1);
            return;
        }
        if (j >= v) return;
        int cap = std::min(left, stubs[j]);
        if (!allowParallel) cap = std::min(cap, 1);
        for (int take = cap; take >= 0; --take) {
            stubs[j] -= take;
            for (int k = 0; k < take; ++k) edges.push_back({u, j});
            allocate(u, j + 1, left - take);
            for (int k = 0; k < take; ++k) edges.pop_back();
            stubs[j] += take;
        }
    }

    void fill(int u) {
        while (u < v && stubs[u] == 0) ++u;
        if (u == v) {
            emit();
            return;
        }
        int maxLoops = allowLoops ? stubs[u] / 2 : 0;
        if (allowLoops && !allowParallel) maxLoops = std::min(maxLoops, 1);
        for (int a = 0; a <= maxLoops; ++a) {
            for (int k = 0; k < a; ++k) edges.push_back({u, u});
            int left = stubs[u] - 2 * a;
            int save = stubs[u];
            stubs[u] = 0;
            allocate(u, u + 1, left);
            stubs[u] = save;
            for (int k = 0; k < a; ++k) edges.pop_back();
        }
    }
};

} // namespace

std::vector<HairyGraph> enumerateBareGraphs(int v, int e, bool allowLoops, bool allowParallel,
                                            int maxDeficiency) {
    std::vector<HairyGraph> out;
    if (v <= 0 || e < 0) return out;
    if (v == 1) {
        if (e == 0) {
            HairyGraph g;
            g.v = 1;
            out.push_back(g);
        } else if (allowLoops && (allowParallel || e == 1)) {
            HairyGraph g;
            g.v = 1;
            for (int k = 0; k < e; ++k) g.edges.push_back({0, 0});
            g.normalize();
            out.push_back(g);
        }
        return out;
    }
    if (e < v - 1) return out; // cannot connect
    std::vector<std::vector<int>> seqs;
    std::vector<int> cur;
    degreeSequences(v, 2 * e, 2 * e, 1, maxDeficiency, cur, seqs);

    std::set<HairyGraph> classes;
    for (auto& d : seqs) {
        std::vector<HairyGraph> raw;
        StubFiller f{v, allowLoops, allowParallel, d, {}, &raw};
        f.fill(0);
        for (auto& g : raw) classes.insert(canonicalForm(g));
    }
    out.assign(classes.begin(), classes.end());
    return out;
}

namespace {

void hairCompositions(const HairyGraph& bare, int h, int maxPerVertex,
                      std::vector<int>& minAt, int idx, int left, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
    if (idx == bare.v) {
        if (left == 0) out.push_back(cur);
        return;
    }
    int rest = 0;
    for (int j = idx + 1; j < bare.v; ++j) rest += minAt[j];
    for (int c = minAt[idx]; c <= left - rest && c <= maxPerVertex; ++c) {
        cur.push_back(c);
        hairCompositions(bare, h, maxPerVertex, minAt, idx + 1, left - c, cur, out);
        cur.pop_back();
    }
}

std::vector<HairyGraph> lineCase(int r, int h, int m, int n) {
    std::vector<HairyGraph> out;
    if (r == 0 && h == 2 && ((m + n) % 2 + 2) % 2 == 0) out.push_back(HairyGraph{});
    return out;
}

} // namespace

std::vector<HairyGraph> enumerateHairy(int r, int h, int v, int m, int n, ExecMode mode) {
    if (v == 0) return lineCase(r, h, m, n);
    std::vector<HairyGraph> out;
    if (r < 0 || h < 1 || v > 2 * (r - 1) + h) return out;
    int e = v + r - 1;
    if (e < 0) return out;

    auto par = orientationParities(m, n);
    bool allowLoops = par.flip == 0;        // n odd kills loops
    bool allowParallel = par.edge == 0;     // n even kills parallel edges
    int maxPerVertex = par.hair ? 1 : h;    // same-parity m,n kills double hairs

    auto bare = enumerateBareGraphs(v, e, allowLoops, allowParallel, h);

    std::vector<std::vector<HairyGraph>> buckets(bare.size());
    auto work = [&](int i) {
        const auto& b = bare[i];
        std::vector<int> minAt(b.v);
        for (int w = 0; w < b.v; ++w) minAt[w] = std::max(0, 3 - b.valence(w));
        std::vector<int> cur;
        std::vector<std::vector<int>> comps;
        hairCompositions(b, h, maxPerVertex, minAt, 0, h, cur, comps);
        for (auto& c : comps) {
            HairyGraph g = b;
            for (int w = 0; w < b.v; ++w)
                for (int k = 0; k < c[w]; ++k) g.hairs.push_back(w);
            auto canon = canonicalize(g, m, n);
            if (!canon.zero) buckets[i].push_back(canon.canonical);
        }
    };

    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < (int)bare.size(); ++i) work(i);
    } else {
        for (int i = 0; i < (int)bare.size(); ++i) work(i);
    }

    std::set<HairyGraph> classes;
    for (auto& b : buckets)
        for (auto& g : b) classes.insert(g);
    out.assign(classes.begin(), classes.end());
    return out;
}

std::vector<HairyGraph> enumerateHairyBrute(int r, int h, int v, int m, int n) {
    if (v == 0) return lineCase(r, h, m, n);
    std::vector<HairyGraph> out;
    if (v < 1 || h < 1) return out;
    int e = v + r - 1;
    if (e < 0) return out;

    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < v; ++a)
        for (int b = a; b < v; ++b) pairs.push_back({a, b});

    std::set<HairyGraph> classes;
    std::vector<int> pick;
    // multisets of e edges over all vertex pairs
    auto rec = [&](auto&& self, int start, int left) -> void {
        if (left == 0) {
            std::vector<int> hpick;
            auto hrec = [&](auto&& hself, int hstart, int hleft) -> void {
                if (hleft == 0) {
                    HairyGraph g;
                    g.v = v;
                    for (int i : pick) g.edges.push_back(pairs[i]);
                    g.hairs = hpick;
                    g.normalize();
                    if (!g.validate()) return;
                    auto canon = canonicalize(g, m, n);
                    if (!canon.zero) classes.insert(canon.canonical);
                    return;
                }
                for (int w = hstart; w < v; ++w) {
                    hpick.push_back(w);
                    hself(hself, w, hleft - 1);
                    hpick.pop_back();
                }
            };
            hrec(hrec, 0, h);
            return;
        }
        for (int i = start; i < (int)pairs.size(); ++i) {
            pick.push_back(i);
            self(self, i, left - 1);
            pick.pop_back();
        }
    };
    rec(rec, 0, e);
    out.assign(classes.begin(), classes.end());
    return out;
}

} // namespace hgc
