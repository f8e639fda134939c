#include "hgc/hairy_complex.hpp"
#include <algorithm>
#include <stdexcept>
#ifdef _OPENMP
#include <omp.h>
#endif

namespace hgc {

void addTo(Chain& c, const HairyGraph& g, const Rat& coeff) {
    auto it = c.find(g);
    if (it == c.end()) {
        if (coeff != 0) c.emplace(g, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0) c.erase(it);
}

namespace {

struct Slot {
    int kind; // 0 = edge endpoint, 1 = hair
    int idx;  // edge or hair index
    int side; // for edges: 0 = tail (lo), 1 = head (hi)
};

} // namespace

Chain expandVertexSum(const HairyGraph& g, int w, int m, int n) {
    Chain out;
    if (g.isLine()) return out;
    auto par = orientationParities(m, n);
    int E = (int)g.edges.size(), H = (int)g.hairs.size(), v = g.v, vNew = g.v;

    std::vector<Slot> slots;
    for (int i = 0; i < E; ++i) {
        auto [a, b] = g.edges[i];
        if (a == w) slots.push_back({0, i, 0});
        if (b == w) slots.push_back({0, i, 1});
    }
    for (int k = 0; k < H; ++k)
        if (g.hairs[k] == w) slots.push_back({1, k, 0});

    int total = (int)slots.size();
    if (total < 4) return out;
    if (total > 30) throw std::logic_error("vertex valence too large to expand");

    for (unsigned mask = 0; mask < (1u << total); ++mask) {
        int pop = __builtin_popcount(mask);
        if (pop < 2 || total - pop < 2) continue;

        // moved side flags per edge: bit 0 = tail side moved, bit 1 = head side
        std::vector<int> moved(E, 0);
        std::vector<bool> hairMoved(H, false);
        for (int s = 0; s < total; ++s) {
            if (!(mask >> s & 1)) continue;
            if (slots[s].kind == 0) moved[slots[s].idx] |= 1 << slots[s].side;
            else hairMoved[slots[s].idx] = true;
        }

        HairyGraph res;
        res.v = v + 1;
        int flips = 0;
        std::vector<std::pair<int, int>> srcEdges; // source order: new edge first
        srcEdges.push_back({w, vNew});
        for (int i = 0; i < E; ++i) {
            auto [a, b] = g.edges[i];
            std::pair<int, int> p;
            if (a == b && a == w) {
                switch (moved[i]) {
                    case 0: p = {w, w}; break;
                    case 3: p = {vNew, vNew}; break;
                    case 1: p = {w, vNew}; flips ^= 1; break; // tail moved: vNew -> w
                    default: p = {w, vNew}; break;            // head moved: w -> vNew
                }
            } else if (a == w && (moved[i] & 1)) {
                p = {b, vNew};
                flips ^= 1; // vNew -> b against lo->hi storage
            } else if (b == w && (moved[i] & 2)) {
                p = {a, vNew};
            } else {
                p = {a, b};
            }
            srcEdges.push_back(p);
        }
        std::vector<int> srcHairs;
        for (int k = 0; k < H; ++k) srcHairs.push_back(hairMoved[k] ? vNew : g.hairs[k]);

        // stable ranks of edges and hairs in their sorted storage order
        auto ranksOf = [](const auto& xs) {
            std::vector<int> order(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i) order[i] = (int)i;
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return xs[a] < xs[b]; });
            std::vector<int> rank(xs.size());
            for (std::size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = (int)pos;
            return rank;
        };
        auto eRank = ranksOf(srcEdges);
        auto hRank = ranksOf(srcHairs);

        // datum: [new vertex, new edge, old edges, vertices 0..v-1, hairs]
        std::vector<std::pair<int, int>> items;
        int vBase = E + 1, hBase = vBase + v + 1;
        items.push_back({par.vertex, vBase + vNew});
        items.push_back({par.edge, eRank[0]});
        for (int i = 0; i < E; ++i) items.push_back({par.edge, eRank[i + 1]});
        for (int j = 0; j < v; ++j) items.push_back({par.vertex, vBase + j});
        for (int k = 0; k < H; ++k) items.push_back({par.hair, hBase + hRank[k]});

        int sign = koszulSignByTarget(items);
        if (par.flip && flips) sign = -sign;

        res.edges.assign(srcEdges.begin(), srcEdges.end());
        res.hairs = srcHairs;
        res.normalize();
        auto canon = canonicalize(res, m, n);
        if (canon.zero) continue;
        addTo(out, canon.canonical, Rat(sign * canon.sign));
    }
    return out;
}

Chain differentialOf(const HairyGraph& g, int m, int n) {
    Chain out;
    if (g.isLine()) return out;
    for (int w = 0; w < g.v; ++w)
        for (auto& [target, coeff] : expandVertexSum(g, w, m, n)) addTo(out, target, coeff);
    return out;
}

int sliceDegree(int m, int n, int r, int h, int v) {
    return m * (h - 1) + v + (1 - n) * (r - 1 + h);
}

GradedComplex assembleHairy(int m, int n, int r, int h, ExecMode mode) {
    GradedComplex comp;
    std::map<int, std::vector<HairyGraph>> slices; // by vertex count
    if (r == 0 && h == 2) {
        auto line = enumerateHairy(0, 2, 0, m, n);
        if (!line.empty()) slices[0] = line;
    }
    int vmax = 2 * (r - 1) + h;
    for (int v = 1; v <= vmax; ++v) {
        auto gen = enumerateHairy(r, h, v, m, n, mode);
        if (!gen.empty()) slices[v] = std::move(gen);
    }
    for (auto& [v, gen] : slices) {
        auto& names = comp.basis[sliceDegree(m, n, r, h, v)];
        for (auto& g : gen) names.push_back(g.serialize());
    }
    for (auto& [v, gen] : slices) {
        int deg = sliceDegree(m, n, r, h, v);
        auto next = slices.find(v + 1);
        int dimNext = next == slices.end() ? 0 : (int)next->second.size();
        SparseMatrix block(dimNext, (int)gen.size());
        std::vector<Triplet> trips;

        auto column = [&](int j, std::vector<Triplet>& sink) {
            for (auto& [target, coeff] : differentialOf(gen[j], m, n)) {
                if (next == slices.end())
                    throw std::logic_error("differential escapes the enumerated basis");
                auto it = std::lower_bound(next->second.begin(), next->second.end(), target);
                if (it == next->second.end() || !(*it == target))
                    throw std::logic_error("differential escapes the enumerated basis");
                sink.push_back({(int)(it - next->second.begin()), j, coeff});
            }
        };

        if (mode == ExecMode::Parallel) {
            std::vector<std::vector<Triplet>> parts((std::size_t)gen.size());
#pragma omp parallel for schedule(dynamic)
            for (int j = 0; j < (int)gen.size(); ++j) column(j, parts[j]);
            for (auto& p : parts) trips.insert(trips.end(), p.begin(), p.end());
        } else {
            for (int j = 0; j < (int)gen.size(); ++j) column(j, trips);
        }
        for (auto& t : trips) block.add(t.row, t.col, t.val);
        comp.blocks[deg] = std::move(block);
    }
    comp.checkShapes();
    return comp;
}

} // namespace hgc
