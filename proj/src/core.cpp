#include "hgc/core.hpp"
#include "hgc/hairy_enumerate.hpp"
#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace hgc {

namespace {

int permutationSign(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[j] < p[i]) inv ^= 1;
    return inv ? -1 : 1;
}

} // namespace

int orientationSign(const CoreIso& iso) { return permutationSign(iso.edgeMap); }

CoreIso composeIso(const CoreIso& first, const CoreIso& then) {
    CoreIso out;
    out.vertexMap.resize(first.vertexMap.size());
    for (std::size_t v = 0; v < first.vertexMap.size(); ++v)
        out.vertexMap[v] = then.vertexMap[first.vertexMap[v]];
    out.edgeMap.resize(first.edgeMap.size());
    out.flip.resize(first.edgeMap.size());
    for (std::size_t i = 0; i < first.edgeMap.size(); ++i) {
        out.edgeMap[i] = then.edgeMap[first.edgeMap[i]];
        out.flip[i] = first.flip[i] != then.flip[first.edgeMap[i]];
    }
    return out;
}

CoreContraction contractEdge(const HairyGraph& g, int edge) {
    if (edge < 0 || edge >= (int)g.edges.size()) throw std::out_of_range("edge index");
    auto [a, b] = g.edges[edge];
    if (a == b) throw std::invalid_argument("cannot contract a loop");

    CoreContraction c;
    c.edge = edge;
    c.vertexMap.resize(g.v);
    for (int v = 0; v < g.v; ++v) c.vertexMap[v] = v == b ? a : (v > b ? v - 1 : v);

    struct Slot {
        std::pair<int, int> e;
        int src;
        bool flip;
    };
    std::vector<Slot> slots;
    for (int i = 0; i < (int)g.edges.size(); ++i) {
        if (i == edge) continue;
        int x = c.vertexMap[g.edges[i].first], y = c.vertexMap[g.edges[i].second];
        bool fl = false;
        if (x > y) {
            std::swap(x, y);
            fl = true;
        }
        slots.push_back({{x, y}, i, fl});
    }
    std::stable_sort(slots.begin(), slots.end(),
                     [](const Slot& l, const Slot& r) { return l.e < r.e; });

    c.target.v = g.v - 1;
    c.edgeMap.assign(g.edges.size(), -1);
    c.flip.assign(g.edges.size(), false);
    for (int j = 0; j < (int)slots.size(); ++j) {
        c.target.edges.push_back(slots[j].e);
        c.edgeMap[slots[j].src] = j;
        c.flip[slots[j].src] = slots[j].flip;
    }
    for (int h : g.hairs) c.target.hairs.push_back(c.vertexMap[h]);
    std::sort(c.target.hairs.begin(), c.target.hairs.end());

    // removing the slot from the ordered edge set, then sorting the survivors
    int sign = edge % 2 ? -1 : 1;
    std::vector<int> survivors;
    for (int i = 0; i < (int)g.edges.size(); ++i)
        if (i != edge) survivors.push_back(c.edgeMap[i]);
    c.orientationSign = sign * permutationSign(survivors);
    return c;
}

std::vector<CoreIso> coreAutomorphisms(const HairyGraph& g) {
    const int E = (int)g.edges.size();
    std::vector<CoreIso> out;

    // target slots grouped by stored endpoint pair
    std::map<std::pair<int, int>, std::vector<int>> targetClass;
    for (int i = 0; i < E; ++i) targetClass[g.edges[i]].push_back(i);

    for (const auto& sigma : automorphisms(g)) {
        std::vector<std::pair<int, int>> mapped(E);
        std::vector<bool> baseFlip(E, false);
        std::map<std::pair<int, int>, std::vector<int>> sourceClass;
        for (int i = 0; i < E; ++i) {
            auto [a, b] = g.edges[i];
            int x = sigma.empty() ? a : sigma[a], y = sigma.empty() ? b : sigma[b];
            if (x > y) {
                std::swap(x, y);
                baseFlip[i] = true;
            }
            mapped[i] = {x, y};
            sourceClass[{x, y}].push_back(i);
        }

        std::vector<std::pair<std::vector<int>, std::vector<int>>> classes;
        for (auto& [pair, src] : sourceClass) {
            auto it = targetClass.find(pair);
            if (it == targetClass.end() || it->second.size() != src.size())
                throw std::logic_error("vertex map does not preserve the edge multiset");
            classes.push_back({src, it->second});
        }

        std::vector<int> loops;
        for (int i = 0; i < E; ++i)
            if (g.edges[i].first == g.edges[i].second) loops.push_back(i);

        std::vector<int> edgeMap(E, -1);
        auto emit = [&]() {
            for (std::size_t mask = 0; mask < (std::size_t(1) << loops.size()); ++mask) {
                CoreIso iso;
                iso.vertexMap = sigma.empty() ? std::vector<int>{} : sigma;
                iso.edgeMap = edgeMap;
                iso.flip.assign(E, false);
                for (int i = 0; i < E; ++i) iso.flip[i] = baseFlip[i];
                for (std::size_t l = 0; l < loops.size(); ++l)
                    if (mask >> l & 1) iso.flip[loops[l]] = true;
                out.push_back(std::move(iso));
            }
        };
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == classes.size()) {
                emit();
                return;
            }
            auto& [src, tgt] = classes[k];
            std::vector<int> perm(tgt.size());
            std::iota(perm.begin(), perm.end(), 0);
            do {
                for (std::size_t j = 0; j < src.size(); ++j) edgeMap[src[j]] = tgt[perm[j]];
                rec(k + 1);
            } while (std::next_permutation(perm.begin(), perm.end()));
        };
        rec(0);
    }
    return out;
}

CoreIso isoToCanonical(const HairyGraph& g, HairyGraph& canonicalOut) {
    auto sigma = canonicalVertexPermutation(g);
    canonicalOut = relabeled(g, sigma);

    const int E = (int)g.edges.size();
    CoreIso iso;
    iso.vertexMap = sigma;
    iso.edgeMap.assign(E, -1);
    iso.flip.assign(E, false);

    std::map<std::pair<int, int>, std::vector<int>> targetClass;
    for (int i = 0; i < E; ++i) targetClass[canonicalOut.edges[i]].push_back(i);
    std::map<std::pair<int, int>, std::size_t> used;
    for (int i = 0; i < E; ++i) {
        auto [a, b] = g.edges[i];
        int x = sigma.empty() ? a : sigma[a], y = sigma.empty() ? b : sigma[b];
        if (x > y) {
            std::swap(x, y);
            iso.flip[i] = true;
        }
        auto& cls = targetClass.at({x, y});
        iso.edgeMap[i] = cls[used[{x, y}]++];
    }
    return iso;
}

std::vector<HairyGraph> enumerateCore(int r, int edges) {
    if (r < 1) throw std::invalid_argument("loop order must be positive");
    if (edges < r || edges > 3 * (r - 1)) return {};
    int v = edges - r + 1;
    return enumerateBareGraphs(v, edges, true, true, 0);
}

} // namespace hgc
