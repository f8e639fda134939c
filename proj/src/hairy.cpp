#include "hgc/hairy.hpp"
#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hgc {

int HairyGraph::valence(int w) const {
    int val = 0;
    for (auto& [a, b] : edges) {
        if (a == w) ++val;
        if (b == w) ++val;
    }
    for (int h : hairs)
        if (h == w) ++val;
    return val;
}

int HairyGraph::loopsAt(int w) const {
    int c = 0;
    for (auto& [a, b] : edges)
        if (a == w && b == w) ++c;
    return c;
}

int HairyGraph::hairsAt(int w) const {
    int c = 0;
    for (int h : hairs)
        if (h == w) ++c;
    return c;
}

void HairyGraph::normalize() {
    for (auto& e : edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    std::sort(hairs.begin(), hairs.end());
}

bool HairyGraph::connectedInternally() const {
    if (v <= 1) return true;
    std::vector<int> parent(v);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto& [a, b] : edges) parent[find(a)] = find(b);
    int root = find(0);
    for (int i = 1; i < v; ++i)
        if (find(i) != root) return false;
    return true;
}

bool HairyGraph::validate(std::string* why) const {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (v == 0) {
        if (!edges.empty() || !hairs.empty()) return fail("v=0 admits only the line graph");
        return true;
    }
    if (hairs.empty()) return fail("a generator needs at least one hair");
    for (auto& [a, b] : edges)
        if (a < 0 || b < 0 || a >= v || b >= v || a > b) return fail("edge endpoint out of range");
    for (int h : hairs)
        if (h < 0 || h >= v) return fail("hair anchor out of range");
    for (int w = 0; w < v; ++w)
        if (valence(w) < 3) return fail("internal vertex of valence < 3");
    if (!connectedInternally()) return fail("not connected");
    if (loopOrder() < 0) return fail("negative loop order");
    return true;
}

std::string HairyGraph::serialize() const {
    std::ostringstream out;
    out << "v=" << v << ";e=";
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i) out << ",";
        out << edges[i].first << "-" << edges[i].second;
    }
    out << ";h=";
    for (std::size_t i = 0; i < hairs.size(); ++i) {
        if (i) out << ",";
        out << hairs[i];
    }
    return out.str();
}

HairyGraph HairyGraph::parse(const std::string& s) {
    HairyGraph g;
    auto ePos = s.find(";e="), hPos = s.find(";h=");
    if (s.rfind("v=", 0) != 0 || ePos == std::string::npos || hPos == std::string::npos)
        throw std::invalid_argument("bad graph string: " + s);
    g.v = std::stoi(s.substr(2, ePos - 2));
    auto splitInts = [](const std::string& part, auto&& each) {
        std::size_t i = 0;
        while (i < part.size()) {
            auto j = part.find(',', i);
            if (j == std::string::npos) j = part.size();
            each(part.substr(i, j - i));
            i = j + 1;
        }
    };
    splitInts(s.substr(ePos + 3, hPos - ePos - 3), [&](const std::string& t) {
        auto d = t.find('-');
        g.edges.push_back({std::stoi(t.substr(0, d)), std::stoi(t.substr(d + 1))});
    });
    splitInts(s.substr(hPos + 3), [&](const std::string& t) { g.hairs.push_back(std::stoi(t)); });
    return g;
}

int degree(const HairyGraph& g, int m, int n) {
    if (g.isLine()) return m + 1 - n;
    int e = (int)g.edges.size(), h = (int)g.hairs.size();
    return m * h + n * g.v + (1 - n) * (e + h) - m;
}

OrientationParities orientationParities(int m, int n) {
    auto p2 = [](int x) { return ((x % 2) + 2) % 2; };
    return {p2(1 - n), p2(n), p2(m + 1 - n), p2(n)};
}

int koszulSignByTarget(const std::vector<std::pair<int, int>>& items) {
    int inv = 0;
    for (std::size_t i = 0; i < items.size(); ++i)
        for (std::size_t j = i + 1; j < items.size(); ++j)
            if (items[i].first && items[j].first && items[j].second < items[i].second) inv ^= 1;
    return inv ? -1 : 1;
}

HairyGraph relabeled(const HairyGraph& g, const std::vector<int>& sigma) {
    HairyGraph out;
    out.v = g.v;
    out.edges.reserve(g.edges.size());
    for (auto& [a, b] : g.edges) out.edges.push_back({sigma[a], sigma[b]});
    out.hairs.reserve(g.hairs.size());
    for (int h : g.hairs) out.hairs.push_back(sigma[h]);
    out.normalize();
    return out;
}

int relabelSign(const HairyGraph& g, const std::vector<int>& sigma, int m, int n) {
    auto par = orientationParities(m, n);
    int sign = 1;

    std::vector<std::pair<int, int>> newEdges;
    newEdges.reserve(g.edges.size());
    int flips = 0;
    for (auto& [a, b] : g.edges) {
        int sa = sigma[a], sb = sigma[b];
        if (a != b && sa > sb) {
            std::swap(sa, sb);
            flips ^= 1;
        }
        newEdges.push_back({sa, sb});
    }
    if (par.edge && inversionParity(newEdges)) sign = -sign;
    if (par.flip && flips) sign = -sign;

    if (par.vertex && inversionParity(sigma)) sign = -sign;

    if (par.hair) {
        std::vector<int> newHairs;
        newHairs.reserve(g.hairs.size());
        for (int h : g.hairs) newHairs.push_back(sigma[h]);
        if (inversionParity(newHairs)) sign = -sign;
    }
    return sign;
}

namespace {

// iterated neighborhood refinement; color order is label-independent
std::vector<int> stableColors(const HairyGraph& g) {
    int v = g.v;
    std::vector<std::vector<int>> adj(v, std::vector<int>(v, 0));
    std::vector<int> loops(v, 0);
    for (auto& [a, b] : g.edges) {
        if (a == b) ++loops[a];
        else {
            ++adj[a][b];
            ++adj[b][a];
        }
    }
    std::vector<int> color(v, 0);
    {
        std::vector<std::vector<int>> keys(v);
        for (int u = 0; u < v; ++u) keys[u] = {g.valence(u), loops[u], g.hairsAt(u)};
        auto sorted = keys;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int u = 0; u < v; ++u)
            color[u] = (int)(std::lower_bound(sorted.begin(), sorted.end(), keys[u]) - sorted.begin());
    }
    for (int round = 0; round < v; ++round) {
        std::vector<std::vector<int>> keys(v);
        for (int u = 0; u < v; ++u) {
            keys[u] = {color[u]};
            std::vector<int> nb;
            for (int w = 0; w < v; ++w)
                for (int k = 0; k < adj[u][w]; ++k) nb.push_back(color[w]);
            std::sort(nb.begin(), nb.end());
            keys[u].insert(keys[u].end(), nb.begin(), nb.end());
        }
        auto sorted = keys;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> next(v);
        for (int u = 0; u < v; ++u)
            next[u] = (int)(std::lower_bound(sorted.begin(), sorted.end(), keys[u]) - sorted.begin());
        if (next == color) break;
        color = next;
    }
    return color;
}

// Backtracking search for the lexicographically minimal row form; collects
// every permutation achieving the minimum (these give the automorphisms).
struct CanonSearch {
    int v;
    std::vector<std::vector<int>> adj;
    std::vector<int> loops, hairCnt, color, posColor;
    std::vector<int> who;       // new label -> old vertex
    std::vector<bool> used;
    std::vector<std::vector<int>> rows, bestRows;
    std::vector<std::vector<int>> achievers; // old -> new

    explicit CanonSearch(const HairyGraph& g) : v(g.v) {
        adj.assign(v, std::vector<int>(v, 0));
        loops.assign(v, 0);
        hairCnt.assign(v, 0);
        for (auto& [a, b] : g.edges) {
            if (a == b) ++loops[a];
            else {
                ++adj[a][b];
                ++adj[b][a];
            }
        }
        for (int h : g.hairs) ++hairCnt[h];
        color = stableColors(g);
        posColor = color;
        std::sort(posColor.begin(), posColor.end());
        who.assign(v, -1);
        used.assign(v, false);
    }

    std::vector<int> makeRow(int u, int k) const {
        std::vector<int> row = {loops[u], hairCnt[u]};
        for (int i = 0; i < k; ++i) row.push_back(adj[u][who[i]]);
        return row;
    }

    void recordAchiever() {
        std::vector<int> sigma(v);
        for (int k = 0; k < v; ++k) sigma[who[k]] = k;
        achievers.push_back(std::move(sigma));
    }

    void rec(int k, bool eq) {
        if (k == v) {
            if (!eq) {
                bestRows = rows;
                achievers.clear();
            }
            recordAchiever();
            return;
        }
        std::vector<std::pair<std::vector<int>, int>> cands;
        for (int u = 0; u < v; ++u)
            if (!used[u] && color[u] == posColor[k]) cands.push_back({makeRow(u, k), u});
        std::sort(cands.begin(), cands.end());
        bool localEq = eq;
        for (auto& [row, u] : cands) {
            bool childEq = false;
            if (localEq) {
                if (row > bestRows[k]) break;
                childEq = (row == bestRows[k]);
            }
            used[u] = true;
            who[k] = u;
            rows.push_back(row);
            rec(k + 1, childEq);
            rows.pop_back();
            who[k] = -1;
            used[u] = false;
            localEq = true; // a completion below updated bestRows through this level
        }
    }

    void run() {
        if (v == 0) {
            achievers.push_back({});
            return;
        }
        rec(0, false);
    }
};

} // namespace

std::vector<std::vector<int>> automorphisms(const HairyGraph& g) {
    if (g.v == 0) return {{}};
    CanonSearch s(g);
    s.run();
    const auto& first = s.achievers.front();
    std::vector<int> inv(g.v);
    for (int x = 0; x < g.v; ++x) inv[first[x]] = x;
    std::vector<std::vector<int>> out;
    for (auto& sig : s.achievers) {
        std::vector<int> alpha(g.v);
        for (int x = 0; x < g.v; ++x) alpha[x] = inv[sig[x]];
        out.push_back(std::move(alpha));
    }
    return out;
}

std::vector<int> canonicalVertexPermutation(const HairyGraph& g) {
    if (g.v == 0) return {};
    CanonSearch s(g);
    s.run();
    return s.achievers.front();
}

CanonResult canonicalize(const HairyGraph& g, int m, int n) {
    CanonResult res;
    if (g.isLine()) {
        res.canonical = g;
        res.sign = 1;
        res.zero = ((m + n) % 2 + 2) % 2 == 1;
        return res;
    }
    HairyGraph norm = g;
    norm.normalize();
    auto par = orientationParities(m, n);

    bool quickZero = false;
    for (std::size_t i = 0; i < norm.edges.size(); ++i) {
        if (par.flip && norm.edges[i].first == norm.edges[i].second) quickZero = true;
        if (par.edge && i + 1 < norm.edges.size() && norm.edges[i] == norm.edges[i + 1]) quickZero = true;
    }
    if (par.hair)
        for (std::size_t i = 0; i + 1 < norm.hairs.size(); ++i)
            if (norm.hairs[i] == norm.hairs[i + 1]) quickZero = true;

    CanonSearch s(norm);
    s.run();
    const auto& sigma0 = s.achievers.front();
    res.canonical = relabeled(norm, sigma0);
    res.sign = relabelSign(norm, sigma0, m, n);
    res.zero = quickZero;
    if (!res.zero)
        for (std::size_t i = 1; i < s.achievers.size(); ++i)
            if (relabelSign(norm, s.achievers[i], m, n) != res.sign) {
                res.zero = true;
                break;
            }
    return res;
}

} // namespace hgc
