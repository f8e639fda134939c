#pragma once
#include <string>
#include <vector>
#include <utility>

namespace hgc {

// A hairy graph: internal vertices 0..v-1, internal edges as (lo,hi) pairs
// (loops allowed), hairs as a multiset of anchor vertices. The single
// exceptional graph L (one edge joining two univalent external vertices,
// no internal vertex) is encoded as v=0 with no edges and no hairs.
struct HairyGraph {
    int v = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> hairs;

    bool isLine() const { return v == 0; }
    int hairCount() const { return isLine() ? 2 : (int)hairs.size(); }
    int edgeCount() const { return isLine() ? 1 : (int)edges.size(); }
    int loopOrder() const { return isLine() ? 0 : (int)edges.size() - v + 1; }
    int valence(int w) const;   // internal incidences (loop = 2) plus hairs
    int loopsAt(int w) const;
    int hairsAt(int w) const;

    void normalize();           // sort edges as (lo,hi) pairs, sort hairs
    bool connectedInternally() const;
    // checks the generator invariants; fills why on failure
    bool validate(std::string* why = nullptr) const;

    std::string serialize() const;
    static HairyGraph parse(const std::string& s);

    bool operator==(const HairyGraph&) const = default;
    auto operator<=>(const HairyGraph&) const = default;
};

// degree of the generator in the (m,n)-complex:
// m*h + n*v + (1-n)*(edges+h) - m; the exceptional graph L sits in m+1-n
int degree(const HairyGraph& g, int m, int n);

// parities (mod 2) of the three orientation item kinds
struct OrientationParities {
    int edge;    // deg 1-n
    int vertex;  // deg n
    int hair;    // composite: external vertex (deg m) plus its edge (deg 1-n)
    int flip;    // sign exponent of reversing one edge: n
};
OrientationParities orientationParities(int m, int n);

// parity (0/1) of the permutation sorting keys stably; ties contribute nothing
template <class T>
int inversionParity(const std::vector<T>& keys) {
    int inv = 0;
    for (std::size_t i = 0; i < keys.size(); ++i)
        for (std::size_t j = i + 1; j < keys.size(); ++j)
            if (keys[j] < keys[i]) inv ^= 1;
    return inv;
}

// Koszul sign of reordering graded items to their target positions:
// each element is (parity, target position); only odd-odd inversions count
int koszulSignByTarget(const std::vector<std::pair<int, int>>& items);

// Koszul sign relating g's stored orientation datum to the normalized
// storage datum of the graph relabeled by sigma (old label -> new label)
int relabelSign(const HairyGraph& g, const std::vector<int>& sigma, int m, int n);

HairyGraph relabeled(const HairyGraph& g, const std::vector<int>& sigma);

struct CanonResult {
    HairyGraph canonical;
    int sign = 1;       // input generator = sign * canonical generator
    bool zero = false;  // some automorphism reverses orientation
};

struct SignedGenerator {
    HairyGraph canonical;
    int sign = 1;
};

// Deterministic canonical form with orientation sign and vanishing
// detection via full enumeration of the automorphism group.
CanonResult canonicalize(const HairyGraph& g, int m, int n);

// automorphisms of a normalized graph as label bijections (identity included)
std::vector<std::vector<int>> automorphisms(const HairyGraph& g);

// minimal-form vertex relabeling (old -> new) of a normalized graph
std::vector<int> canonicalVertexPermutation(const HairyGraph& g);

} // namespace hgc
