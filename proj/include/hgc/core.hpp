#pragma once
#include "hgc/hairy.hpp"
#include <vector>

namespace hgc {

// Isomorphism between two graphs with the same edge multiset shape.  Tracks
// the edge slot assignment and per-slot orientation reversals so that local
// systems can act on edge-indexed data.
struct CoreIso {
    std::vector<int> vertexMap;  // source vertex -> target vertex
    std::vector<int> edgeMap;    // source edge slot -> target edge slot
    std::vector<bool> flip;      // per source slot: stored direction reversed
};

// sign of the induced permutation on the ordered edge set
int orientationSign(const CoreIso& iso);

CoreIso composeIso(const CoreIso& first, const CoreIso& then);

// Contraction of a non-loop edge.  The surviving endpoint is the smaller
// vertex label; larger labels shift down.  target is in normalized (sorted)
// edge order and edgeMap records where each surviving slot lands.
struct CoreContraction {
    int edge = -1;
    HairyGraph target;
    std::vector<int> vertexMap;
    std::vector<int> edgeMap;    // contracted slot -> -1
    std::vector<bool> flip;
    int orientationSign = 1;     // edge-removal position sign times sort sign
};

CoreContraction contractEdge(const HairyGraph& g, int edge);

// Every automorphism of the multigraph: vertex-level symmetry combined with
// permutations inside parallel edge classes and loop reversals.
std::vector<CoreIso> coreAutomorphisms(const HairyGraph& g);

// one isomorphism from g onto its canonical form (slot choice arbitrary)
CoreIso isoToCanonical(const HairyGraph& g, HairyGraph& canonicalOut);

// connected graphs without hairs, all vertices of valence >= 3, first Betti
// number r and the given edge count; r <= edges <= 3r-3
std::vector<HairyGraph> enumerateCore(int r, int edges);

} // namespace hgc
