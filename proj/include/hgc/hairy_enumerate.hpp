#pragma once
#include "hgc/hairy.hpp"
#include <vector>

namespace hgc {

enum class ExecMode { Serial, Parallel };

// canonical labeling ignoring orientation data; dedup key for structures
HairyGraph canonicalForm(const HairyGraph& g);

// All nonzero canonical classes with the given loop order, hair count and
// internal vertex count, sorted. v=0 only yields the line graph (r=0, h=2).
std::vector<HairyGraph> enumerateHairy(int r, int h, int v, int m, int n,
                                       ExecMode mode = ExecMode::Serial);

// independent oracle: every labeled multigraph, filtered and deduped
std::vector<HairyGraph> enumerateHairyBrute(int r, int h, int v, int m, int n);

// connected loopless-or-not multigraph shells before hair placement:
// v vertices, e edges, min internal degree 1 (v >= 2), canonical, sorted
std::vector<HairyGraph> enumerateBareGraphs(int v, int e, bool allowLoops, bool allowParallel,
                                            int maxDeficiency);

} // namespace hgc
