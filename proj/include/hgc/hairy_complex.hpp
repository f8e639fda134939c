#pragma once
#include "hgc/hairy.hpp"
#include "hgc/hairy_enumerate.hpp"
#include "hgc/graded_complex.hpp"
#include "hgc/rational.hpp"
#include <map>

namespace hgc {

// formal sum of canonical nonzero generators
using Chain = std::map<HairyGraph, Rat>;

void addTo(Chain& c, const HairyGraph& g, const Rat& coeff);

// Coefficient of each canonical generator in the expansion of vertex w:
// the star of w (edge slots, loop half-slots, hairs) is split into two
// blocks of size >= 2, the moved block lands on a fresh vertex joined to w
// by a new edge, and the new vertex and edge are prepended to the
// orientation datum before reordering into storage position.
Chain expandVertexSum(const HairyGraph& g, int w, int m, int n);

// full differential: sum of expansions over internal vertices
Chain differentialOf(const HairyGraph& g, int m, int n);

// the (r,h) block of the hairy complex for parameters (m,n)
GradedComplex assembleHairy(int m, int n, int r, int h, ExecMode mode = ExecMode::Serial);

// basis lookup helper: degree of the v-vertex slice in the (r,h) block
int sliceDegree(int m, int n, int r, int h, int v);

} // namespace hgc
