#pragma once
#include "hgc/graded_complex.hpp"
#include "hgc/hp.hpp"

namespace hgc {

// One orbit of decorated generators: a canonical core graph together with a
// basis of the coinvariants of its value space under the orientation-signed
// automorphism action.
struct DecoratedCell {
    HairyGraph graph;
    DenseMatrix projector;   // averaging projector on the value space
    DenseMatrix basis;       // independent columns spanning its image
    std::vector<int> degrees; // internal degree of each basis column
};

struct DecoratedComplex {
    int r = 0;
    SystemPtr system;
    std::vector<DecoratedCell> cells;           // sorted by edge count then form
    GradedComplex complex;                      // degree = -edges + internal
};

DecoratedComplex buildDecorated(SystemPtr f, int r);

// homology reported in dual grading: dimension at k comes from degree -k
std::map<int, int> gcHomology(const DecoratedComplex& dc, RankEngine& eng);

// multiplicity of the orientation character in the value space on the
// three-edge double-vertex graph; closed form for the top homology at rank 2
Rat gc2ClosedForm(const SystemPtr& f);

} // namespace hgc
