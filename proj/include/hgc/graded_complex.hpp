#pragma once
#include "hgc/sparse.hpp"
#include "hgc/rank.hpp"
#include <map>
#include <string>
#include <vector>

namespace hgc {

// A cochain complex with integer grading. blocks[d] is the matrix of
// d : C^d -> C^{d+1} (rows indexed by the degree d+1 basis, columns by degree d).
struct GradedComplex {
    std::map<int, std::vector<std::string>> basis;
    std::map<int, SparseMatrix> blocks;

    int dim(int deg) const;
    int minDegree() const;
    int maxDegree() const;

    // verifies every block has the shape the basis dictates
    void checkShapes() const;

    // true iff all composites d∘d vanish
    bool squareZero() const;

    // degree -> dim ker/im; degrees with zero homology are omitted
    std::map<int, int> homology(RankEngine& eng) const;

    long eulerFromDims() const;
    static long eulerFromHomology(const std::map<int, int>& h);
};

} // namespace hgc
