#pragma once
#include "hgc/local_system.hpp"
#include <map>

namespace hgc {

// decoration of a core graph: 0 or 1 hair per vertex plus an ordered tuple of
// hairs per edge, recorded by its length; auxiliary weight = total hair count
struct HpGen {
    std::vector<char> s; // per vertex
    std::vector<int> t;  // per edge
    auto operator<=>(const HpGen&) const = default;
};

struct HpValue {
    std::vector<HpGen> basis;                 // grouped by vertex-hair count
    std::vector<int> jDeg;                    // vertex-hair count per element
    std::vector<std::vector<int>> byJ;        // basis indices per degree
    std::map<HpGen, int> index;
    DenseMatrix diff;                         // raises the vertex-hair count by 1
};

HpValue hpComplex(const HairyGraph& g, bool dOdd, int h);

DenseMatrix hpIsoMatrix(const HairyGraph& src, const CoreIso& iso, const HairyGraph& dst,
                        bool dOdd, int h);
DenseMatrix hpContractMatrix(const HairyGraph& src, const CoreContraction& c, bool dOdd,
                             int h);

// the decoration complex as a dg coefficient system
SystemPtr chSystem(bool dOdd, int h);

// bottom kernel and first homology of the odd-parity decoration complex as
// plain coefficient systems
std::pair<SystemPtr, SystemPtr> bTypeSystems(int r, int h);

// monomials in y_1..y_r (odd, weight 1) and theta_1..theta_r (even, weight 2)
struct DeRhamData {
    int r = 0, h = 0;
    std::vector<std::pair<unsigned, std::vector<int>>> source; // weight h
    std::vector<std::pair<unsigned, std::vector<int>>> target; // weight h-1
    DenseMatrix d;       // y_j d/dtheta_j, weight h -> h-1
    int kerDim = 0;      // type I space at weight h
    int cokerDim = 0;    // type II space at weight h
};

DeRhamData deRham(int r, int h);

} // namespace hgc
