#pragma once
#include "hgc/core.hpp"
#include "hgc/dense.hpp"
#include <memory>
#include <string>

namespace hgc {

// Functor on core graphs: a finite dimensional graded value space per graph,
// exact matrices for isomorphisms and non-loop edge contractions, and an
// optional internal differential of degree +1 for complex-valued systems.
class LocalSystem {
  public:
    virtual ~LocalSystem() = default;
    virtual std::string name() const = 0;
    virtual int dim(const HairyGraph& g) const = 0;
    virtual std::vector<int> degrees(const HairyGraph& g) const {
        return std::vector<int>(dim(g), 0);
    }
    virtual DenseMatrix onIso(const HairyGraph& src, const CoreIso& iso,
                              const HairyGraph& dst) const = 0;
    virtual DenseMatrix onContract(const HairyGraph& src, const CoreContraction& c) const = 0;
    virtual DenseMatrix internalDiff(const HairyGraph& g) const {
        return denseZero(dim(g), dim(g));
    }
    virtual bool isDg() const { return false; }
};

using SystemPtr = std::shared_ptr<const LocalSystem>;

SystemPtr trivialSystem();
SystemPtr cellularChains();                 // edges in degree -1, vertices in degree 0
SystemPtr h1System();                       // cycle space, concentrated in degree 0
SystemPtr detSystem();                      // top exterior power of the cycle space
SystemPtr symPower(SystemPtr base, int k);  // base must sit in a single degree
SystemPtr tensorSystem(SystemPtr a, SystemPtr b);
SystemPtr detTwist(SystemPtr base, int n);  // tensor with n mod 2 copies of Det

// fundamental cycles of the first spanning tree in edge order, as columns in
// edge space; also reports which edge slots are outside the tree
DenseMatrix cycleBasis(const HairyGraph& g, std::vector<int>& nonTree);

// the natural vector (val(v)-2)/(2r-2) in vertex coordinates; needs r >= 2
std::vector<Rat> sectionVector(const HairyGraph& g);

// projectors splitting the cellular chains into the section line and its
// natural complement; returns {P_I, P_II} with P_I + P_II = Id
std::pair<DenseMatrix, DenseMatrix> splitChains(const HairyGraph& g);

} // namespace hgc
