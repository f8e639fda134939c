#include "hgc/decorated.hpp"
#include <algorithm>
#include <map>
#include <stdexcept>

namespace hgc {

namespace {

DenseMatrix averagingProjector(const HairyGraph& g, const LocalSystem& f) {
    int n = f.dim(g);
    auto auts = coreAutomorphisms(g);
    DenseMatrix p = denseZero(n, n);
    for (const auto& iso : auts) {
        auto m = f.onIso(g, iso, g);
        Rat sgn(orientationSign(iso));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) p[i][j] += sgn * m[i][j];
    }
    Rat inv = Rat(1) / Rat((long)auts.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p[i][j] *= inv;
    return p;
}

} // namespace

DecoratedComplex buildDecorated(SystemPtr f, int r) {
    if (r < 2) throw std::invalid_argument("decorated complex needs loop order at least 2");
    DecoratedComplex dc;
    dc.r = r;
    dc.system = f;

    std::map<std::string, int> cellIndex;
    for (int e = r; e <= 3 * (r - 1); ++e)
        for (const auto& g : enumerateCore(r, e)) {
            DecoratedCell cell;
            cell.graph = g;
            cell.projector = averagingProjector(g, *f);

            // the projector preserves internal degree, so its pivot columns
            // are homogeneous
            DenseMatrix work = cell.projector;
            auto pivots = rref(work);
            auto degs = f->degrees(g);
            cell.basis = denseZero(f->dim(g), (int)pivots.size());
            for (int j = 0; j < (int)pivots.size(); ++j) {
                for (int i = 0; i < f->dim(g); ++i) cell.basis[i][j] = cell.projector[i][pivots[j]];
                cell.degrees.push_back(degs[pivots[j]]);
            }
            cellIndex[g.serialize()] = (int)dc.cells.size();
            dc.cells.push_back(std::move(cell));
        }

    // global column layout per complex degree
    struct Slot {
        int cell, col, pos;
    };
    std::map<int, std::vector<Slot>> layout;
    std::map<std::pair<int, int>, std::pair<int, int>> where; // (cell,col) -> (deg,pos)
    for (int ci = 0; ci < (int)dc.cells.size(); ++ci) {
        const auto& cell = dc.cells[ci];
        int e = (int)cell.graph.edgeCount();
        for (int col = 0; col < denseCols(cell.basis); ++col) {
            int deg = -e + cell.degrees[col];
            int pos = (int)layout[deg].size();
            layout[deg].push_back({ci, col, pos});
            where[{ci, col}] = {deg, pos};
            dc.complex.basis[deg].push_back(cell.graph.serialize() + "#" +
                                            std::to_string(col));
        }
    }
    std::map<int, SparseMatrix> blocks;
    for (auto& [deg, names] : dc.complex.basis) {
        auto up = dc.complex.basis.find(deg + 1);
        int rows = up == dc.complex.basis.end() ? 0 : (int)up->second.size();
        blocks.emplace(deg, SparseMatrix(rows, (int)names.size()));
    }

    auto addEntries = [&](int srcCell, const DenseMatrix& coords, int dstCell) {
        for (int col = 0; col < denseCols(coords); ++col) {
            auto [sdeg, spos] = where.at({srcCell, col});
            for (int row = 0; row < denseRows(coords); ++row) {
                if (coords[row][col] == 0) continue;
                auto [tdeg, tpos] = where.at({dstCell, row});
                if (tdeg != sdeg + 1)
                    throw std::logic_error("decorated differential entry off by degree");
                blocks.at(sdeg).add(tpos, spos, coords[row][col]);
            }
        }
    };

    for (int ci = 0; ci < (int)dc.cells.size(); ++ci) {
        const auto& cell = dc.cells[ci];
        const auto& g = cell.graph;
        int e = (int)g.edgeCount();
        if (denseCols(cell.basis) == 0) continue;

        // contraction part, one non-loop edge at a time
        std::map<int, DenseMatrix> toCell;
        for (int slot = 0; slot < e; ++slot) {
            if (g.edges[slot].first == g.edges[slot].second) continue;
            auto c = contractEdge(g, slot);
            HairyGraph canon;
            auto iso = isoToCanonical(c.target, canon);
            auto it = cellIndex.find(canon.serialize());
            if (it == cellIndex.end())
                throw std::logic_error("contracted graph escapes the enumerated cells");
            const auto& dst = dc.cells[it->second];

            auto m = denseMul(f->onIso(c.target, iso, canon), f->onContract(g, c));
            auto moved = denseMul(dst.projector, denseMul(m, cell.basis));
            Rat sgn(c.orientationSign * orientationSign(iso));
            for (auto& row : moved)
                for (auto& x : row) x *= sgn;
            auto acc = toCell.find(it->second);
            if (acc == toCell.end()) {
                toCell.emplace(it->second, std::move(moved));
            } else {
                for (int i = 0; i < denseRows(moved); ++i)
                    for (int j = 0; j < denseCols(moved); ++j)
                        acc->second[i][j] += moved[i][j];
            }
        }
        for (auto& [dstIdx, mat] : toCell) {
            const auto& dst = dc.cells[dstIdx];
            if (denseCols(dst.basis) == 0) continue;
            addEntries(ci, solveExact(dst.basis, mat), dstIdx);
        }

        // internal part on the same graph, signed by the edge count
        if (f->isDg()) {
            auto d = denseMul(f->internalDiff(g), cell.basis);
            bool nonzero = false;
            for (auto& row : d)
                for (auto& x : row)
                    if (x != 0) nonzero = true;
            if (nonzero) {
                if (e % 2)
                    for (auto& row : d)
                        for (auto& x : row) x = -x;
                addEntries(ci, solveExact(cell.basis, d), ci);
            }
        }
    }

    dc.complex.blocks = std::move(blocks);
    dc.complex.checkShapes();
    return dc;
}

std::map<int, int> gcHomology(const DecoratedComplex& dc, RankEngine& eng) {
    auto h = dc.complex.homology(eng);
    std::map<int, int> out;
    for (auto& [deg, dim] : h) out[-deg] = dim;
    return out;
}

Rat gc2ClosedForm(const SystemPtr& f) {
    HairyGraph theta;
    theta.v = 2;
    theta.edges = {{0, 1}, {0, 1}, {0, 1}};
    auto auts = coreAutomorphisms(theta);
    Rat sum(0);
    for (const auto& iso : auts) {
        auto m = f->onIso(theta, iso, theta);
        Rat tr(0);
        for (int i = 0; i < denseRows(m); ++i) tr += m[i][i];
        sum += Rat(orientationSign(iso)) * tr;
    }
    return sum / Rat((long)auts.size());
}

} // namespace hgc
