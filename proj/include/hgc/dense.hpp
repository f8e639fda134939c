#pragma once
#include "hgc/rational.hpp"
#include <vector>
#include <stdexcept>

namespace hgc {

using DenseMatrix = std::vector<std::vector<Rat>>; // row major

inline DenseMatrix denseZero(int rows, int cols) {
    return DenseMatrix((std::size_t)rows, std::vector<Rat>((std::size_t)cols, Rat(0)));
}

inline int denseRows(const DenseMatrix& a) { return (int)a.size(); }
inline int denseCols(const DenseMatrix& a) { return a.empty() ? 0 : (int)a[0].size(); }

inline DenseMatrix denseMul(const DenseMatrix& a, const DenseMatrix& b) {
    int n = denseRows(a), k = denseCols(a), m = denseCols(b);
    if (k != denseRows(b)) throw std::logic_error("dense shape mismatch");
    DenseMatrix c = denseZero(n, m);
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (int j = 0; j < m; ++j)
                if (b[t][j] != 0) c[i][j] += a[i][t] * b[t][j];
        }
    return c;
}

// reduced row echelon form in place; returns pivot column per pivot row
inline std::vector<int> rref(DenseMatrix& a) {
    std::vector<int> pivots;
    int rows = denseRows(a), cols = denseCols(a), r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        Rat pv = a[r][c];
        for (int j = c; j < cols; ++j) a[r][j] /= pv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// columns spanning the kernel of a (cols x nullity), deterministic
inline DenseMatrix kernelBasis(DenseMatrix a) {
    int cols = denseCols(a);
    auto pivots = rref(a);
    std::vector<bool> isPivot(cols, false);
    for (int c : pivots) isPivot[c] = true;
    DenseMatrix out;
    for (int c = 0; c < cols; ++c) {
        if (isPivot[c]) continue;
        std::vector<Rat> vec(cols, Rat(0));
        vec[c] = 1;
        for (std::size_t pr = 0; pr < pivots.size(); ++pr) vec[pivots[pr]] = -a[pr][c];
        out.push_back(std::move(vec));
    }
    // transpose: kernel vectors as columns
    DenseMatrix k = denseZero(cols, (int)out.size());
    for (int j = 0; j < (int)out.size(); ++j)
        for (int i = 0; i < cols; ++i) k[i][j] = out[j][i];
    return k;
}

// solve A x = b for each column of b; A must have full column rank and the
// system must be consistent
inline DenseMatrix solveExact(const DenseMatrix& a, const DenseMatrix& b) {
    int rows = denseRows(a), cols = denseCols(a), rhs = denseCols(b);
    if (rows != denseRows(b)) throw std::logic_error("solve shape mismatch");
    DenseMatrix aug = denseZero(rows, cols + rhs);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        for (int j = 0; j < rhs; ++j) aug[i][cols + j] = b[i][j];
    }
    auto pivots = rref(aug);
    DenseMatrix x = denseZero(cols, rhs);
    for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
        int c = pivots[pr];
        if (c >= cols) throw std::logic_error("inconsistent linear system");
        for (int j = 0; j < rhs; ++j) x[c][j] = aug[pr][cols + j];
    }
    if ((int)pivots.size() != cols) throw std::logic_error("matrix not of full column rank");
    return x;
}

// deterministic basis of the column span: pivot columns of the input
inline DenseMatrix imageBasis(const DenseMatrix& a) {
    DenseMatrix work = a;
    auto pivots = rref(work);
    DenseMatrix out = denseZero(denseRows(a), (int)pivots.size());
    for (int j = 0; j < (int)pivots.size(); ++j)
        for (int i = 0; i < denseRows(a); ++i) out[i][j] = a[i][pivots[j]];
    return out;
}

inline int denseRank(DenseMatrix a) { return (int)rref(a).size(); }

inline Rat denseDet(DenseMatrix a) {
    int n = denseRows(a);
    if (n != denseCols(a)) throw std::logic_error("determinant of non-square matrix");
    Rat det(1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (a[i][c] != 0) { piv = i; break; }
        if (piv < 0) return Rat(0);
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            Rat f = a[i][c] / a[c][c];
            for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

} // namespace hgc
