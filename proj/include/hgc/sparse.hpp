#pragma once
#include "hgc/rational.hpp"
#include <vector>
#include <cstdint>

namespace hgc {

struct Triplet {
    int row;
    int col;
    Rat val;
};

// Exact sparse matrix in coordinate form. add() accumulates duplicate
// positions; coalesce() merges them and drops exact zeros.
class SparseMatrix {
public:
    SparseMatrix() : rows_(0), cols_(0), coalesced_(true) {}
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), coalesced_(true) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void add(int r, int c, const Rat& v);
    void coalesce() const;

    const std::vector<Triplet>& entries() const;
    std::size_t nnz() const;

    SparseMatrix transposed() const;
    std::vector<std::vector<Rat>> dense() const;

    // A*B, exact
    SparseMatrix multiply(const SparseMatrix& other) const;
    SparseMatrix scaled(const Rat& s) const;
    SparseMatrix plus(const SparseMatrix& other) const;
    bool isZero() const;
    bool equals(const SparseMatrix& other) const;

    static SparseMatrix identity(int n);
    static SparseMatrix fromDense(const std::vector<std::vector<Rat>>& d);

    // matrix-vector product
    std::vector<Rat> apply(const std::vector<Rat>& x) const;

private:
    int rows_, cols_;
    mutable std::vector<Triplet> data_;
    mutable bool coalesced_;
};

} // namespace hgc
