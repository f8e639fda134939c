#include "hgc/sparse.hpp"
#include <algorithm>
#include <stdexcept>
#include <map>

namespace hgc {

void SparseMatrix::add(int r, int c, const Rat& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("SparseMatrix::add: index out of range");
    if (v == 0) return;
    data_.push_back({r, c, v});
    coalesced_ = false;
}

void SparseMatrix::coalesce() const {
    if (coalesced_) return;
    std::sort(data_.begin(), data_.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<Triplet> out;
    out.reserve(data_.size());
    for (auto& t : data_) {
        if (!out.empty() && out.back().row == t.row && out.back().col == t.col)
            out.back().val += t.val;
        else
            out.push_back(t);
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const Triplet& t) { return t.val == 0; }),
              out.end());
    data_ = std::move(out);
    coalesced_ = true;
}

const std::vector<Triplet>& SparseMatrix::entries() const {
    coalesce();
    return data_;
}

std::size_t SparseMatrix::nnz() const {
    coalesce();
    return data_.size();
}

SparseMatrix SparseMatrix::transposed() const {
    coalesce();
    SparseMatrix t(cols_, rows_);
    for (auto& e : data_) t.add(e.col, e.row, e.val);
    t.coalesce();
    return t;
}

std::vector<std::vector<Rat>> SparseMatrix::dense() const {
    coalesce();
    std::vector<std::vector<Rat>> d(rows_, std::vector<Rat>(cols_, Rat(0)));
    for (auto& e : data_) d[e.row][e.col] = e.val;
    return d;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& other) const {
    if (cols_ != other.rows())
        throw std::invalid_argument("SparseMatrix::multiply: shape mismatch");
    coalesce();
    other.coalesce();
    // row-major access to other
    std::vector<std::vector<std::pair<int, Rat>>> rowsB(other.rows());
    for (auto& e : other.entries()) rowsB[e.row].push_back({e.col, e.val});
    SparseMatrix out(rows_, other.cols());
    std::map<std::pair<int, int>, Rat> acc;
    for (auto& e : data_)
        for (auto& [c, v] : rowsB[e.col]) acc[{e.row, c}] += e.val * v;
    for (auto& [rc, v] : acc)
        if (v != 0) out.add(rc.first, rc.second, v);
    out.coalesce();
    return out;
}

SparseMatrix SparseMatrix::scaled(const Rat& s) const {
    coalesce();
    SparseMatrix out(rows_, cols_);
    if (s == 0) return out;
    for (auto& e : data_) out.add(e.row, e.col, e.val * s);
    out.coalesce();
    return out;
}

SparseMatrix SparseMatrix::plus(const SparseMatrix& other) const {
    if (rows_ != other.rows() || cols_ != other.cols())
        throw std::invalid_argument("SparseMatrix::plus: shape mismatch");
    SparseMatrix out(rows_, cols_);
    for (auto& e : entries()) out.add(e.row, e.col, e.val);
    for (auto& e : other.entries()) out.add(e.row, e.col, e.val);
    out.coalesce();
    return out;
}

bool SparseMatrix::isZero() const { return nnz() == 0; }

bool SparseMatrix::equals(const SparseMatrix& other) const {
    if (rows_ != other.rows() || cols_ != other.cols()) return false;
    auto& a = entries();
    auto& b = other.entries();
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].row != b[i].row || a[i].col != b[i].col || a[i].val != b[i].val)
            return false;
    return true;
}

SparseMatrix SparseMatrix::identity(int n) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.add(i, i, Rat(1));
    m.coalesce();
    return m;
}

SparseMatrix SparseMatrix::fromDense(const std::vector<std::vector<Rat>>& d) {
    int r = (int)d.size();
    int c = r ? (int)d[0].size() : 0;
    SparseMatrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (d[i][j] != 0) m.add(i, j, d[i][j]);
    m.coalesce();
    return m;
}

std::vector<Rat> SparseMatrix::apply(const std::vector<Rat>& x) const {
    if ((int)x.size() != cols_)
        throw std::invalid_argument("SparseMatrix::apply: size mismatch");
    std::vector<Rat> y(rows_, Rat(0));
    for (auto& e : entries()) y[e.row] += e.val * x[e.col];
    return y;
}

} // namespace hgc
