#include "hgc/graded_complex.hpp"
#include <stdexcept>

namespace hgc {

int GradedComplex::dim(int deg) const {
    auto it = basis.find(deg);
    return it == basis.end() ? 0 : (int)it->second.size();
}

int GradedComplex::minDegree() const {
    if (basis.empty()) return 0;
    return basis.begin()->first;
}

int GradedComplex::maxDegree() const {
    if (basis.empty()) return 0;
    return basis.rbegin()->first;
}

void GradedComplex::checkShapes() const {
    for (auto& [d, b] : blocks) {
        if (b.cols() != dim(d) || b.rows() != dim(d + 1))
            throw std::logic_error("differential block shape mismatch at degree " + std::to_string(d));
    }
}

bool GradedComplex::squareZero() const {
    for (auto& [d, b] : blocks) {
        auto next = blocks.find(d + 1);
        if (next == blocks.end()) continue;
        if (!next->second.multiply(b).isZero()) return false;
    }
    return true;
}

std::map<int, int> GradedComplex::homology(RankEngine& eng) const {
    std::map<int, int> rk;
    for (auto& [d, b] : blocks) rk[d] = eng.rank(b);
    auto rankAt = [&](int d) {
        auto it = rk.find(d);
        return it == rk.end() ? 0 : it->second;
    };
    std::map<int, int> out;
    for (auto& [d, labels] : basis) {
        int h = (int)labels.size() - rankAt(d) - rankAt(d - 1);
        if (h < 0) throw std::logic_error("negative homology dimension: inconsistent ranks");
        if (h > 0) out[d] = h;
    }
    return out;
}

long GradedComplex::eulerFromDims() const {
    long acc = 0;
    for (auto& [d, labels] : basis) acc += (d % 2 == 0 ? 1 : -1) * (long)labels.size();
    return acc;
}

long GradedComplex::eulerFromHomology(const std::map<int, int>& h) {
    long acc = 0;
    for (auto& [d, n] : h) acc += (d % 2 == 0 ? 1 : -1) * (long)n;
    return acc;
}

} // namespace hgc
