#pragma once
#include "hgc/sparse.hpp"
#include <random>
#include <stdexcept>
#include <vector>

namespace hgc {

// thrown when a chosen prime divides some denominator of the matrix
struct BadPrimeError : std::runtime_error {
    explicit BadPrimeError(uint64_t p)
        : std::runtime_error("prime divides a denominator"), prime(p) {}
    uint64_t prime;
};

// Sparse elimination mod p, pivot chosen in the lightest column, shortest
// row (Markowitz-style fill control). Deterministic.
int rankModP(const SparseMatrix& m, uint64_t p);

// Exact rational sparse elimination, same pivoting.
int rankExact(const SparseMatrix& m);

// Dense exact elimination; independent oracle for small matrices.
int rankExactDense(std::vector<std::vector<Rat>> a);

// Draws primes > 2^30 deterministically from a seed, runs the agreement
// protocol: two primes must agree; on disagreement more primes are drawn
// until two agree, and small matrices (<= 5000 nonzeros) are confirmed by
// exact elimination. exact mode skips the modular path entirely.
class RankEngine {
public:
    explicit RankEngine(uint64_t seed = 1, bool exact = false)
        : seed_(seed), exact_(exact), rng_(seed) {}

    int rank(const SparseMatrix& m);

    uint64_t seed() const { return seed_; }
    bool exactMode() const { return exact_; }
    const std::vector<uint64_t>& primesUsed() const { return primes_; }

    // preselect specific primes (CLI --primes); used before random draws
    void presetPrimes(std::vector<uint64_t> ps) { preset_ = std::move(ps); }

private:
    uint64_t freshPrime();
    uint64_t seed_;
    bool exact_;
    std::mt19937_64 rng_;
    std::vector<uint64_t> primes_;
    std::vector<uint64_t> preset_;
    std::size_t presetNext_ = 0;
};

} // namespace hgc
