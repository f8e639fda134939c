#pragma once
#include <gmpxx.h>
#include <string>
#include <cstdint>

namespace hgc {

using Rat = mpq_class;

inline std::string ratStr(const Rat& q) { return q.get_str(); }

inline Rat ratOf(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// value of q mod p, reducing numerator and inverting denominator.
// Returns false if the denominator vanishes mod p (bad prime).
bool ratModP(const Rat& q, uint64_t p, uint64_t& out);

uint64_t powModP(uint64_t base, uint64_t exp, uint64_t p);
uint64_t invModP(uint64_t a, uint64_t p);
bool isPrimeU64(uint64_t n);

} // namespace hgc
