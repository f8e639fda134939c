#include "hgc/rank.hpp"
#include <algorithm>
#include <queue>
#include <map>

namespace hgc {

bool ratModP(const Rat& q, uint64_t p, uint64_t& out) {
    uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
    if (den == 0) return false;
    uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p);
    out = (num * (unsigned __int128)invModP(den, p)) % p;
    return true;
}

uint64_t powModP(uint64_t base, uint64_t exp, uint64_t p) {
    unsigned __int128 acc = 1, b = base % p;
    while (exp) {
        if (exp & 1) acc = acc * b % p;
        b = b * b % p;
        exp >>= 1;
    }
    return (uint64_t)acc;
}

uint64_t invModP(uint64_t a, uint64_t p) { return powModP(a % p, p - 2, p); }

bool isPrimeU64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powModP(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i < s - 1; ++i) {
            x = (uint64_t)((unsigned __int128)x * x % n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

namespace {

// shared elimination skeleton over a field; Field provides value type and ops
template <class Val, class Ops>
int eliminate(std::vector<std::vector<std::pair<int, Val>>> rows, int ncols, const Ops& ops) {
    int nrows = (int)rows.size();
    std::vector<bool> active(nrows, true);
    std::vector<std::vector<int>> colRows(ncols);
    for (int r = 0; r < nrows; ++r)
        for (auto& [c, v] : rows[r]) colRows[c].push_back(r);

    auto rowHas = [&](int r, int c) {
        auto& row = rows[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const std::pair<int, Val>& a, int b) { return a.first < b; });
        return it != row.end() && it->first == c;
    };
    auto cleanup = [&](int c) -> std::vector<int>& {
        auto& v = colRows[c];
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        v.erase(std::remove_if(v.begin(), v.end(),
                               [&](int r) { return !active[r] || !rowHas(r, c); }),
                v.end());
        return v;
    };

    using HeapEntry = std::pair<std::size_t, int>; // (count, col)
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap;
    for (int c = 0; c < ncols; ++c)
        if (!colRows[c].empty()) heap.push({colRows[c].size(), c});

    int rank = 0;
    while (!heap.empty()) {
        auto [cnt, c] = heap.top();
        heap.pop();
        auto& rs = cleanup(c);
        if (rs.empty()) continue;
        if (rs.size() != cnt) { heap.push({rs.size(), c}); continue; }

        int piv = rs[0];
        for (int r : rs)
            if (rows[r].size() < rows[piv].size() ||
                (rows[r].size() == rows[piv].size() && r < piv))
                piv = r;
        ++rank;
        active[piv] = false;

        auto pivRow = rows[piv];
        Val pivVal{};
        for (auto& [cc, v] : pivRow)
            if (cc == c) pivVal = v;
        Val pivInv = ops.inv(pivVal);

        for (int r : rs) {
            if (r == piv || !active[r]) continue;
            Val factor{};
            for (auto& [cc, v] : rows[r])
                if (cc == c) factor = v;
            factor = ops.mul(factor, pivInv);
            // rows[r] -= factor * pivRow
            std::vector<std::pair<int, Val>> merged;
            merged.reserve(rows[r].size() + pivRow.size());
            auto itA = rows[r].begin(), endA = rows[r].end();
            auto itB = pivRow.begin(), endB = pivRow.end();
            while (itA != endA || itB != endB) {
                if (itB == endB || (itA != endA && itA->first < itB->first)) {
                    merged.push_back(*itA++);
                } else if (itA == endA || itB->first < itA->first) {
                    Val nv = ops.neg(ops.mul(factor, itB->second));
                    if (!ops.zero(nv)) {
                        merged.push_back({itB->first, nv});
                        colRows[itB->first].push_back(r);
                    }
                    ++itB;
                } else {
                    Val nv = ops.sub(itA->second, ops.mul(factor, itB->second));
                    if (!ops.zero(nv)) merged.push_back({itA->first, nv});
                    ++itA;
                    ++itB;
                }
            }
            rows[r] = std::move(merged);
        }
        for (auto& [cc, v] : pivRow) {
            if (cc == c) continue;
            heap.push({colRows[cc].size(), cc});
        }
    }
    return rank;
}

struct ModOps {
    uint64_t p;
    uint64_t inv(uint64_t a) const { return invModP(a, p); }
    uint64_t mul(uint64_t a, uint64_t b) const { return (uint64_t)((unsigned __int128)a * b % p); }
    uint64_t sub(uint64_t a, uint64_t b) const { return (a + p - b) % p; }
    uint64_t neg(uint64_t a) const { return a ? p - a : 0; }
    bool zero(uint64_t a) const { return a == 0; }
};

struct RatOps {
    Rat inv(const Rat& a) const { return Rat(1) / a; }
    Rat mul(const Rat& a, const Rat& b) const { return a * b; }
    Rat sub(const Rat& a, const Rat& b) const { return a - b; }
    Rat neg(const Rat& a) const { return -a; }
    bool zero(const Rat& a) const { return a == 0; }
};

} // namespace

int rankModP(const SparseMatrix& m, uint64_t p) {
    std::vector<std::vector<std::pair<int, uint64_t>>> rows(m.rows());
    for (auto& e : m.entries()) {
        uint64_t v;
        if (!ratModP(e.val, p, v)) throw BadPrimeError(p);
        if (v) rows[e.row].push_back({e.col, v});
    }
    for (auto& r : rows) std::sort(r.begin(), r.end());
    return eliminate<uint64_t>(std::move(rows), m.cols(), ModOps{p});
}

int rankExact(const SparseMatrix& m) {
    std::vector<std::vector<std::pair<int, Rat>>> rows(m.rows());
    for (auto& e : m.entries()) rows[e.row].push_back({e.col, e.val});
    for (auto& r : rows) std::sort(r.begin(), r.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return eliminate<Rat>(std::move(rows), m.cols(), RatOps{});
}

int rankExactDense(std::vector<std::vector<Rat>> a) {
    int n = (int)a.size();
    if (n == 0) return 0;
    int mcols = (int)a[0].size();
    int rank = 0;
    for (int c = 0; c < mcols && rank < n; ++c) {
        int piv = -1;
        for (int r = rank; r < n; ++r)
            if (a[r][c] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        Rat pv = a[rank][c];
        for (int r = 0; r < n; ++r) {
            if (r == rank || a[r][c] == 0) continue;
            Rat f = a[r][c] / pv;
            for (int cc = c; cc < mcols; ++cc) a[r][cc] -= f * a[rank][cc];
        }
        ++rank;
    }
    return rank;
}

uint64_t RankEngine::freshPrime() {
    while (presetNext_ < preset_.size()) {
        uint64_t p = preset_[presetNext_++];
        if (p > (1ull << 30) && isPrimeU64(p)) return p;
        throw std::invalid_argument("preset prime rejected: must be a prime > 2^30");
    }
    for (;;) {
        uint64_t c = (rng_() % (1ull << 30)) + (1ull << 30) + 1;
        c |= 1;
        if (isPrimeU64(c)) return c;
    }
}

int RankEngine::rank(const SparseMatrix& m) {
    if (m.nnz() == 0) return 0;
    if (exact_) return rankExact(m);
    std::vector<int> ranks;
    bool disagreed = false;
    for (;;) {
        uint64_t p = freshPrime();
        int r;
        try {
            r = rankModP(m, p);
        } catch (const BadPrimeError&) {
            continue; // denominator hit; draw another prime silently
        }
        primes_.push_back(p);
        for (int prev : ranks)
            if (prev == r) {
                if (disagreed && m.nnz() <= 5000) {
                    int re = rankExact(m);
                    if (re != r) return re;
                }
                return r;
            }
        if (!ranks.empty()) disagreed = true;
        ranks.push_back(r);
    }
}

} // namespace hgc
