// Binomial coefficients and the colexicographic ranking of k-subsets.
//
// Colex rank of {v_1 < v_2 < ... < v_k} is sum_i C(v_i, i). Ranks are stable
// under growing n, so edge ids survive incremental experiments.
#ifndef HYPERDISC_BINOMIAL_HPP
#define HYPERDISC_BINOMIAL_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace hyperdisc {

// Exact C(n,k); throws std::overflow_error past the 63-bit range.
inline std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > static_cast<unsigned __int128>(INT64_MAX))
            throw std::overflow_error("binom: exceeds 63-bit range");
    }
    return static_cast<std::uint64_t>(r);
}

// log C(n,k), for bound formulas where n may be far past the exact range.
inline double lchoose(double n, double k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    if (k == 0 || k == n) return 0.0;
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Lookup table C(v, i) for 0 <= v <= n, 0 <= i <= k; the hot path of
// rank/unrank inside the oracle's permutation loop.
class BinomTable {
public:
    BinomTable() = default;
    BinomTable(std::uint64_t n, std::uint64_t k) : n_(n), k_(k), at_((n + 1) * (k + 1), 0) {
        for (std::uint64_t v = 0; v <= n; ++v) {
            at_[v * (k_ + 1)] = 1;
            for (std::uint64_t i = 1; i <= k && i <= v; ++i) {
                std::uint64_t a = v >= 1 ? get(v - 1, i) : 0;
                std::uint64_t b = v >= 1 ? get(v - 1, i - 1) : 0;
                at_[v * (k_ + 1) + i] = a + b;
            }
        }
    }
    std::uint64_t get(std::uint64_t v, std::uint64_t i) const {
        return i > v ? 0 : at_[v * (k_ + 1) + i];
    }
    std::uint64_t n() const { return n_; }
    std::uint64_t k() const { return k_; }

private:
    std::uint64_t n_ = 0, k_ = 0;
    std::vector<std::uint64_t> at_;
};

// Colex rank of a strictly increasing k-tuple with entries in [0, n).
inline std::uint64_t rank_subset(std::span<const int> tuple, int n) {
    std::uint64_t r = 0;
    int prev = -1;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        int v = tuple[i];
        if (v <= prev) throw std::invalid_argument("rank_subset: tuple not strictly increasing");
        if (v < 0 || v >= n) throw std::invalid_argument("rank_subset: vertex out of range");
        r += binom(static_cast<std::uint64_t>(v), i + 1);
        prev = v;
    }
    return r;
}

// Table-driven variant for inner loops; caller guarantees validity.
inline std::uint64_t rank_subset(std::span<const int> tuple, const BinomTable& tab) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i)
        r += tab.get(static_cast<std::uint64_t>(tuple[i]), i + 1);
    return r;
}

// Inverse of rank_subset on the domain of k-subsets of [0, n).
inline std::vector<int> unrank_subset(std::uint64_t rank, int n, int k) {
    if (rank >= binom(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)))
        throw std::invalid_argument("unrank_subset: rank out of range");
    std::vector<int> out(static_cast<std::size_t>(k));
    std::uint64_t rem = rank;
    int hi = n;
    for (int i = k; i >= 1; --i) {
        // largest v with C(v, i) <= rem; lo is always feasible since C(i-1, i) = 0
        int lo = i - 1;
        int up = hi - 1;
        while (lo < up) {
            int mid = lo + (up - lo + 1) / 2;
            if (binom(static_cast<std::uint64_t>(mid), static_cast<std::uint64_t>(i)) <= rem)
                lo = mid;
            else
                up = mid - 1;
        }
        out[static_cast<std::size_t>(i - 1)] = lo;
        rem -= binom(static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(i));
        hi = lo;
    }
    return out;
}

}  // namespace hyperdisc

#endif
