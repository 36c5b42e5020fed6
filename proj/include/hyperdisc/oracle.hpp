// Ground-truth brute force: disc(G,H) over all n! bijections, disc(H) over
// all 2^n subsets, the subset/pair reduction, and exact binomial and
// hypergeometric tails (GMP rationals below the size switch, compensated
// log-space summation above it).
#ifndef HYPERDISC_ORACLE_HPP
#define HYPERDISC_ORACLE_HPP

#include <cstdint>
#include <gmpxx.h>

#include "hyperdisc/hypergraph.hpp"
#include "hyperdisc/report.hpp"

namespace hyperdisc {

struct OracleGuard {
    int pair_limit = 10;    // n! enumeration refuses above this n
    int subset_limit = 20;  // 2^n enumeration refuses above this n
    bool force = false;     // explicit override
};

// Enumerates every bijection in lexicographic order; witnesses are the first
// optimum encountered. Partitioned over the image of vertex 0 when threads
// permit; the merged result is bitwise identical to a single-task run.
DiscrepancyReport exact_disc_pair(const Hypergraph& g, const Hypergraph& h,
                                  const OracleGuard& guard = {}, int threads = 0);

// Same contract as exact_disc_pair, pruning subtrees whose partial-overlap
// bound cannot strictly improve the incumbent. Kept as a cross-check; must
// match the plain enumerator everywhere.
DiscrepancyReport exact_disc_pair_pruned(const Hypergraph& g, const Hypergraph& h,
                                         const OracleGuard& guard = {});

DiscrepancyReport exact_disc_subset(const Hypergraph& h, const OracleGuard& guard = {},
                                    int threads = 0);

// disc(H) == max_i disc(G_i, H) where G_i is the complete i-vertex hypergraph
// plus isolated vertices; the pair baseline is rho_{G_i} rho_H C(n,k).
bool verify_reduction(const Hypergraph& h, const OracleGuard& guard = {});

// --- exact and log-space distributions ---

// P[Hypergeometric(N, d1, d2) = t]; zero outside the support by the empty
// binomial convention. Parameter violations (d1, d2 > N, negatives) throw.
mpq_class hypergeom_pmf_exact(std::int64_t N, std::int64_t d1, std::int64_t d2, std::int64_t t);
double hypergeom_pmf_log(std::int64_t N, std::int64_t d1, std::int64_t d2, std::int64_t t);

// P[Hypergeometric >= t_lo], exact summation for N <= exact cap (4096),
// log-space otherwise. Returns a plain double.
double hypergeom_tail(std::int64_t N, std::int64_t d1, std::int64_t d2, std::int64_t t_lo);
mpq_class hypergeom_tail_exact(std::int64_t N, std::int64_t d1, std::int64_t d2, std::int64_t t_lo);

// P[Binomial(m, rho) >= t] for 0 <= t <= m+1 (t = m+1 gives 0). Exact
// rational for m <= 64 (rho taken as the exact binary value of the double),
// largest-term-first compensated log-space summation above.
double binom_tail(std::int64_t m, double rho, std::int64_t t);
mpq_class binom_tail_exact(std::int64_t m, const mpq_class& rho, std::int64_t t);
double binom_tail_log(std::int64_t m, double rho, std::int64_t t);

constexpr std::int64_t kBinomExactLimit = 64;
constexpr std::int64_t kHypergeomExactLimit = 4096;

}  // namespace hyperdisc

#endif
