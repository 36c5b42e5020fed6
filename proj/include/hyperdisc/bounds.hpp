// Concentration inequalities as evaluable functions, the binomial
// rate-function quantity Lambda, regime classification with predicted
// discrepancy orders, and the upper-bound envelopes.
//
// Natural logarithm throughout.
#ifndef HYPERDISC_BOUNDS_HPP
#define HYPERDISC_BOUNDS_HPP

#include <cstdint>
#include <string>

namespace hyperdisc {

enum class Regime { Dense, Sparse21, Sparse22 };

std::string regime_name(Regime r);

struct RegimeParams {
    std::int64_t n = 0;
    int k = 0;
    double p = 0, q = 0;
    double N = 0;          // C(n - floor(n/k), k-1)
    double gamma = 0;      // log n / (pqN), sparse regimes only
    Regime regime = Regime::Dense;
    double predicted = 0;  // branch order with constant 1
    bool low_pn_flag = false;  // pN < 8: below the survival lemma's working range
};

// Two-sided binomial deviation bound 2 exp(-lambda^2 / 4 mu); raw value
// (may exceed 1), callers clamp when reporting. Requires 0 <= lambda <= mu.
double chernoff_bound(double mu, double lambda);

// Lower-tail bound exp(-lambda^2 / (2 mu + Delta)).
double janson_bound(double mu, double delta, double lambda);

// p log p + (1-p) log(1-p); negative on (0,1), endpoints rejected.
double entropy(double p);

struct SandwichCheck {
    double value = 0;  // C(m, pm) sqrt(m p (1-p)) e^{m H(p)}
    double lower = 0;  // sqrt(2 pi) / e^2
    double upper = 0;  // e / (2 pi)
    bool ok = false;
};
// Requires pm integral (within 1e-9).
SandwichCheck check_binomial_sandwich(std::int64_t m, double p);

struct HypergeomTailCheck {
    double tail = 0;   // exact sum over t >= d1 d2 / N + Delta
    double bound = 0;  // e^{-40K}
    double delta = 0;  // sqrt(d1 d2 K / N)
    bool ok = false;
};
// Hypotheses: 1 <= d1, d2 <= 2N/3 and 1 <= K <= d1 d2 / (100 N); violations
// throw naming the failed constraint.
HypergeomTailCheck hypergeom_tail_lower_check(std::int64_t N, std::int64_t d1, std::int64_t d2,
                                              double K);

// Largest integer t in [0, m] with P[X >= t] >= e^{-K}, X ~ Bin(m, rho).
std::int64_t lambda_threshold(std::int64_t m, double rho, double K);

// Lambda(m, rho, K) = t* - m rho, the largest upper deviation still achieved
// with probability >= e^{-K}, realized on integer support.
double lambda_quantile(std::int64_t m, double rho, double K);

// Theorem-style regime split. Requires 2 <= k < n and 0 < p <= q <= 1/2;
// q > 1/2 or p > q must be handled by the complement reduction upstream.
RegimeParams classify_regime(std::int64_t n, int k, double p, double q);

// n * Lambda(round(p C(n-1,k-1)), q, log n), the unified prediction route.
double predicted_disc_via_lambda(std::int64_t n, int k, double p, double q);

struct Envelope {
    double eps = 0;          // 4 n^{1/4} sqrt(pq C(n,k))
    double lambda = 0;       // branch bound for disc_P
    bool sparse_branch = false;  // true when pq C(n,k) <= 4 n log n
    double gamma_prime = 0;      // 4 e n log n / (pq C(n,k)), sparse branch
};
Envelope upper_envelope(std::int64_t n, int k, double p, double q);

}  // namespace hyperdisc

#endif
