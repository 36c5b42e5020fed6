#include "hyperdisc/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hyperdisc/binomial.hpp"
#include "hyperdisc/oracle.hpp"

namespace hyperdisc {

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::Dense: return "dense";
        case Regime::Sparse21: return "sparse-2.1";
        case Regime::Sparse22: return "sparse-2.2";
    }
    return "?";
}

double chernoff_bound(double mu, double lambda) {
    if (!(lambda >= 0)) throw std::invalid_argument("chernoff_bound: lambda < 0");
    if (!(lambda <= mu)) throw std::invalid_argument("chernoff_bound: lambda > mu violates the hypothesis");
    return 2.0 * std::exp(-lambda * lambda / (4.0 * mu));
}

double janson_bound(double mu, double delta, double lambda) {
    if (!(lambda > 0)) throw std::invalid_argument("janson_bound: lambda must be positive");
    if (!(mu >= 0) || !(delta >= 0)) throw std::invalid_argument("janson_bound: mu, Delta must be nonnegative");
    return std::exp(-lambda * lambda / (2.0 * mu + delta));
}

double entropy(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("entropy: p must lie strictly in (0,1)");
    return p * std::log(p) + (1.0 - p) * std::log1p(-p);
}

SandwichCheck check_binomial_sandwich(std::int64_t m, double p) {
    if (m <= 0) throw std::invalid_argument("check_binomial_sandwich: m must be positive");
    double pm = p * static_cast<double>(m);
    std::int64_t j = std::llround(pm);
    if (std::abs(pm - static_cast<double>(j)) > 1e-9)
        throw std::invalid_argument("check_binomial_sandwich: pm is not integral");
    if (j <= 0 || j >= m)
        throw std::invalid_argument("check_binomial_sandwich: p must lie strictly in (0,1)");
    SandwichCheck out;
    double log_value = lchoose(static_cast<double>(m), static_cast<double>(j)) +
                       0.5 * std::log(static_cast<double>(m) * p * (1.0 - p)) +
                       static_cast<double>(m) * entropy(p);
    out.value = std::exp(log_value);
    out.lower = std::sqrt(2.0 * std::numbers::pi) / (std::numbers::e * std::numbers::e);
    out.upper = std::numbers::e / (2.0 * std::numbers::pi);
    out.ok = out.lower <= out.value && out.value <= out.upper;
    return out;
}

HypergeomTailCheck hypergeom_tail_lower_check(std::int64_t N, std::int64_t d1, std::int64_t d2,
                                              double K) {
    if (d1 < 1 || d2 < 1) throw std::invalid_argument("hypergeom_tail_lower_check: need d1, d2 >= 1");
    if (3 * d1 > 2 * N || 3 * d2 > 2 * N)
        throw std::invalid_argument("hypergeom_tail_lower_check: need d1, d2 <= 2N/3");
    if (!(K >= 1.0)) throw std::invalid_argument("hypergeom_tail_lower_check: need K >= 1");
    double k_cap = static_cast<double>(d1) * static_cast<double>(d2) / (100.0 * static_cast<double>(N));
    if (!(K <= k_cap))
        throw std::invalid_argument("hypergeom_tail_lower_check: need K <= d1*d2/(100N)");
    HypergeomTailCheck out;
    double mean = static_cast<double>(d1) * static_cast<double>(d2) / static_cast<double>(N);
    out.delta = std::sqrt(mean * K);
    std::int64_t t_lo = static_cast<std::int64_t>(std::ceil(mean + out.delta - 1e-12));
    out.tail = N <= kHypergeomExactLimit ? hypergeom_tail_exact(N, d1, d2, t_lo).get_d()
                                         : hypergeom_tail(N, d1, d2, t_lo);
    out.bound = std::exp(-40.0 * K);
    out.ok = out.tail >= out.bound;
    return out;
}

std::int64_t lambda_threshold(std::int64_t m, double rho, double K) {
    if (m < 1) throw std::invalid_argument("lambda: need m >= 1");
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("lambda: need 0 < rho < 1");
    if (!(K >= 0.0)) throw std::invalid_argument("lambda: need K >= 0");
    // P[X >= t] is nonincreasing in t and equals 1 at t = 0, so the feasible
    // set {t : tail >= e^{-K}} is a prefix; binary search its right edge.
    auto feasible = [&](std::int64_t t) {
        if (m <= kBinomExactLimit)
            return binom_tail_exact(m, mpq_class(rho), t).get_d() >= std::exp(-K);
        return binom_tail_log(m, rho, t) >= -K;
    };
    std::int64_t lo = 0, hi = m;  // invariant: feasible(lo)
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo + 1) / 2;
        if (feasible(mid)) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

double lambda_quantile(std::int64_t m, double rho, double K) {
    return static_cast<double>(lambda_threshold(m, rho, K)) - static_cast<double>(m) * rho;
}

RegimeParams classify_regime(std::int64_t n, int k, double p, double q) {
    if (k < 2 || static_cast<std::int64_t>(k) >= n)
        throw std::invalid_argument("classify_regime: need 2 <= k < n");
    if (!(p > 0.0)) throw std::invalid_argument("classify_regime: need p > 0");
    if (p > q) throw std::invalid_argument("classify_regime: p > q; swap via the complement reduction");
    if (q > 0.5) throw std::invalid_argument("classify_regime: q > 1/2; apply the complement reduction");
    RegimeParams out;
    out.n = n;
    out.k = k;
    out.p = p;
    out.q = q;
    const std::int64_t n_minus = n - n / k;  // floor(n/k) removed
    try {
        out.N = static_cast<double>(binom(static_cast<std::uint64_t>(n_minus),
                                          static_cast<std::uint64_t>(k - 1)));
    } catch (const std::overflow_error&) {
        out.N = std::exp(lchoose(static_cast<double>(n_minus), static_cast<double>(k - 1)));
    }
    const double logn = std::log(static_cast<double>(n));
    out.low_pn_flag = p * out.N < 8.0;
    const double pqN = p * q * out.N;
    const double log_cnk = lchoose(static_cast<double>(n), static_cast<double>(k));
    if (pqN > logn / 30.0) {
        out.regime = Regime::Dense;
        out.predicted = std::exp(0.5 * (std::log(p * q) + log_cnk + std::log(static_cast<double>(n)) +
                                        std::log(logn)));
    } else {
        out.gamma = logn / pqN;
        if (p * out.N >= logn / (5.0 * std::log(out.gamma))) {
            out.regime = Regime::Sparse21;
            out.predicted = static_cast<double>(n) * logn / std::log(out.gamma);
        } else {
            out.regime = Regime::Sparse22;
            out.predicted = p * std::exp(log_cnk);
        }
    }
    return out;
}

double predicted_disc_via_lambda(std::int64_t n, int k, double p, double q) {
    RegimeParams rp = classify_regime(n, k, p, q);  // shares the precondition checks
    (void)rp;
    double neighborhood;
    try {
        neighborhood = static_cast<double>(binom(static_cast<std::uint64_t>(n - 1),
                                                 static_cast<std::uint64_t>(k - 1)));
    } catch (const std::overflow_error&) {
        neighborhood = std::exp(lchoose(static_cast<double>(n - 1), static_cast<double>(k - 1)));
    }
    double m_real = p * neighborhood;
    std::int64_t m = std::max<std::int64_t>(1, std::llround(m_real));
    return static_cast<double>(n) * lambda_quantile(m, q, std::log(static_cast<double>(n)));
}

Envelope upper_envelope(std::int64_t n, int k, double p, double q) {
    RegimeParams rp = classify_regime(n, k, p, q);
    (void)rp;
    Envelope out;
    const double logn = std::log(static_cast<double>(n));
    const double cnk = std::exp(lchoose(static_cast<double>(n), static_cast<double>(k)));
    const double pq_cnk = p * q * cnk;
    out.eps = 4.0 * std::pow(static_cast<double>(n), 0.25) * std::sqrt(pq_cnk);
    const double nlogn = static_cast<double>(n) * logn;
    if (pq_cnk > 4.0 * nlogn) {
        out.sparse_branch = false;
        out.lambda = 2.0 * std::sqrt(pq_cnk * nlogn);
    } else {
        out.sparse_branch = true;
        out.gamma_prime = 4.0 * std::numbers::e * nlogn / pq_cnk;
        out.lambda = 4.0 * std::numbers::e * std::numbers::e * nlogn / std::log(out.gamma_prime);
    }
    return out;
}

}  // namespace hyperdisc
