#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperdisc/bounds.hpp"
#include "hyperdisc/oracle.hpp"

using namespace hyperdisc;

TEST_CASE("chernoff bound values and hypothesis") {
    CHECK(chernoff_bound(5.0, 0.0) == doctest::Approx(2.0));
    CHECK(chernoff_bound(100.0, 20.0) == doctest::Approx(2.0 * std::exp(-1.0)));
    CHECK_THROWS_AS(chernoff_bound(10.0, 11.0), std::invalid_argument);
    CHECK_THROWS_AS(chernoff_bound(10.0, -1.0), std::invalid_argument);
}

TEST_CASE("chernoff bound dominates a quick Monte Carlo") {
    std::mt19937_64 rng(2);
    std::binomial_distribution<int> bin(200, 0.5);
    const int samples = 20000;
    int exceed = 0;
    for (int i = 0; i < samples; ++i)
        if (std::abs(bin(rng) - 100) > 20) ++exceed;
    double freq = static_cast<double>(exceed) / samples;
    double bound = chernoff_bound(100.0, 20.0);
    CHECK(freq <= bound + 3.0 * std::sqrt(bound / samples));
}

TEST_CASE("janson bound values") {
    CHECK(janson_bound(1.0, 0.0, 1.0) == doctest::Approx(std::exp(-0.5)));
    CHECK(janson_bound(100.0, 50.0, 30.0) == doctest::Approx(std::exp(-3.6)));
    CHECK_THROWS_AS(janson_bound(1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("janson bound dominates the independent case") {
    std::mt19937_64 rng(3);
    std::binomial_distribution<int> bin(100, 0.3);
    const int samples = 20000;
    int low = 0;
    for (int i = 0; i < samples; ++i)
        if (bin(rng) <= 30 - 15) ++low;
    double freq = static_cast<double>(low) / samples;
    double bound = janson_bound(30.0, 0.0, 15.0);
    CHECK(freq <= bound + 3.0 * std::sqrt(bound / samples));
}

TEST_CASE("entropy values, symmetry, endpoints") {
    CHECK(entropy(0.5) == doctest::Approx(-std::log(2.0)));
    CHECK(entropy(0.3) == doctest::Approx(entropy(0.7)));
    CHECK(std::exp(10.0 * entropy(0.5)) == doctest::Approx(std::pow(2.0, -10.0)));
    CHECK_THROWS_AS(entropy(0.0), std::invalid_argument);
    CHECK_THROWS_AS(entropy(1.0), std::invalid_argument);
}

TEST_CASE("binomial sandwich anchors") {
    auto r = check_binomial_sandwich(10, 0.5);
    // C(10,5) sqrt(10/4) 2^-10 = 252 * 1.5811 / 1024
    CHECK(r.value == doctest::Approx(252.0 * std::sqrt(2.5) / 1024.0).epsilon(1e-9));
    CHECK(r.lower == doctest::Approx(std::sqrt(2.0 * 3.14159265358979) / std::exp(2.0)).epsilon(1e-9));
    CHECK(r.upper == doctest::Approx(std::exp(1.0) / (2.0 * 3.14159265358979)).epsilon(1e-9));
    CHECK(r.ok);
    auto r2 = check_binomial_sandwich(2, 0.5);
    CHECK(r2.value == doctest::Approx(2.0 * std::sqrt(0.5) * 0.25).epsilon(1e-9));
    CHECK(r2.ok);
    CHECK_THROWS_AS(check_binomial_sandwich(10, 0.123), std::invalid_argument);
    for (std::int64_t m = 10; m <= 50; m += 10)
        for (std::int64_t j = 1; j < m; ++j)
            CHECK(check_binomial_sandwich(m, static_cast<double>(j) / static_cast<double>(m)).ok);
}

TEST_CASE("hypergeometric tail lower bound check") {
    auto r = hypergeom_tail_lower_check(1000, 600, 600, 1.0);
    CHECK(r.delta == doctest::Approx(std::sqrt(360.0)));
    CHECK(r.ok);
    // exact tail over t >= 379, frozen from the rational oracle; far above e^-40
    CHECK(r.tail == doctest::Approx(0.00745450141).epsilon(1e-6));
    CHECK(hypergeom_tail_lower_check(1000, 600, 600, 3.0).ok);
    // K above d1 d2 / (100 N) = 3.6
    CHECK_THROWS_AS(hypergeom_tail_lower_check(1000, 600, 600, 3.7), std::invalid_argument);
    CHECK_THROWS_AS(hypergeom_tail_lower_check(1000, 600, 600, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(hypergeom_tail_lower_check(1000, 700, 600, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(hypergeom_tail_lower_check(1000, 0, 600, 1.0), std::invalid_argument);
}

TEST_CASE("lambda quantile anchors") {
    CHECK(lambda_quantile(10, 0.5, 0.0) == doctest::Approx(-5.0));
    CHECK(lambda_quantile(10, 0.5, std::log(10.0)) == doctest::Approx(2.0));
    CHECK(lambda_quantile(4, 0.5, 10.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(lambda_quantile(0, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(lambda_quantile(10, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("lambda agrees with direct maximization over integer t") {
    for (std::int64_t m = 1; m <= 15; ++m) {
        for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            for (double K : {0.5, 1.0, 2.0, std::log(30.0)}) {
                double theta = std::exp(-K);
                std::int64_t best_t = 0;
                for (std::int64_t t = 0; t <= m; ++t)
                    if (binom_tail_exact(m, mpq_class(rho), t).get_d() >= theta) best_t = t;
                CHECK(lambda_threshold(m, rho, K) == best_t);
            }
        }
    }
}

TEST_CASE("lambda threshold monotone in m, lambda monotone in K") {
    for (double rho : {0.2, 0.5, 0.8}) {
        for (double K : {0.5, 1.0, 3.0}) {
            std::int64_t prev = 0;
            for (std::int64_t m = 1; m <= 64; ++m) {
                std::int64_t cur = lambda_threshold(m, rho, K);
                CHECK(cur >= prev);
                prev = cur;
            }
        }
        double prev_l = -1e18;
        for (double K : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
            double cur = lambda_quantile(40, rho, K);
            CHECK(cur >= prev_l);
            prev_l = cur;
        }
    }
}

TEST_CASE("regime classification anchors") {
    auto dense = classify_regime(100, 2, 0.5, 0.5);
    CHECK(dense.N == doctest::Approx(50.0));
    CHECK(dense.regime == Regime::Dense);
    CHECK(!dense.low_pn_flag);

    CHECK(classify_regime(12, 3, 0.1, 0.2).N == doctest::Approx(28.0));

    auto sparse = classify_regime(1000000, 2, 3e-4, 3e-4);
    CHECK(sparse.regime == Regime::Sparse21);
    CHECK(sparse.gamma == doctest::Approx(std::log(1e6) / (3e-4 * 3e-4 * 500000.0)));

    CHECK_THROWS_AS(classify_regime(100, 2, 0.4, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(classify_regime(100, 2, 0.4, 0.6), std::invalid_argument);
    CHECK_THROWS_AS(classify_regime(100, 2, 0.0, 0.3), std::invalid_argument);

    CHECK(classify_regime(100, 2, 0.05, 0.5).low_pn_flag);  // pN = 2.5 < 8
}

TEST_CASE("regime boundary is exact under 1e-12 perturbations") {
    const std::int64_t n = 50;
    const int k = 2;
    const double N = 25.0;
    const double target_pq = std::log(static_cast<double>(n)) / (30.0 * N);
    const double p = 0.04;
    double q_above = target_pq * (1.0 + 1e-12) / p;
    double q_below = target_pq * (1.0 - 1e-12) / p;
    CHECK(classify_regime(n, k, p, q_above).regime == Regime::Dense);
    CHECK(classify_regime(n, k, p, q_below).regime != Regime::Dense);
}

TEST_CASE("lambda-route prediction brackets the branch prediction") {
    auto rp = classify_regime(100, 2, 0.5, 0.5);
    double via = predicted_disc_via_lambda(100, 2, 0.5, 0.5);
    CHECK(via / rp.predicted >= 1.0 / 8.0);
    CHECK(via / rp.predicted <= 8.0);
    // p so small that p C(n-1, k-1) rounds below 1
    CHECK(predicted_disc_via_lambda(100, 2, 1e-4, 0.5) >= -1e9);
    double prev = -1e300;
    for (double q : {0.1, 0.2, 0.3, 0.4, 0.5}) {
        double cur = predicted_disc_via_lambda(200, 2, 0.05, q);
        CHECK(cur >= prev - 1e-9);
        prev = cur;
    }
}

TEST_CASE("upper envelope branches") {
    auto e100 = upper_envelope(100, 2, 0.5, 0.5);
    CHECK(e100.eps == doctest::Approx(4.0 * std::pow(100.0, 0.25) * std::sqrt(0.25 * 4950.0)));
    CHECK(e100.sparse_branch);  // pq C = 1237.5 <= 4 n log n
    CHECK(e100.gamma_prime >= std::exp(1.0));

    double prev_ratio = 1.0;
    for (std::int64_t n : {1000, 10000, 100000}) {
        auto env = upper_envelope(n, 2, 0.5, 0.5);
        CHECK(!env.sparse_branch);
        double ratio = env.eps / env.lambda;
        CHECK(ratio <= 0.2);
        CHECK(ratio < prev_ratio);
        prev_ratio = ratio;
    }
}
