#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "hyperdisc/oracle.hpp"

using namespace hyperdisc;

namespace {

// Independent pair oracle working on raw sorted tuples, no ranks involved.
struct NaiveMinMax {
    std::int64_t max_ov, min_ov;
};

NaiveMinMax naive_minmax_overlap(const Hypergraph& g, const Hypergraph& h) {
    auto g_edges = g.edge_tuples();
    std::set<std::vector<int>> h_set;
    for (auto& t : h.edge_tuples()) h_set.insert(t);
    std::vector<int> perm(static_cast<std::size_t>(g.n()));
    for (int i = 0; i < g.n(); ++i) perm[static_cast<std::size_t>(i)] = i;
    std::int64_t best = -1, worst = -1;
    do {
        std::int64_t ov = 0;
        for (const auto& t : g_edges) {
            std::vector<int> img;
            for (int v : t) img.push_back(perm[static_cast<std::size_t>(v)]);
            std::sort(img.begin(), img.end());
            if (h_set.count(img)) ++ov;
        }
        best = std::max(best, ov);
        worst = worst < 0 ? ov : std::min(worst, ov);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {best, worst};
}

Hypergraph complete_graph(int n, int k) { return sample_hypergraph(n, k, 1.0, 0); }

}  // namespace

TEST_CASE("exact_disc_pair anchors") {
    auto complete = complete_graph(4, 2);
    auto rep = exact_disc_pair(complete, complete);
    CHECK(rep.value == Rational(0));
    CHECK(rep.plus_value == Rational(0));
    CHECK(rep.minus_value == Rational(0));
    CHECK(self_check(rep, complete, complete));

    Hypergraph empty(4, 2, {});
    auto rep2 = exact_disc_pair(empty, complete);
    CHECK(rep2.value == Rational(0));
    CHECK(rep2.baseline == Rational(0));

    // G={{0,1}}, H={{0,1},{0,2}}: baseline 2/3, max 1, min 0
    Hypergraph g(3, 2, {0});
    Hypergraph h(3, 2, {0, 1});
    auto rep3 = exact_disc_pair(g, h);
    CHECK(rep3.baseline == Rational(2, 3));
    CHECK(rep3.plus_value == Rational(1, 3));
    CHECK(rep3.minus_value == Rational(2, 3));
    CHECK(rep3.value == Rational(2, 3));
    CHECK(rep3.provenance == "oracle");
    CHECK(self_check(rep3, g, h));
}

TEST_CASE("exact_disc_pair agrees with the naive tuple-set oracle") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 15; ++it) {
        int n = 4 + static_cast<int>(rng() % 3);
        int k = 2 + static_cast<int>(rng() % 2);
        auto g = sample_hypergraph(n, k, 0.5, rng());
        auto h = sample_hypergraph(n, k, 0.5, rng());
        auto naive = naive_minmax_overlap(g, h);
        auto rep = exact_disc_pair(g, h);
        Rational baseline = pair_baseline(g, h);
        CHECK(rep.plus_value == Rational(naive.max_ov) - baseline);
        CHECK(rep.minus_value == baseline - Rational(naive.min_ov));
        CHECK(rep.minus_value <= rep.baseline);  // disc- <= rho_G rho_H C(n,k)
    }
}

TEST_CASE("exact_disc_pair is invariant under relabeling") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 10; ++it) {
        int n = 5 + static_cast<int>(rng() % 2);
        auto g = sample_hypergraph(n, 2, 0.5, rng());
        auto h = sample_hypergraph(n, 2, 0.5, rng());
        std::vector<int> pa(static_cast<std::size_t>(n)), pb(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pa[static_cast<std::size_t>(i)] = pb[static_cast<std::size_t>(i)] = i;
        std::shuffle(pa.begin(), pa.end(), rng);
        std::shuffle(pb.begin(), pb.end(), rng);
        auto rep = exact_disc_pair(g, h);
        auto rep2 = exact_disc_pair(apply_bijection(g, Bijection(pa)), apply_bijection(h, Bijection(pb)));
        CHECK(rep.value == rep2.value);
    }
}

TEST_CASE("complement identity disc(G, H-bar) == disc(G, H)") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 10; ++it) {
        int n = 4 + static_cast<int>(rng() % 3);
        auto g = sample_hypergraph(n, 2, 0.4, rng());
        auto h = sample_hypergraph(n, 2, 0.6, rng());
        CHECK(exact_disc_pair(g, h).value == exact_disc_pair(g, complement(h)).value);
    }
}

TEST_CASE("partitioned enumeration is bitwise identical to single-task") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 6; ++it) {
        int n = 5 + static_cast<int>(rng() % 2);
        auto g = sample_hypergraph(n, 2, 0.5, rng());
        auto h = sample_hypergraph(n, 2, 0.5, rng());
        auto one = exact_disc_pair(g, h, {}, 1);
        auto many = exact_disc_pair(g, h, {}, 8);
        CHECK(one.to_json_string() == many.to_json_string());
    }
}

TEST_CASE("pruned enumerator matches the plain one exactly") {
    std::mt19937_64 rng(19);
    for (int it = 0; it < 10; ++it) {
        int n = 4 + static_cast<int>(rng() % 3);
        int k = 2 + static_cast<int>(rng() % 2);
        auto g = sample_hypergraph(n, k, 0.5, rng());
        auto h = sample_hypergraph(n, k, 0.5, rng());
        CHECK(exact_disc_pair(g, h).to_json_string() == exact_disc_pair_pruned(g, h).to_json_string());
    }
}

TEST_CASE("guards refuse and force overrides") {
    Hypergraph big(11, 2, {});
    CHECK_THROWS_AS(exact_disc_pair(big, big), std::domain_error);
    Hypergraph wide(21, 2, {});
    CHECK_THROWS_AS(exact_disc_subset(wide), std::domain_error);
    OracleGuard forced;
    forced.pair_limit = 4;
    Hypergraph small = complete_graph(5, 2);
    CHECK_THROWS_AS(exact_disc_pair(small, small, forced), std::domain_error);
    forced.force = true;
    CHECK(exact_disc_pair(small, small, forced).value == Rational(0));
}

TEST_CASE("exact_disc_subset anchors and naive cross-check") {
    auto complete = complete_graph(5, 2);
    CHECK(exact_disc_subset(complete).value == Rational(0));
    Hypergraph empty(5, 2, {});
    CHECK(exact_disc_subset(empty).value == Rational(0));

    Hypergraph h(3, 2, {0});
    auto rep = exact_disc_subset(h);
    CHECK(rep.value == Rational(2, 3));
    CHECK(std::get<std::vector<int>>(rep.witness) == std::vector<int>{0, 1});
    CHECK(self_check(rep, h, h));

    // independent subset scan over raw tuples
    std::mt19937_64 rng(29);
    for (int it = 0; it < 10; ++it) {
        int n = 5 + static_cast<int>(rng() % 2);
        auto x = sample_hypergraph(n, 2, 0.5, rng());
        auto tuples = x.edge_tuples();
        const std::int64_t cnk = static_cast<std::int64_t>(x.candidate_count());
        const std::int64_t e = static_cast<std::int64_t>(x.edge_count());
        std::int64_t best_num = 0;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::int64_t inside = 0;
            for (const auto& t : tuples) {
                bool in = true;
                for (int v : t)
                    if (!(mask & (1u << v))) { in = false; break; }
                if (in) ++inside;
            }
            int s = std::popcount(mask);
            std::int64_t cs2 = s >= 2 ? static_cast<std::int64_t>(s) * (s - 1) / 2 : 0;
            best_num = std::max(best_num, std::abs(inside * cnk - e * cs2));
        }
        CHECK(exact_disc_subset(x).value == Rational(best_num, cnk));
    }
}

TEST_CASE("subset oracle parallel equals serial") {
    auto h = sample_hypergraph(10, 2, 0.5, 77);
    CHECK(exact_disc_subset(h, {}, 1).to_json_string() == exact_disc_subset(h, {}, 8).to_json_string());
}

TEST_CASE("reduction to pair discrepancies") {
    CHECK(verify_reduction(complete_graph(5, 2)));
    CHECK(verify_reduction(Hypergraph(5, 2, {})));
    std::mt19937_64 rng(31);
    for (int it = 0; it < 5; ++it)
        CHECK(verify_reduction(sample_hypergraph(6, 2, 0.5, rng())));
}

TEST_CASE("hypergeometric pmf anchors") {
    CHECK(hypergeom_pmf_exact(10, 4, 3, 5) == mpq_class(0));
    CHECK(hypergeom_pmf_exact(4, 2, 2, 1) == mpq_class(2, 3));
    mpq_class total = 0;
    for (std::int64_t t = 0; t <= 20; ++t) total += hypergeom_pmf_exact(50, 20, 30, t);
    CHECK(total == mpq_class(1));
    CHECK_THROWS_AS(hypergeom_pmf_exact(10, 11, 3, 2), std::invalid_argument);
}

TEST_CASE("hypergeometric log pmf tracks the exact values") {
    for (std::int64_t N : {20, 50, 120, 200}) {
        for (std::int64_t d1 : {N / 5, N / 2, 2 * N / 3}) {
            for (std::int64_t d2 : {N / 4, N / 2}) {
                for (std::int64_t t = std::max<std::int64_t>(0, d2 - (N - d1)); t <= std::min(d1, d2); ++t) {
                    double ex = hypergeom_pmf_exact(N, d1, d2, t).get_d();
                    double lg = std::exp(hypergeom_pmf_log(N, d1, d2, t));
                    CHECK(std::abs(lg - ex) <= 1e-12 * std::max(1e-300, ex));
                }
            }
        }
    }
}

TEST_CASE("binomial tail anchors and monotonicity") {
    auto frac = [](long num, long den) {
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    };
    CHECK(binom_tail_exact(10, mpq_class(1, 2), 0) == mpq_class(1));
    CHECK(binom_tail_exact(10, mpq_class(1, 2), 8) == frac(56, 1024));
    CHECK(binom_tail_exact(10, mpq_class(1, 2), 7) == frac(176, 1024));
    CHECK(binom_tail_exact(10, mpq_class(1, 2), 11) == mpq_class(0));
    mpq_class prev = 2;
    for (std::int64_t t = 0; t <= 11; ++t) {
        mpq_class cur = binom_tail_exact(10, mpq_class(3, 10), t);
        CHECK(cur <= prev);
        prev = cur;
    }
    CHECK_THROWS_AS(binom_tail(10, 0.5, 12), std::invalid_argument);
}

TEST_CASE("log-space binomial tail agrees with the exact one at and past the switch") {
    for (std::int64_t m : {16, 40, 64, 65, 100, 200}) {
        for (double rho : {0.1, 0.3, 0.5, 0.77}) {
            for (std::int64_t t = 0; t <= m + 1; t += std::max<std::int64_t>(1, m / 7)) {
                double ex = binom_tail_exact(m, mpq_class(rho), t).get_d();
                double lg = std::exp(binom_tail_log(m, rho, t));
                CHECK(std::abs(lg - ex) <= 1e-12 * std::max(ex, 1e-250));
            }
        }
    }
}
