#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "hyperdisc/hypergraph.hpp"
#include "hyperdisc/rng.hpp"

using namespace hyperdisc;

namespace {

// Independent enumeration oracle: all k-subsets of {0..n-1} in colex order
// (compare largest elements first), built without any ranking code.
std::vector<std::vector<int>> colex_enumeration(int n, int k) {
    std::vector<std::vector<int>> subsets;
    std::vector<int> pick(static_cast<std::size_t>(k));
    // generate all combinations
    std::vector<bool> mask(static_cast<std::size_t>(n), false);
    std::fill(mask.begin(), mask.begin() + k, true);
    std::sort(mask.begin(), mask.end());
    do {
        std::vector<int> t;
        for (int i = 0; i < n; ++i)
            if (mask[static_cast<std::size_t>(i)]) t.push_back(i);
        subsets.push_back(t);
    } while (std::next_permutation(mask.begin(), mask.end()));
    std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return subsets;
}

std::vector<int> random_perm(int n, std::mt19937_64& rng) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace

TEST_CASE("colex rank matches the enumeration oracle") {
    // anchor values
    CHECK(rank_subset(std::vector<int>{0, 1}, 2) == 0);
    CHECK(rank_subset(std::vector<int>{1, 2}, 3) == 2);
    CHECK(rank_subset(std::vector<int>{1, 2, 3}, 4) == 3);
    CHECK(unrank_subset(0, 2, 2) == std::vector<int>{0, 1});
    CHECK(unrank_subset(2, 3, 2) == std::vector<int>{1, 2});
    for (int n = 2; n <= 8; ++n) {
        for (int k = 2; k <= n; ++k) {
            auto subsets = colex_enumeration(n, k);
            for (std::size_t i = 0; i < subsets.size(); ++i) {
                CHECK(rank_subset(subsets[i], n) == i);
                CHECK(unrank_subset(i, n, k) == subsets[i]);
            }
        }
    }
}

TEST_CASE("rank/unrank input validation") {
    CHECK_THROWS_AS(rank_subset(std::vector<int>{1, 1}, 3), std::invalid_argument);
    CHECK_THROWS_AS(rank_subset(std::vector<int>{2, 1}, 3), std::invalid_argument);
    CHECK_THROWS_AS(rank_subset(std::vector<int>{0, 3}, 3), std::invalid_argument);
    CHECK_THROWS_AS(rank_subset(std::vector<int>{-1, 0}, 3), std::invalid_argument);
    CHECK_THROWS_AS(unrank_subset(3, 3, 2), std::invalid_argument);
}

TEST_CASE("sampling endpoints and validation") {
    CHECK(sample_hypergraph(10, 3, 0.0, 7).edge_count() == 0);
    CHECK(sample_hypergraph(10, 3, 1.0, 7).edge_count() == binom(10, 3));
    CHECK_THROWS_AS(sample_hypergraph(10, 3, -0.1, 7), std::invalid_argument);
    CHECK_THROWS_AS(sample_hypergraph(10, 3, 1.1, 7), std::invalid_argument);
    // determinism per seed
    auto a = sample_hypergraph(12, 2, 0.4, 99);
    auto b = sample_hypergraph(12, 2, 0.4, 99);
    CHECK(a == b);
}

TEST_CASE("sampled edge counts track the binomial mean") {
    const int trials = 1000;
    const double mu = 0.5 * 190.0;
    double total = 0;
    for (int s = 0; s < trials; ++s)
        total += static_cast<double>(sample_hypergraph(20, 2, 0.5, static_cast<std::uint64_t>(s)).edge_count());
    double mean = total / trials;
    double sigma = std::sqrt(190.0 * 0.25);
    CHECK(std::abs(mean - mu) <= 4.0 * sigma);
}

TEST_CASE("sampled edge counts respect the two-sided deviation bound") {
    // |e - mu| <= 2 sqrt(mu log(1/delta)) should fail at most a 2*delta
    // fraction of the time; delta = 0.01.
    const int trials = 1000;
    const double mu = 95.0;
    const double lambda = 2.0 * std::sqrt(mu * std::log(100.0));
    int within = 0;
    for (int s = 0; s < trials; ++s) {
        double e = static_cast<double>(sample_hypergraph(20, 2, 0.5, 1000 + static_cast<std::uint64_t>(s)).edge_count());
        if (std::abs(e - mu) <= lambda) ++within;
    }
    CHECK(within >= static_cast<int>((1.0 - 2 * 0.01) * trials));
}

TEST_CASE("geometric skipping path generates plausible sparse graphs") {
    // C(2000,3) ~ 1.3e9 forces the gap-skipping generator.
    const double p = 2e-6;
    auto h = sample_hypergraph(2000, 3, p, 5);
    double mu = p * static_cast<double>(binom(2000, 3));
    double sd = std::sqrt(mu);
    CHECK(std::abs(static_cast<double>(h.edge_count()) - mu) <= 6 * sd);
    // sorted unique within range is enforced by the constructor; spot check
    const auto& ranks = h.edge_ranks();
    CHECK(std::is_sorted(ranks.begin(), ranks.end()));
    CHECK(std::adjacent_find(ranks.begin(), ranks.end()) == ranks.end());
}

TEST_CASE("bijection application: identity, composition, hand example") {
    std::mt19937_64 rng(3);
    auto g = sample_hypergraph(6, 3, 0.5, 17);
    CHECK(apply_bijection(g, Bijection(6)) == g);
    for (int it = 0; it < 25; ++it) {
        Bijection pi(random_perm(6, rng));
        Bijection sigma(random_perm(6, rng));
        CHECK(apply_bijection(apply_bijection(g, pi), sigma) ==
              apply_bijection(g, Bijection::compose(sigma, pi)));
        CHECK(apply_bijection(g, pi).edge_count() == g.edge_count());
    }
    Hypergraph single(3, 2, {rank_subset(std::vector<int>{0, 1}, 3)});
    Bijection rot(std::vector<int>{1, 2, 0});
    Hypergraph expect(3, 2, {rank_subset(std::vector<int>{1, 2}, 3)});
    CHECK(apply_bijection(single, rot) == expect);
    CHECK_THROWS_AS(apply_bijection(single, Bijection(4)), std::invalid_argument);
}

TEST_CASE("overlap: anchors and inverse symmetry") {
    Hypergraph g(3, 2, {0});       // {{0,1}}
    Hypergraph h(3, 2, {0, 1});    // {{0,1},{0,2}}
    CHECK(overlap(g, Bijection(3), h) == 1);
    CHECK(overlap(h, Bijection(3), h) == 2);
    Hypergraph empty(3, 2, {});
    CHECK(overlap(empty, Bijection(3), h) == 0);
    std::mt19937_64 rng(11);
    for (int it = 0; it < 100; ++it) {
        int n = 4 + static_cast<int>(rng() % 4);  // 4..7
        auto a = sample_hypergraph(n, 2, 0.5, rng());
        auto b = sample_hypergraph(n, 2, 0.5, rng());
        Bijection pi(random_perm(n, rng));
        CHECK(overlap(a, pi, b) == overlap(b, pi.inverse(), a));
    }
    CHECK_THROWS_AS(overlap(g, Bijection(3), Hypergraph(4, 2, {})), std::invalid_argument);
}

TEST_CASE("edge density and complement") {
    Hypergraph complete = sample_hypergraph(5, 2, 1.0, 0);
    Hypergraph empty(5, 2, {});
    CHECK(edge_density(complete) == Rational(1));
    CHECK(edge_density(empty) == Rational(0));
    CHECK(edge_density(Hypergraph(3, 2, {0, 2})) == Rational(2, 3));
    CHECK(complement(complete) == empty);
    CHECK(complement(empty) == complete);
    Hypergraph h1(4, 2, {rank_subset(std::vector<int>{0, 1}, 4)});
    auto comp = complement(h1);
    CHECK(comp.edge_count() == 5);
    CHECK(!comp.has_edge_rank(rank_subset(std::vector<int>{0, 1}, 4)));
    std::mt19937_64 rng(23);
    for (int it = 0; it < 20; ++it) {
        auto h = sample_hypergraph(7, 3, 0.4, rng());
        CHECK(complement(complement(h)) == h);
        CHECK(h.edge_count() + complement(h).edge_count() == binom(7, 3));
    }
}

TEST_CASE("induced edge count") {
    // path 0-1-2-3
    std::vector<std::uint64_t> ranks = {rank_subset(std::vector<int>{0, 1}, 4),
                                        rank_subset(std::vector<int>{1, 2}, 4),
                                        rank_subset(std::vector<int>{2, 3}, 4)};
    Hypergraph path(4, 2, ranks);
    VertexSubset all(4, {0, 1, 2, 3});
    CHECK(induced_edge_count(path, all) == 3);
    VertexSubset one(4, {2});
    CHECK(induced_edge_count(path, one) == 0);
    VertexSubset s(4, {0, 1, 2});
    CHECK(induced_edge_count(path, s) == 2);
}

TEST_CASE("text format round-trips byte-identically") {
    auto h = sample_hypergraph(9, 3, 0.35, 41);
    std::string once = to_text(h);
    Hypergraph back = from_text(once);
    CHECK(back == h);
    CHECK(to_text(back) == once);
    // comments and non-canonical order are accepted, then canonicalized
    std::string messy = "# comment\n2 4 2\n2 3\n0 1\n";
    Hypergraph m = from_text(messy);
    CHECK(m.edge_count() == 2);
    CHECK(to_text(from_text(to_text(m))) == to_text(m));
    CHECK_THROWS_AS(from_text("2 4 3\n0 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(from_text(""), std::invalid_argument);
}

TEST_CASE("L-bijection tag validation") {
    // fixes everything outside L
    std::vector<int> map{1, 0, 2, 3};
    Bijection ok(map, std::vector<int>{0, 1});
    CHECK(ok.l_set().has_value());
    CHECK_THROWS_AS(Bijection(std::vector<int>{1, 0, 3, 2}, std::vector<int>{0, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Bijection(std::vector<int>{0, 0, 1, 2}), std::invalid_argument);
}

TEST_CASE("hypergraph constructor validation") {
    CHECK_THROWS_AS(Hypergraph(3, 2, {3}), std::invalid_argument);  // C(3,2)=3 ranks are 0..2
    CHECK_THROWS_AS(Hypergraph(3, 4, {}), std::invalid_argument);
    // duplicates collapse to a set
    Hypergraph h(4, 2, {1, 1, 2});
    CHECK(h.edge_count() == 2);
}
