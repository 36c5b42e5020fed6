#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "hyperdisc/oracle.hpp"
#include "hyperdisc/rng.hpp"
#include "hyperdisc/sweep.hpp"

using namespace hyperdisc;

namespace {

SweepConfig tiny_config() {
    SweepConfig cfg;
    cfg.ns = {30, 40};
    cfg.ks = {2};
    cfg.ps = {PqSpec::parse("const:0.5")};
    cfg.qs = {PqSpec::parse("const:0.5")};
    cfg.seeds_per_point = 3;
    cfg.mode = SweepMode::Certify;
    cfg.master_seed = 42;
    cfg.parallelism = 1;
    return cfg;
}

}  // namespace

TEST_CASE("normalize_pq rules") {
    auto a = normalize_pq(0.3, 0.4);
    CHECK(a.p == doctest::Approx(0.3));
    CHECK(a.q == doctest::Approx(0.4));
    CHECK(a.tag() == "none");

    auto b = normalize_pq(0.3, 0.9);
    CHECK(b.p == doctest::Approx(0.1));
    CHECK(b.q == doctest::Approx(0.3));
    CHECK(b.complement_h);
    CHECK(b.swapped);
    CHECK(!b.complement_g);

    auto c = normalize_pq(0.8, 0.9);
    CHECK(c.complement_g);
    CHECK(c.complement_h);
    CHECK(c.p == doctest::Approx(0.1));
    CHECK(c.q == doctest::Approx(0.2));

    CHECK_THROWS_AS(normalize_pq(0.0, 0.5), std::invalid_argument);
}

TEST_CASE("normalization transforms preserve the oracle discrepancy") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 20; ++it) {
        int n = 4 + static_cast<int>(rng() % 3);
        double p = 0.3, q = 0.85;
        auto g = sample_hypergraph(n, 2, p, rng());
        auto h = sample_hypergraph(n, 2, q, rng());
        auto norm = normalize_pq(p, q);
        Hypergraph g2 = norm.complement_g ? complement(g) : g;
        Hypergraph h2 = norm.complement_h ? complement(h) : h;
        if (norm.swapped) std::swap(g2, h2);
        CHECK(exact_disc_pair(g, h).value == exact_disc_pair(g2, h2).value);
    }
}

TEST_CASE("pq spec parsing and evaluation") {
    auto c = PqSpec::parse("const:0.25");
    CHECK(c.eval(100) == doctest::Approx(0.25));
    auto p = PqSpec::parse("pow:2,-0.5");
    CHECK(p.eval(100) == doctest::Approx(0.2));
    auto bare = PqSpec::parse("0.125");
    CHECK(bare.eval(7) == doctest::Approx(0.125));
    CHECK_THROWS(PqSpec::parse("pow:2"));
}

TEST_CASE("empty grid is rejected at parse time") {
    nlohmann::json j{{"n", nlohmann::json::array()},
                     {"k", {2}},
                     {"p", {"const:0.5"}},
                     {"q", {"const:0.5"}}};
    CHECK_THROWS_AS(SweepConfig::from_json(j), std::invalid_argument);
    nlohmann::json bad_seeds{{"n", {10}}, {"k", {2}}, {"p", {"0.5"}}, {"q", {"0.5"}},
                             {"seeds_per_point", 0}};
    CHECK_THROWS_AS(SweepConfig::from_json(bad_seeds), std::invalid_argument);
}

TEST_CASE("one-point sweep reproduces the standalone certify run") {
    SweepConfig cfg = tiny_config();
    cfg.ns = {30};
    cfg.seeds_per_point = 1;
    auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 1);
    std::uint64_t row_seed = mix64(cfg.master_seed, 0);
    CHECK(rows[0].seed == row_seed);
    auto standalone = certify_generated(30, 2, 0.5, 0.5, row_seed, cfg.certifier);
    CHECK(rows[0].achieved == standalone.report.value.to_double());
    CHECK(rows[0].provenance == standalone.report.provenance);
}

TEST_CASE("sweep csv is byte-identical across parallelism and reruns") {
    SweepConfig cfg = tiny_config();
    auto render = [](const std::vector<SweepRow>& rows) {
        std::ostringstream os;
        write_rows_csv(os, rows, false);
        return os.str();
    };
    std::string serial = render(run_sweep(cfg));
    cfg.parallelism = 8;
    std::string parallel = render(run_sweep(cfg));
    CHECK(serial == parallel);
    std::string again = render(run_sweep(cfg));
    CHECK(parallel == again);
}

TEST_CASE("csv round trip") {
    auto rows = run_sweep(tiny_config());
    std::ostringstream os;
    write_rows_csv(os, rows, false);
    std::istringstream is(os.str());
    auto back = read_rows_csv(is);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].n == rows[i].n);
        CHECK(back[i].achieved == rows[i].achieved);
        CHECK(back[i].provenance == rows[i].provenance);
        CHECK(back[i].ok == rows[i].ok);
    }
}

TEST_CASE("scaling report on synthetic rows") {
    std::vector<SweepRow> rows;
    for (std::int64_t n : {10, 20, 40, 80}) {
        for (int s = 0; s < 5; ++s) {
            SweepRow r;
            r.n = n;
            r.k = 2;
            r.ok = true;
            r.regime = "dense";
            r.predicted = std::pow(static_cast<double>(n), 1.5);
            r.achieved = r.predicted;  // exact agreement
            r.ratio = 1.0;
            rows.push_back(r);
        }
    }
    auto sum = scaling_report(rows);
    REQUIRE(sum.groups.size() == 1);
    const auto& g = sum.groups[0];
    REQUIRE(g.slope_deviation.has_value());
    CHECK(*g.slope_deviation == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(!g.flagged);
    for (const auto& pn : g.per_n) CHECK(pn.median_ratio == doctest::Approx(1.0));

    // doubling achieved shifts ratios but not the slope
    for (auto& r : rows) {
        r.achieved *= 2.0;
        r.ratio = 2.0;
    }
    auto sum2 = scaling_report(rows);
    CHECK(*sum2.groups[0].slope_deviation == doctest::Approx(0.0).epsilon(1e-12));
    for (const auto& pn : sum2.groups[0].per_n) CHECK(pn.median_ratio == doctest::Approx(2.0));

    // fewer than 3 distinct n: slope omitted with notice
    std::vector<SweepRow> two(rows.begin(), rows.begin() + 10);
    auto sum3 = scaling_report(two);
    CHECK(!sum3.groups[0].slope_achieved.has_value());
    CHECK(!sum3.groups[0].notice.empty());
}

TEST_CASE("svg chart renders polylines") {
    auto rows = run_sweep(tiny_config());
    auto svg = scaling_svg(scaling_report(rows));
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("oracle mode rows fail gracefully past the guard") {
    SweepConfig cfg = tiny_config();
    cfg.mode = SweepMode::Oracle;
    cfg.ns = {30};  // beyond the n! guard
    cfg.seeds_per_point = 1;
    auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 1);
    CHECK(!rows[0].ok);
    CHECK(!rows[0].error.empty());
}

TEST_CASE("oracle mode matches the oracle on tiny instances") {
    SweepConfig cfg = tiny_config();
    cfg.mode = SweepMode::Oracle;
    cfg.ns = {6};
    cfg.seeds_per_point = 2;
    auto rows = run_sweep(cfg);
    for (const auto& r : rows) {
        CHECK(r.ok);
        CHECK(r.provenance.rfind("oracle", 0) == 0);
        CHECK(r.achieved >= 0.0);
    }
}

TEST_CASE("bounds and envelope modes emit finite predictions") {
    for (SweepMode m : {SweepMode::Bounds, SweepMode::Envelope}) {
        SweepConfig cfg = tiny_config();
        cfg.mode = m;
        cfg.ns = {100};
        cfg.seeds_per_point = 1;
        auto rows = run_sweep(cfg);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].ok);
        CHECK(rows[0].achieved > 0.0);
        CHECK(rows[0].predicted > 0.0);
    }
}

TEST_CASE("config json round trip") {
    SweepConfig cfg = tiny_config();
    auto j = cfg.to_json();
    auto back = SweepConfig::from_json(j);
    CHECK(back.ns == cfg.ns);
    CHECK(back.seeds_per_point == cfg.seeds_per_point);
    CHECK(mode_name(back.mode) == mode_name(cfg.mode));
    CHECK(back.master_seed == cfg.master_seed);
}
