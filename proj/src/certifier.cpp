#include "hyperdisc/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hyperdisc/matching.hpp"
#include "hyperdisc/oracle.hpp"
#include "hyperdisc/rng.hpp"

namespace hyperdisc {

namespace {

std::vector<int> default_l(int n, int k) {
    std::vector<int> l(static_cast<std::size_t>(n / k));
    for (std::size_t i = 0; i < l.size(); ++i) l[i] = static_cast<int>(i);
    return l;
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Smallest integer t with t >= tau; integer codegrees make
// "codeg >= tau" and "codeg >= ceil(tau)" the same test.
std::int64_t threshold_t(double tau) {
    return static_cast<std::int64_t>(std::ceil(tau));
}

DiscrepancyReport witness_report(const Hypergraph& g, const Hypergraph& h, Bijection pi,
                                 std::string provenance, std::string trace) {
    std::int64_t ov = overlap(g, pi, h);
    DiscrepancyReport rep;
    rep.baseline = pair_baseline(g, h);
    rep.plus_value = Rational(ov) - rep.baseline;
    rep.minus_value = Rational(0);  // disc- >= 0 holds unconditionally
    rep.value = Rational::max(rep.plus_value, rep.minus_value);
    rep.witness = std::move(pi);
    rep.witness_overlap = ov;
    rep.provenance = std::move(provenance);
    rep.trace = std::move(trace);
    return rep;
}

}  // namespace

BipartiteProjection build_projection(const Hypergraph& x, std::span<const int> l, char source) {
    const int n = x.n();
    const int k = x.k();
    if (static_cast<int>(l.size()) != n / k)
        throw std::invalid_argument("build_projection: |L| must be floor(n/k)");
    BipartiteProjection p;
    p.n = n;
    p.k = k;
    p.source = source;
    p.left.assign(l.begin(), l.end());
    std::sort(p.left.begin(), p.left.end());
    std::vector<int> left_index(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < p.left.size(); ++i) {
        int v = p.left[i];
        if (v < 0 || v >= n || left_index[static_cast<std::size_t>(v)] >= 0)
            throw std::invalid_argument("build_projection: L is not a set of distinct vertices");
        left_index[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    std::vector<int> rest_index(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        if (left_index[static_cast<std::size_t>(v)] < 0) {
            rest_index[static_cast<std::size_t>(v)] = static_cast<int>(p.rest.size());
            p.rest.push_back(v);
        }
    }
    p.right_count = binom(static_cast<std::uint64_t>(p.rest.size()), static_cast<std::uint64_t>(k - 1));
    p.adj.assign(p.left.size(), Bitset(static_cast<std::size_t>(p.right_count)));
    BinomTable tab(static_cast<std::uint64_t>(p.rest.size()), static_cast<std::uint64_t>(k - 1));
    std::vector<int> relabeled(static_cast<std::size_t>(k - 1));
    for (const auto& t : x.edge_tuples()) {
        int in_l = 0, u = -1;
        for (int v : t)
            if (left_index[static_cast<std::size_t>(v)] >= 0) { ++in_l; u = v; }
        if (in_l != 1) continue;
        std::size_t j = 0;
        for (int v : t)
            if (v != u) relabeled[j++] = rest_index[static_cast<std::size_t>(v)];
        std::uint64_t r = rank_subset(relabeled, tab);
        p.adj[static_cast<std::size_t>(left_index[static_cast<std::size_t>(u)])].set(
            static_cast<std::size_t>(r));
    }
    p.deg.resize(p.adj.size());
    for (std::size_t i = 0; i < p.adj.size(); ++i) p.deg[i] = p.adj[i].count();
    return p;
}

std::vector<int> surviving(const BipartiteProjection& p, double rate, double slack) {
    if (!(rate > 0.0 && rate < 1.0) && !(rate == 0.0 || rate == 1.0))
        throw std::invalid_argument("surviving: rate outside [0,1]");
    const double target = rate * static_cast<double>(p.right_count);
    const double window = slack * 2.0 * std::sqrt(2.0 * target);
    std::vector<int> out;
    for (std::size_t i = 0; i < p.deg.size(); ++i)
        if (std::abs(static_cast<double>(p.deg[i]) - target) <= window)
            out.push_back(static_cast<int>(i));
    return out;
}

std::int64_t GammaGraph::max_degree() const {
    std::vector<std::int64_t> dl(s_left.size(), 0), dr(s_right.size(), 0);
    for (const auto& [i, j] : edges) {
        ++dl[static_cast<std::size_t>(i)];
        ++dr[static_cast<std::size_t>(j)];
    }
    std::int64_t m = 0;
    for (std::int64_t d : dl) m = std::max(m, d);
    for (std::int64_t d : dr) m = std::max(m, d);
    return m;
}

namespace {

GammaGraph gamma_scan(const BipartiteProjection& pg, const BipartiteProjection& ph, double p,
                      double q, const CertifierConfig& cfg, bool parallel) {
    if (pg.right_count != ph.right_count)
        throw std::invalid_argument("gamma_graph: projections disagree on the right side");
    GammaGraph gg;
    gg.s_left = surviving(pg, p, cfg.survival_slack);
    gg.s_right = surviving(ph, q, cfg.survival_slack);
    for (int i : gg.s_left) gg.d_left.push_back(pg.deg[static_cast<std::size_t>(i)]);
    for (int j : gg.s_right) gg.d_right.push_back(ph.deg[static_cast<std::size_t>(j)]);
    const double npq = p * q * static_cast<double>(pg.right_count);
    const double addend = cfg.c_gamma * std::sqrt(npq * std::log(static_cast<double>(pg.n)));
    const double inv_n = 1.0 / static_cast<double>(pg.right_count);
    std::vector<std::vector<int>> hits(gg.s_left.size());
    auto scan_row = [&](std::size_t a) {
        const Bitset& row = pg.adj[static_cast<std::size_t>(gg.s_left[a])];
        const double d1 = static_cast<double>(gg.d_left[a]);
        for (std::size_t b = 0; b < gg.s_right.size(); ++b) {
            double tau = d1 * static_cast<double>(gg.d_right[b]) * inv_n + addend;
            std::int64_t codeg = row.and_count(ph.adj[static_cast<std::size_t>(gg.s_right[b])]);
            if (static_cast<double>(codeg) >= tau) hits[a].push_back(static_cast<int>(b));
        }
    };
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
        for (std::size_t a = 0; a < gg.s_left.size(); ++a) scan_row(a);
#else
        for (std::size_t a = 0; a < gg.s_left.size(); ++a) scan_row(a);
#endif
    } else {
        for (std::size_t a = 0; a < gg.s_left.size(); ++a) scan_row(a);
    }
    for (std::size_t a = 0; a < hits.size(); ++a)
        for (int b : hits[a]) gg.edges.emplace_back(static_cast<int>(a), b);
    return gg;
}

}  // namespace

GammaGraph gamma_graph(const BipartiteProjection& pg, const BipartiteProjection& ph, double p,
                       double q, const CertifierConfig& cfg) {
    return gamma_scan(pg, ph, p, q, cfg, true);
}

GammaGraph gamma_graph_serial(const BipartiteProjection& pg, const BipartiteProjection& ph,
                              double p, double q, const CertifierConfig& cfg) {
    return gamma_scan(pg, ph, p, q, cfg, false);
}

double edge_probability_f(std::int64_t d1, std::int64_t d2, std::int64_t n_right,
                          double threshold_addend) {
    if (d1 < 0 || d2 < 0 || d1 > n_right || d2 > n_right)
        throw std::invalid_argument("edge_probability_f: degrees outside [0, N]");
    double tau = static_cast<double>(d1) * static_cast<double>(d2) / static_cast<double>(n_right) +
                 threshold_addend;
    std::int64_t t_lo = threshold_t(tau);
    return hypergeom_tail(n_right, d1, d2, t_lo);
}

double min_edge_probability_f0(std::int64_t n_right, double p, double q, double slack,
                               double threshold_addend) {
    auto window = [&](double rate) {
        double target = rate * static_cast<double>(n_right);
        double w = slack * 2.0 * std::sqrt(2.0 * target);
        std::int64_t lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(target - w)));
        std::int64_t hi = std::min<std::int64_t>(n_right, static_cast<std::int64_t>(std::floor(target + w)));
        return std::pair<std::int64_t, std::int64_t>(lo, hi);
    };
    auto [g_lo, g_hi] = window(p);
    auto [h_lo, h_hi] = window(q);
    double f0 = 1.0;
    for (std::int64_t d1 = g_lo; d1 <= g_hi; ++d1)
        for (std::int64_t d2 = h_lo; d2 <= h_hi; ++d2)
            f0 = std::min(f0, edge_probability_f(d1, d2, n_right, threshold_addend));
    return f0;
}

GammaGraph prune(const GammaGraph& gamma, const std::function<double(std::int64_t, std::int64_t)>& f,
                 double f0, std::uint64_t seed, int n_vertices) {
    GammaGraph out;
    out.s_left = gamma.s_left;
    out.s_right = gamma.s_right;
    out.d_left = gamma.d_left;
    out.d_right = gamma.d_right;
    if (f0 <= 0.0) return out;
    for (const auto& [i, j] : gamma.edges) {
        double fd = f(gamma.d_left[static_cast<std::size_t>(i)],
                      gamma.d_right[static_cast<std::size_t>(j)]);
        if (!(fd > 0.0))
            throw std::logic_error("prune: f(d1,d2) = 0 for an existing edge");
        std::uint64_t key = static_cast<std::uint64_t>(gamma.s_left[static_cast<std::size_t>(i)]) *
                                static_cast<std::uint64_t>(n_vertices) +
                            static_cast<std::uint64_t>(gamma.s_right[static_cast<std::size_t>(j)]);
        if (uniform01(mix64(seed, key)) < f0 / fd) out.edges.emplace_back(i, j);
    }
    return out;
}

Bijection complete_bijection(const BipartiteProjection& pg, const BipartiteProjection& ph,
                             const std::vector<std::pair<int, int>>& matched) {
    const int n = pg.n;
    std::vector<int> left_index(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < pg.left.size(); ++i)
        left_index[static_cast<std::size_t>(pg.left[i])] = static_cast<int>(i);
    std::vector<char> used_u(pg.left.size(), 0), used_v(pg.left.size(), 0);
    std::vector<int> map(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) map[static_cast<std::size_t>(v)] = v;
    for (const auto& [u, v] : matched) {
        int ui = left_index[static_cast<std::size_t>(u)];
        int vi = left_index[static_cast<std::size_t>(v)];
        if (ui < 0 || vi < 0 || used_u[static_cast<std::size_t>(ui)] || used_v[static_cast<std::size_t>(vi)])
            throw std::logic_error("complete_bijection: matched pairs are not disjoint inside L");
        used_u[static_cast<std::size_t>(ui)] = 1;
        used_v[static_cast<std::size_t>(vi)] = 1;
        map[static_cast<std::size_t>(u)] = v;
    }
    std::vector<int> a, b;  // leftover left indices, ascending
    for (std::size_t i = 0; i < pg.left.size(); ++i) {
        if (!used_u[i]) a.push_back(static_cast<int>(i));
        if (!used_v[i]) b.push_back(static_cast<int>(i));
    }
    if (a.size() != b.size()) throw std::logic_error("complete_bijection: leftover size mismatch");
    const std::size_t m = a.size();
    if (m > 0) {
        std::vector<std::int64_t> totals(m, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
        for (std::size_t s = 0; s < m; ++s) {
            std::int64_t t = 0;
            for (std::size_t i = 0; i < m; ++i)
                t += pg.adj[static_cast<std::size_t>(a[i])].and_count(
                    ph.adj[static_cast<std::size_t>(b[(i + s) % m])]);
            totals[s] = t;
        }
#else
        for (std::size_t s = 0; s < m; ++s) {
            std::int64_t t = 0;
            for (std::size_t i = 0; i < m; ++i)
                t += pg.adj[static_cast<std::size_t>(a[i])].and_count(
                    ph.adj[static_cast<std::size_t>(b[(i + s) % m])]);
            totals[s] = t;
        }
#endif
        std::size_t best = 0;
        std::int64_t grand = 0;
        for (std::size_t s = 0; s < m; ++s) {
            grand += totals[s];
            if (totals[s] > totals[best]) best = s;
        }
        if (totals[best] * static_cast<std::int64_t>(m) < grand)
            throw std::logic_error("complete_bijection: shift below the average");
        for (std::size_t i = 0; i < m; ++i)
            map[static_cast<std::size_t>(pg.left[static_cast<std::size_t>(a[i])])] =
                ph.left[static_cast<std::size_t>(b[(i + best) % m])];
    }
    return Bijection(std::move(map), pg.left);
}

std::vector<std::vector<std::int64_t>> codegree_matrix_serial(const BipartiteProjection& pg,
                                                              const BipartiteProjection& ph) {
    std::vector<std::vector<std::int64_t>> m(pg.left.size(),
                                             std::vector<std::int64_t>(ph.left.size(), 0));
    for (std::size_t u = 0; u < pg.left.size(); ++u)
        for (std::size_t v = 0; v < ph.left.size(); ++v)
            m[u][v] = pg.adj[u].and_count(ph.adj[v]);
    return m;
}

std::vector<std::vector<std::int64_t>> codegree_matrix(const BipartiteProjection& pg,
                                                       const BipartiteProjection& ph) {
    std::vector<std::vector<std::int64_t>> m(pg.left.size(),
                                             std::vector<std::int64_t>(ph.left.size(), 0));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
    for (std::size_t u = 0; u < pg.left.size(); ++u)
        for (std::size_t v = 0; v < ph.left.size(); ++v)
            m[u][v] = pg.adj[u].and_count(ph.adj[v]);
#else
    return codegree_matrix_serial(pg, ph);
#endif
    return m;
}

DiscrepancyReport certify_fallback(const Hypergraph& g, const Hypergraph& h, double p, double q,
                                   const CertifierConfig& cfg) {
    (void)p;
    (void)q;
    (void)cfg;
    auto l = default_l(g.n(), g.k());
    auto pg = build_projection(g, l, 'G');
    auto ph = build_projection(h, l, 'H');
    auto m = codegree_matrix(pg, ph);
    const std::size_t sz = l.size();
    // Bucket by codegree value; inside a bucket pairs are already in
    // lexicographic (u, v) order, matching the largest-entry/lowest-index rule.
    std::int64_t max_val = 0;
    for (const auto& row : m)
        for (std::int64_t v : row) max_val = std::max(max_val, v);
    std::vector<std::vector<std::uint64_t>> buckets(static_cast<std::size_t>(max_val) + 1);
    for (std::size_t u = 0; u < sz; ++u)
        for (std::size_t v = 0; v < sz; ++v)
            buckets[static_cast<std::size_t>(m[u][v])].push_back((static_cast<std::uint64_t>(u) << 32) | v);
    std::vector<char> used_u(sz, 0), used_v(sz, 0);
    std::vector<int> assign(sz, -1);
    std::size_t assigned = 0;
    for (std::int64_t val = max_val; val >= 0 && assigned < sz; --val) {
        for (std::uint64_t code : buckets[static_cast<std::size_t>(val)]) {
            std::size_t u = code >> 32, v = code & 0xffffffffULL;
            if (used_u[u] || used_v[v]) continue;
            used_u[u] = 1;
            used_v[v] = 1;
            assign[u] = static_cast<int>(v);
            ++assigned;
            if (assigned == sz) break;
        }
    }
    std::vector<int> map(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) map[static_cast<std::size_t>(v)] = v;
    for (std::size_t u = 0; u < sz; ++u) map[static_cast<std::size_t>(l[u])] = l[static_cast<std::size_t>(assign[u])];
    Bijection pi(std::move(map), l);
    std::string trace = "path=greedy;L=" + std::to_string(sz) + ";maxCodeg=" + std::to_string(max_val);
    return witness_report(g, h, std::move(pi), "certifier-fallback", std::move(trace));
}

DiscrepancyReport certify_dense(const Hypergraph& g, const Hypergraph& h, double p, double q,
                                const CertifierConfig& cfg) {
    const int n = g.n();
    const int k = g.k();
    RegimeParams rp = classify_regime(n, k, p, q);
    if (rp.regime != Regime::Dense)
        throw std::invalid_argument("certify_dense: parameters fall in " + regime_name(rp.regime));
    const double npq = p * q * rp.N;
    const double logn = std::log(static_cast<double>(n));
    const std::int64_t l_target = n / (50 * k);
    // The pipeline's own bound is vacuous unless the matched-pair gain beats
    // the pigeonhole loss of the completion stage.
    const bool guarantee_ok =
        l_target >= 1 && cfg.c_gamma * static_cast<double>(l_target) * std::sqrt(npq * logn) >
                             2.0 * (static_cast<double>(n) / k) * std::sqrt(npq);
    auto fallback_or_continue = [&](const std::string& why) -> std::optional<DiscrepancyReport> {
        if (cfg.fallback_enabled && !cfg.force_pipeline) {
            DiscrepancyReport rep = certify_fallback(g, h, p, q, cfg);
            rep.trace = "dense-degenerate:" + why + ";" + rep.trace;
            return rep;
        }
        return std::nullopt;
    };
    if (!guarantee_ok && !cfg.force_pipeline) {
        if (auto rep = fallback_or_continue("vacuous-guarantee")) return *rep;
    }
    auto l = default_l(n, k);
    auto pg = build_projection(g, l, 'G');
    auto ph = build_projection(h, l, 'H');
    GammaGraph gamma = gamma_graph(pg, ph, p, q, cfg);
    std::string trace = "L=" + std::to_string(l.size()) + ";survG=" + std::to_string(gamma.s_left.size()) +
                        ";survH=" + std::to_string(gamma.s_right.size()) +
                        ";gammaE=" + std::to_string(gamma.edges.size());
    if (gamma.s_left.empty() || gamma.s_right.empty() || gamma.edges.empty()) {
        if (auto rep = fallback_or_continue("empty-gamma")) return *rep;
    }
    const double addend = cfg.c_gamma * std::sqrt(npq * logn);
    const std::int64_t n_right = static_cast<std::int64_t>(pg.right_count);
    double f0 = gamma.edges.empty() ? 0.0
                                    : min_edge_probability_f0(n_right, p, q, cfg.survival_slack, addend);
    trace += ";f0=" + fmt_double(f0);
    GammaGraph working = gamma;
    if (f0 >= 1e-6 && static_cast<double>(gamma.edges.size()) >= static_cast<double>(n) / (50.0 * k)) {
        working = prune(
            gamma, [&](std::int64_t d1, std::int64_t d2) { return edge_probability_f(d1, d2, n_right, addend); },
            f0, cfg.seed, n);
        trace += ";prune=kept:" + std::to_string(working.edges.size());
    } else {
        trace += ";prune=skipped";
    }
    // Matching on the (possibly pruned) gamma graph.
    std::vector<std::vector<int>> adj(working.s_left.size());
    for (const auto& [i, j] : working.edges) adj[static_cast<std::size_t>(i)].push_back(j);
    auto matched_idx = max_bipartite_matching(static_cast<int>(working.s_left.size()),
                                              static_cast<int>(working.s_right.size()), adj);
    const std::int64_t e_cnt = static_cast<std::int64_t>(working.edges.size());
    const std::int64_t max_deg = working.max_degree();
    if (e_cnt > 0 &&
        static_cast<std::int64_t>(matched_idx.size()) < (e_cnt + max_deg) / (max_deg + 1))
        throw std::logic_error("certify_dense: matching below the e/(max degree + 1) guarantee");
    trace += ";matched=" + std::to_string(matched_idx.size());
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [i, j] : matched_idx)
        pairs.emplace_back(pg.left[static_cast<std::size_t>(working.s_left[static_cast<std::size_t>(i)])],
                           ph.left[static_cast<std::size_t>(working.s_right[static_cast<std::size_t>(j)])]);
    std::sort(pairs.begin(), pairs.end());
    if (static_cast<std::int64_t>(pairs.size()) > l_target)
        pairs.resize(static_cast<std::size_t>(l_target));
    trace += ";l=" + std::to_string(pairs.size());
    if (pairs.empty() && !cfg.force_pipeline) {
        if (auto rep = fallback_or_continue("no-matched-pairs")) return *rep;
    }
    Bijection pi = complete_bijection(pg, ph, pairs);
    return witness_report(g, h, std::move(pi), "certifier-dense", std::move(trace));
}

DiscrepancyReport certify_sparse(const Hypergraph& g, const Hypergraph& h, double p, double q,
                                 const CertifierConfig& cfg, SparseCertifyStats* stats) {
    const int n = g.n();
    const int k = g.k();
    bool regime21 = false;
    double thr21 = 0.0;
    double gamma_val = 0.0;
    if (p > 0.0) {
        RegimeParams rp = classify_regime(n, k, p, q);
        if (rp.regime == Regime::Dense)
            throw std::invalid_argument("certify_sparse: parameters fall in dense regime");
        regime21 = rp.regime == Regime::Sparse21;
        gamma_val = rp.gamma;
        thr21 = std::log(static_cast<double>(n)) / (6.0 * std::log(rp.gamma));
    }
    auto l = default_l(n, k);
    auto pg = build_projection(g, l, 'G');
    auto ph = build_projection(h, l, 'H');
    const double np = p * static_cast<double>(pg.right_count);
    const double admit_need = std::max(1.0, (1.0 - cfg.neighborhood_tolerance) * np);
    const std::int64_t claim_cap =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil((1.0 + cfg.neighborhood_tolerance) * np)));
    const std::size_t block =
        static_cast<std::size_t>(std::max(1.0, std::floor(std::pow(static_cast<double>(n), cfg.block_size_exponent))));
    const double stop_size = std::pow(static_cast<double>(n), 1.0 / 3.0);
    const std::size_t sz = l.size();
    std::vector<char> matched_v(sz, 0), matched_u(sz, 0);
    std::vector<std::pair<int, int>> pairs;
    std::size_t admitted_total = 0;
    std::size_t blocks = 0;
    for (std::size_t start = 0; start < sz && p > 0.0; start += block) {
        ++blocks;
        const std::size_t stop = std::min(sz, start + block);
        Bitset claimed(static_cast<std::size_t>(pg.right_count));
        std::vector<std::pair<int, Bitset>> sprime;  // (left index, claimed N_u)
        for (std::size_t ui = start; ui < stop; ++ui) {
            Bitset avail = pg.adj[ui].andnot(claimed);
            std::int64_t cnt = avail.count();
            if (static_cast<double>(cnt) >= admit_need) {
                Bitset nu = avail.first_n(std::min<std::int64_t>(cnt, claim_cap));
                claimed.or_with(nu);
                sprime.emplace_back(static_cast<int>(ui), std::move(nu));
            }
        }
        admitted_total += sprime.size();
        for (std::size_t vi = 0; vi < sz; ++vi) {
            if (matched_v[vi]) continue;
            if (static_cast<double>(sprime.size()) < stop_size) break;
            const Bitset& nbv = ph.adj[vi];
            std::size_t found = sprime.size();
            for (std::size_t s = 0; s < sprime.size(); ++s) {
                const Bitset& nu = sprime[s].second;
                bool hit = regime21 ? static_cast<double>(nu.and_count(nbv)) >= thr21
                                    : nu.subset_of(nbv);
                if (hit) { found = s; break; }
            }
            if (found == sprime.size()) continue;
            int ui = sprime[found].first;
            pairs.emplace_back(pg.left[static_cast<std::size_t>(ui)], ph.left[vi]);
            matched_u[static_cast<std::size_t>(ui)] = 1;
            matched_v[vi] = 1;
            sprime.erase(sprime.begin() + static_cast<std::ptrdiff_t>(found));
        }
    }
    // Leftovers paired in ascending order on both sides.
    std::vector<int> left_u, left_v;
    for (std::size_t i = 0; i < sz; ++i) {
        if (!matched_u[i]) left_u.push_back(pg.left[i]);
        if (!matched_v[i]) left_v.push_back(ph.left[i]);
    }
    std::vector<std::pair<int, int>> all_pairs = pairs;
    for (std::size_t i = 0; i < left_u.size(); ++i) all_pairs.emplace_back(left_u[i], left_v[i]);
    std::vector<int> map(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) map[static_cast<std::size_t>(v)] = v;
    for (const auto& [u, v] : all_pairs) map[static_cast<std::size_t>(u)] = v;
    Bijection pi(std::move(map), l);
    std::vector<int> left_index(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < pg.left.size(); ++i)
        left_index[static_cast<std::size_t>(pg.left[i])] = static_cast<int>(i);
    std::int64_t min_codeg = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::int64_t c = pg.codegree(
            static_cast<std::size_t>(left_index[static_cast<std::size_t>(pairs[i].first)]), ph,
            static_cast<std::size_t>(left_index[static_cast<std::size_t>(pairs[i].second)]));
        min_codeg = i == 0 ? c : std::min(min_codeg, c);
    }
    if (stats) {
        stats->blocks = blocks;
        stats->admitted = admitted_total;
        stats->matched = pairs.size();
        stats->matched_fraction = sz ? static_cast<double>(pairs.size()) / static_cast<double>(sz) : 0.0;
        stats->min_pair_codegree = min_codeg;
        stats->threshold21 = thr21;
    }
    std::string trace = std::string("regime=") + (p <= 0.0 ? "degenerate" : (regime21 ? "2.1" : "2.2")) +
                        ";blocks=" + std::to_string(blocks) + ";admitted=" + std::to_string(admitted_total) +
                        ";matched=" + std::to_string(pairs.size()) + ";minPairCodeg=" +
                        std::to_string(min_codeg) + ";thr=" + fmt_double(thr21) +
                        ";gamma=" + fmt_double(gamma_val);
    if (pairs.empty() && cfg.fallback_enabled && !cfg.force_pipeline) {
        DiscrepancyReport rep = certify_fallback(g, h, p, q, cfg);
        rep.trace = "sparse-degenerate:no-matches;" + rep.trace;
        return rep;
    }
    return witness_report(g, h, std::move(pi), "certifier-sparse", std::move(trace));
}

DiscrepancyReport certify(const Hypergraph& g, const Hypergraph& h, double p, double q,
                          const CertifierConfig& cfg) {
    if (g.n() != h.n() || g.k() != h.k()) throw std::invalid_argument("certify: shape mismatch");
    if (p > q || q > 0.5)
        throw std::invalid_argument("certify: need p <= q <= 1/2; apply the complement reduction first");
    if (p <= 0.0) return certify_sparse(g, h, p, q, cfg);
    RegimeParams rp = classify_regime(g.n(), g.k(), p, q);
    return rp.regime == Regime::Dense ? certify_dense(g, h, p, q, cfg)
                                      : certify_sparse(g, h, p, q, cfg);
}

}  // namespace hyperdisc
