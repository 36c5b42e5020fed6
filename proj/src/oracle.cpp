#include "hyperdisc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hyperdisc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Pre-decoded instance shared by the enumeration loops.
struct PairInstance {
    int n, k;
    BinomTable tab;
    std::vector<std::vector<int>> g_edges;
    const Hypergraph* h;

    PairInstance(const Hypergraph& g, const Hypergraph& hh)
        : n(g.n()), k(g.k()),
          tab(static_cast<std::uint64_t>(g.n()), static_cast<std::uint64_t>(g.k())),
          g_edges(g.edge_tuples()), h(&hh) {}

    std::int64_t overlap_of(const std::vector<int>& perm) const {
        std::int64_t c = 0;
        int img[16];
        for (const auto& t : g_edges) {
            for (std::size_t i = 0; i < t.size(); ++i) img[i] = perm[static_cast<std::size_t>(t[i])];
            std::sort(img, img + k);
            std::uint64_t r = 0;
            for (int i = 0; i < k; ++i) r += tab.get(static_cast<std::uint64_t>(img[i]),
                                                     static_cast<std::uint64_t>(i) + 1);
            if (h->has_edge_rank(r)) ++c;
        }
        return c;
    }
};

struct Extremes {
    std::int64_t max_ov = -1, min_ov = -1;
    std::vector<int> max_perm, min_perm;

    void feed(std::int64_t ov, const std::vector<int>& perm) {
        if (max_ov < 0 || ov > max_ov) { max_ov = ov; max_perm = perm; }
        if (min_ov < 0 || ov < min_ov) { min_ov = ov; min_perm = perm; }
    }
    // Merging in enumeration order keeps first-optimum witnesses exact.
    void merge(const Extremes& o) {
        if (o.max_ov < 0) return;
        if (max_ov < 0 || o.max_ov > max_ov) { max_ov = o.max_ov; max_perm = o.max_perm; }
        if (min_ov < 0 || o.min_ov < min_ov) { min_ov = o.min_ov; min_perm = o.min_perm; }
    }
};

double factorial_estimate(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void check_pair_shapes(const Hypergraph& g, const Hypergraph& h, const OracleGuard& guard) {
    if (g.n() != h.n() || g.k() != h.k())
        throw std::invalid_argument("exact_disc_pair: shape mismatch");
    if (g.n() > 16)  // fixed tuple buffers in the hot loop
        throw std::domain_error("exact_disc_pair: n > 16 is past the enumeration design range");
    if (!guard.force && g.n() > guard.pair_limit)
        throw std::domain_error("exact_disc_pair: refused, n=" + std::to_string(g.n()) + " needs ~" +
                                std::to_string(factorial_estimate(g.n())) +
                                " bijection evaluations; pass force to override");
}

DiscrepancyReport finish_pair_report(const Hypergraph& g, const Hypergraph& h, const Extremes& ex) {
    Rational baseline = pair_baseline(g, h);
    Rational plus = Rational(ex.max_ov) - baseline;
    Rational minus = baseline - Rational(ex.min_ov);
    DiscrepancyReport rep;
    rep.baseline = baseline;
    rep.plus_value = plus;
    rep.minus_value = minus;
    rep.value = Rational::max(plus, minus);
    bool use_max;
    if (plus > minus) use_max = true;
    else if (minus > plus) use_max = false;
    else use_max = !(ex.min_perm < ex.max_perm);  // tie: earlier witness in lex order
    rep.witness = Bijection(use_max ? ex.max_perm : ex.min_perm);
    rep.witness_overlap = use_max ? ex.max_ov : ex.min_ov;
    rep.provenance = "oracle";
    return rep;
}

Extremes enumerate_with_first_image(const PairInstance& inst, int first_image) {
    Extremes ex;
    std::vector<int> rest;
    rest.reserve(static_cast<std::size_t>(inst.n) - 1);
    for (int v = 0; v < inst.n; ++v)
        if (v != first_image) rest.push_back(v);
    std::vector<int> perm(static_cast<std::size_t>(inst.n));
    perm[0] = first_image;
    do {
        std::copy(rest.begin(), rest.end(), perm.begin() + 1);
        ex.feed(inst.overlap_of(perm), perm);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return ex;
}

}  // namespace

DiscrepancyReport exact_disc_pair(const Hypergraph& g, const Hypergraph& h,
                                  const OracleGuard& guard, int threads) {
    check_pair_shapes(g, h, guard);
    PairInstance inst(g, h);
    const int n = g.n();
    std::vector<Extremes> parts(static_cast<std::size_t>(n));
#ifdef _OPENMP
    int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (int a = 0; a < n; ++a) parts[static_cast<std::size_t>(a)] = enumerate_with_first_image(inst, a);
#else
    (void)threads;
    for (int a = 0; a < n; ++a) parts[static_cast<std::size_t>(a)] = enumerate_with_first_image(inst, a);
#endif
    Extremes total;
    for (const auto& p : parts) total.merge(p);
    return finish_pair_report(g, h, total);
}

namespace {

// Depth-first assignment in lexicographic order with partial-overlap bounds.
struct PrunedSearch {
    const PairInstance& inst;
    std::vector<std::vector<int>> edges_at;  // vertex -> incident G-edge indices
    std::vector<int> remaining;              // per edge, unassigned vertex count
    std::vector<int> img;
    std::vector<char> used;
    std::int64_t known_in = 0;   // completed edges landing in H
    std::int64_t incomplete = 0; // edges not yet fully assigned
    bool maximize;
    std::int64_t best = -1;
    std::vector<int> best_perm;

    explicit PrunedSearch(const PairInstance& pi, bool maxi) : inst(pi), maximize(maxi) {
        edges_at.resize(static_cast<std::size_t>(inst.n));
        remaining.resize(inst.g_edges.size());
        for (std::size_t e = 0; e < inst.g_edges.size(); ++e) {
            remaining[e] = inst.k;
            for (int v : inst.g_edges[e]) edges_at[static_cast<std::size_t>(v)].push_back(static_cast<int>(e));
        }
        incomplete = static_cast<std::int64_t>(inst.g_edges.size());
        img.assign(static_cast<std::size_t>(inst.n), -1);
        used.assign(static_cast<std::size_t>(inst.n), 0);
    }

    bool edge_in_h(std::size_t e) const {
        int buf[16];
        const auto& t = inst.g_edges[e];
        for (std::size_t i = 0; i < t.size(); ++i) buf[i] = img[static_cast<std::size_t>(t[i])];
        std::sort(buf, buf + inst.k);
        std::uint64_t r = 0;
        for (int i = 0; i < inst.k; ++i)
            r += inst.tab.get(static_cast<std::uint64_t>(buf[i]), static_cast<std::uint64_t>(i) + 1);
        return inst.h->has_edge_rank(r);
    }

    void dfs(int v) {
        if (v == inst.n) {
            if (best < 0 || (maximize ? known_in > best : known_in < best)) {
                best = known_in;
                best_perm = img;
            }
            return;
        }
        if (best >= 0) {
            if (maximize && known_in + incomplete <= best) return;
            if (!maximize && known_in >= best) return;
        }
        for (int c = 0; c < inst.n; ++c) {
            if (used[static_cast<std::size_t>(c)]) continue;
            used[static_cast<std::size_t>(c)] = 1;
            img[static_cast<std::size_t>(v)] = c;
            std::int64_t gained = 0;
            for (int e : edges_at[static_cast<std::size_t>(v)]) {
                if (--remaining[static_cast<std::size_t>(e)] == 0) {
                    --incomplete;
                    if (edge_in_h(static_cast<std::size_t>(e))) ++gained;
                }
            }
            known_in += gained;
            dfs(v + 1);
            known_in -= gained;
            for (int e : edges_at[static_cast<std::size_t>(v)]) {
                if (remaining[static_cast<std::size_t>(e)]++ == 0) ++incomplete;
            }
            img[static_cast<std::size_t>(v)] = -1;
            used[static_cast<std::size_t>(c)] = 0;
        }
    }
};

}  // namespace

DiscrepancyReport exact_disc_pair_pruned(const Hypergraph& g, const Hypergraph& h,
                                         const OracleGuard& guard) {
    check_pair_shapes(g, h, guard);
    PairInstance inst(g, h);
    PrunedSearch maxs(inst, true);
    maxs.dfs(0);
    PrunedSearch mins(inst, false);
    mins.dfs(0);
    Extremes ex;
    ex.max_ov = maxs.best;
    ex.max_perm = maxs.best_perm;
    ex.min_ov = mins.best;
    ex.min_perm = mins.best_perm;
    return finish_pair_report(g, h, ex);
}

namespace {

struct SubsetExtremes {
    // Deviations share the denominator C(n,k); track numerators only.
    std::int64_t plus_num = -1, minus_num = -1;
    std::uint32_t plus_mask = 0, minus_mask = 0;
    std::int64_t plus_count = 0, minus_count = 0;

    void feed(std::int64_t dev_num, std::uint32_t mask, std::int64_t count) {
        if (dev_num >= 0 && dev_num > plus_num) { plus_num = dev_num; plus_mask = mask; plus_count = count; }
        std::int64_t neg = -dev_num;
        if (neg >= 0 && neg > minus_num) { minus_num = neg; minus_mask = mask; minus_count = count; }
    }
    void merge(const SubsetExtremes& o) {
        if (o.plus_num > plus_num) { plus_num = o.plus_num; plus_mask = o.plus_mask; plus_count = o.plus_count; }
        if (o.minus_num > minus_num) { minus_num = o.minus_num; minus_mask = o.minus_mask; minus_count = o.minus_count; }
    }
};

}  // namespace

DiscrepancyReport exact_disc_subset(const Hypergraph& h, const OracleGuard& guard, int threads) {
    const int n = h.n();
    if (n > 31)  // subsets are enumerated as 32-bit masks
        throw std::domain_error("exact_disc_subset: n > 31 is past the enumeration design range");
    if (!guard.force && n > guard.subset_limit)
        throw std::domain_error("exact_disc_subset: refused, 2^" + std::to_string(n) +
                                " subsets; pass force to override");
    const std::int64_t cnk = static_cast<std::int64_t>(h.candidate_count());
    const std::int64_t eh = static_cast<std::int64_t>(h.edge_count());
    const int k = h.k();
    // C(s,k) for every subset size.
    std::vector<std::int64_t> choose_k(static_cast<std::size_t>(n) + 1, 0);
    for (int s = k; s <= n; ++s)
        choose_k[static_cast<std::size_t>(s)] =
            static_cast<std::int64_t>(binom(static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(k)));
    std::vector<std::uint32_t> edge_masks;
    edge_masks.reserve(h.edge_count());
    for (const auto& t : h.edge_tuples()) {
        std::uint32_t m = 0;
        for (int v : t) m |= (1u << v);
        edge_masks.push_back(m);
    }
    const std::uint64_t total = 1ULL << n;
    auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
        SubsetExtremes ex;
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            std::int64_t inside = 0;
            for (std::uint32_t em : edge_masks)
                if ((em & ~mask) == 0) ++inside;
            int s = std::popcount(static_cast<std::uint32_t>(mask));
            std::int64_t dev_num = inside * cnk - eh * choose_k[static_cast<std::size_t>(s)];
            ex.feed(dev_num, static_cast<std::uint32_t>(mask), inside);
        }
        return ex;
    };
#ifdef _OPENMP
    int nt = threads > 0 ? threads : omp_get_max_threads();
    const std::uint64_t chunks = std::min<std::uint64_t>(total, 64);
    std::vector<SubsetExtremes> parts(chunks);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (std::uint64_t c = 0; c < chunks; ++c) {
        std::uint64_t lo = total / chunks * c + std::min<std::uint64_t>(c, total % chunks);
        std::uint64_t hi = lo + total / chunks + (c < total % chunks ? 1 : 0);
        parts[c] = run_range(lo, hi);
    }
    SubsetExtremes ex;
    for (const auto& p : parts) ex.merge(p);
#else
    (void)threads;
    SubsetExtremes ex = run_range(0, total);
#endif

    DiscrepancyReport rep;
    rep.plus_value = Rational(ex.plus_num, cnk);
    rep.minus_value = Rational(ex.minus_num, cnk);
    rep.value = Rational::max(rep.plus_value, rep.minus_value);
    bool use_plus;
    if (rep.plus_value > rep.minus_value) use_plus = true;
    else if (rep.minus_value > rep.plus_value) use_plus = false;
    else use_plus = ex.plus_mask <= ex.minus_mask;  // tie: first subset in enumeration order
    std::uint32_t mask = use_plus ? ex.plus_mask : ex.minus_mask;
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) members.push_back(v);
    rep.witness = members;
    rep.witness_overlap = use_plus ? ex.plus_count : ex.minus_count;
    rep.baseline = Rational(eh * choose_k[members.size()], cnk);
    rep.provenance = "oracle";
    return rep;
}

bool verify_reduction(const Hypergraph& h, const OracleGuard& guard) {
    const int n = h.n();
    if (!guard.force && n > 7)
        throw std::domain_error("verify_reduction: refused, needs n * n! work; pass force to override");
    OracleGuard inner = guard;
    inner.force = true;
    Rational disc_subset = exact_disc_subset(h, inner).value;
    Rational best(0);
    for (int i = 1; i <= n; ++i) {
        // Complete i-vertex hypergraph: colex ranks of k-subsets of {0..i-1}
        // are exactly [0, C(i,k)).
        std::uint64_t ei = i >= h.k() ? binom(static_cast<std::uint64_t>(i),
                                              static_cast<std::uint64_t>(h.k()))
                                      : 0;
        std::vector<std::uint64_t> edges(ei);
        std::iota(edges.begin(), edges.end(), 0);
        Hypergraph gi(n, h.k(), std::move(edges));
        best = Rational::max(best, exact_disc_pair(gi, h, inner).value);
    }
    return best == disc_subset;
}

// --- distributions ---

namespace {

void check_hypergeom_params(std::int64_t N, std::int64_t d1, std::int64_t d2) {
    if (N < 0 || d1 < 0 || d2 < 0 || d1 > N || d2 > N)
        throw std::invalid_argument("hypergeometric: need 0 <= d1, d2 <= N");
}

mpz_class mpz_binom(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

long double lchoose_l(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return -std::numeric_limits<long double>::infinity();
    if (k == 0 || k == n) return 0.0L;
    return lgammal(static_cast<long double>(n) + 1) - lgammal(static_cast<long double>(k) + 1) -
           lgammal(static_cast<long double>(n - k) + 1);
}

}  // namespace

mpq_class hypergeom_pmf_exact(std::int64_t N, std::int64_t d1, std::int64_t d2, std::int64_t t) {
    check_hypergeom_params(N, d1, d2);
    if (t < 0 || t > std::min(d1, d2) || d2 - t > N - d1) return mpq_class(0);
    mpq_class r(mpz_binom(d1, t) * mpz_binom(N - d1, d2 - t), mpz_binom(N, d2));
    r.canonicalize();
    return r;
}

double hypergeom_pmf_log(std::int64_t N, std::int64_t d1, std::int64_t d2, std::int64_t t) {
    check_hypergeom_params(N, d1, d2);
    if (t < 0 || t > std::min(d1, d2) || d2 - t > N - d1) return kNegInf;
    long double v = lchoose_l(d1, t) + lchoose_l(N - d1, d2 - t) - lchoose_l(N, d2);
    return static_cast<double>(v);
}

mpq_class hypergeom_tail_exact(std::int64_t N, std::int64_t d1, std::int64_t d2, std::int64_t t_lo) {
    check_hypergeom_params(N, d1, d2);
    std::int64_t hi = std::min(d1, d2);
    std::int64_t lo = std::max<std::int64_t>(t_lo, std::max<std::int64_t>(0, d2 - (N - d1)));
    if (lo > hi) return mpq_class(0);
    mpz_class num = 0;
    for (std::int64_t t = lo; t <= hi; ++t) num += mpz_binom(d1, t) * mpz_binom(N - d1, d2 - t);
    mpq_class r(num, mpz_binom(N, d2));
    r.canonicalize();
    return r;
}

double hypergeom_tail(std::int64_t N, std::int64_t d1, std::int64_t d2, std::int64_t t_lo) {
    check_hypergeom_params(N, d1, d2);
    if (N <= kHypergeomExactLimit) return hypergeom_tail_exact(N, d1, d2, t_lo).get_d();
    std::int64_t hi = std::min(d1, d2);
    std::int64_t lo = std::max<std::int64_t>(t_lo, std::max<std::int64_t>(0, d2 - (N - d1)));
    if (lo > hi) return 0.0;
    // Largest term first; everything relative to it.
    long double anchor = hypergeom_pmf_log(N, d1, d2, lo);
    long double mean = static_cast<long double>(d1) * d2 / N;
    if (static_cast<long double>(lo) < mean) {
        // Tail includes the mode; sum the lower part instead and complement.
        long double below = 0.0L;
        long double a2 = hypergeom_pmf_log(N, d1, d2, lo - 1);
        for (std::int64_t t = lo - 1; t >= std::max<std::int64_t>(0, d2 - (N - d1)); --t) {
            long double lt = hypergeom_pmf_log(N, d1, d2, t);
            long double term = expl(lt - a2);
            below += term;
            if (term < below * 1e-25L) break;
        }
        long double p_below = expl(a2) * below;
        if (p_below < 0.0L) p_below = 0.0L;
        if (p_below > 1.0L) p_below = 1.0L;
        return static_cast<double>(1.0L - p_below);
    }
    long double sum = 0.0L;
    for (std::int64_t t = lo; t <= hi; ++t) {
        long double lt = hypergeom_pmf_log(N, d1, d2, t);
        long double term = expl(lt - anchor);
        sum += term;
        if (term < sum * 1e-25L) break;
    }
    return static_cast<double>(expl(anchor) * sum);
}

mpq_class binom_tail_exact(std::int64_t m, const mpq_class& rho, std::int64_t t) {
    if (m < 0 || t < 0 || t > m + 1)
        throw std::invalid_argument("binom_tail: need 0 <= t <= m+1");
    if (t == 0) return mpq_class(1);
    if (t == m + 1) return mpq_class(0);
    mpq_class one_minus = mpq_class(1) - rho;
    // rho^j (1-rho)^(m-j) built incrementally from j = m downward.
    mpq_class term = 1;
    for (std::int64_t j = 0; j < m; ++j) term *= rho;
    mpq_class sum = 0;
    mpq_class cur = term;  // j = m
    for (std::int64_t j = m; j >= t; --j) {
        sum += mpz_binom(m, j) * cur;
        if (j > t) {
            if (rho == 0) { cur = 0; continue; }
            cur = cur / rho * one_minus;
        }
    }
    mpq_class r = sum;
    r.canonicalize();
    return r;
}

double binom_tail_log(std::int64_t m, double rho, std::int64_t t) {
    if (m < 0 || t < 0 || t > m + 1)
        throw std::invalid_argument("binom_tail: need 0 <= t <= m+1");
    if (t == 0) return 0.0;
    if (t == m + 1) return kNegInf;
    if (rho <= 0.0) return t <= 0 ? 0.0 : kNegInf;
    if (rho >= 1.0) return 0.0;
    const long double lr = logl(static_cast<long double>(rho));
    const long double l1r = log1pl(-static_cast<long double>(rho));
    auto logpmf = [&](std::int64_t j) {
        return lchoose_l(m, j) + static_cast<long double>(j) * lr +
               static_cast<long double>(m - j) * l1r;
    };
    const std::int64_t mode = static_cast<std::int64_t>(
        std::floor((static_cast<long double>(m) + 1) * static_cast<long double>(rho)));
    if (t <= mode) {
        // P[X >= t] = 1 - P[X <= t-1]; terms below the mode shrink downward.
        long double a = logpmf(t - 1);
        long double s = 0.0L;
        for (std::int64_t j = t - 1; j >= 0; --j) {
            long double term = expl(logpmf(j) - a);
            s += term;
            if (term < s * 1e-25L) break;
        }
        long double p_low = expl(a) * s;
        if (p_low >= 1.0L) p_low = 1.0L - 1e-30L;
        return static_cast<double>(log1pl(-p_low));
    }
    long double a = logpmf(t);
    long double s = 0.0L;
    for (std::int64_t j = t; j <= m; ++j) {
        long double term = expl(logpmf(j) - a);
        s += term;
        if (term < s * 1e-25L) break;
    }
    return static_cast<double>(a + logl(s));
}

double binom_tail(std::int64_t m, double rho, std::int64_t t) {
    if (m <= kBinomExactLimit) {
        if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("binom_tail: rho outside [0,1]");
        return binom_tail_exact(m, mpq_class(rho), t).get_d();
    }
    return std::exp(binom_tail_log(m, rho, t));
}

}  // namespace hyperdisc
