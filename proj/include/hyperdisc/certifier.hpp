// Constructive lower-bound engine: bipartite projections, survival windows,
// the codegree-threshold graph with randomized pruning and matching, the
// block-greedy sparse construction, and a greedy-assignment fallback.
// Every emitted report carries an L-bijection witness whose overlap is
// recomputed from scratch.
#ifndef HYPERDISC_CERTIFIER_HPP
#define HYPERDISC_CERTIFIER_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hyperdisc/bitset.hpp"
#include "hyperdisc/bounds.hpp"
#include "hyperdisc/hypergraph.hpp"
#include "hyperdisc/report.hpp"

namespace hyperdisc {

struct CertifierConfig {
    double c_gamma = 1e-2;               // codegree threshold constant
    double survival_slack = 1.0;         // multiplier on the 2 sqrt(2 rate N) window
    double block_size_exponent = 0.4;    // sparse block size n^exponent
    double neighborhood_tolerance = 0.25;  // the +-band realizing (1+o(1)) N p
    bool fallback_enabled = true;
    bool force_pipeline = false;  // run the regime pipeline even when degenerate
    std::uint64_t seed = 0;
};

// Bipartite view of a hypergraph against a left set L: right side indexes all
// (k-1)-subsets of V \ L by colex rank; u ~ r iff {u} + unrank(r) is an edge.
struct BipartiteProjection {
    int n = 0;
    int k = 0;
    char source = '?';             // 'G' or 'H'
    std::vector<int> left;         // L, ascending
    std::vector<int> rest;         // V \ L, ascending
    std::uint64_t right_count = 0; // N = C(n - |L|, k - 1)
    std::vector<Bitset> adj;       // per left index
    std::vector<std::int64_t> deg; // cached bit counts

    std::int64_t codegree(std::size_t li, const BipartiteProjection& other, std::size_t lj) const {
        return adj[li].and_count(other.adj[lj]);
    }
};

// Requires |L| == floor(n/k); edges with |e cap L| != 1 are ignored.
BipartiteProjection build_projection(const Hypergraph& x, std::span<const int> l, char source);

// Left indices u with |deg(u) - rate*N| <= slack * 2 sqrt(2 rate N).
std::vector<int> surviving(const BipartiteProjection& p, double rate, double slack = 1.0);

struct GammaGraph {
    std::vector<int> s_left, s_right;           // surviving left indices
    std::vector<std::int64_t> d_left, d_right;  // their projection degrees
    std::vector<std::pair<int, int>> edges;     // (index into s_left, index into s_right)

    std::int64_t max_degree() const;
};

// Edge iff codeg(u,v) >= d1 d2 / N + addend with addend = c_gamma
// sqrt(pqN log n). The parallel scan and the serial reference produce
// identical edge lists.
GammaGraph gamma_graph(const BipartiteProjection& pg, const BipartiteProjection& ph, double p,
                       double q, const CertifierConfig& cfg);
GammaGraph gamma_graph_serial(const BipartiteProjection& pg, const BipartiteProjection& ph,
                              double p, double q, const CertifierConfig& cfg);

// Conditional edge probability f(d1,d2) = P[Hyp(N,d1,d2) >= d1 d2/N + addend].
double edge_probability_f(std::int64_t d1, std::int64_t d2, std::int64_t n_right,
                          double threshold_addend);

// min f over the survival window (clamped to [0, N] degrees).
double min_edge_probability_f0(std::int64_t n_right, double p, double q, double slack,
                               double threshold_addend);

// Keep each edge independently with probability f0 / f(d1,d2); decisions are
// derived from (seed, edge id) so they are scheduling-invariant.
GammaGraph prune(const GammaGraph& gamma, const std::function<double(std::int64_t, std::int64_t)>& f,
                 double f0, std::uint64_t seed, int n_vertices);

// Completes matched (left-vertex, left-vertex) pairs into a full L-bijection:
// leftovers are paired by the cyclic shift maximizing total codegree, which
// by pigeonhole is at least the average over all shifts.
Bijection complete_bijection(const BipartiteProjection& pg, const BipartiteProjection& ph,
                             const std::vector<std::pair<int, int>>& matched);

DiscrepancyReport certify_dense(const Hypergraph& g, const Hypergraph& h, double p, double q,
                                const CertifierConfig& cfg = {});

// Per-run construction quality, for experiment harnesses and tests.
struct SparseCertifyStats {
    std::size_t blocks = 0;
    std::size_t admitted = 0;
    std::size_t matched = 0;
    double matched_fraction = 0;         // matched / |L|
    std::int64_t min_pair_codegree = 0;  // over pipeline-matched pairs; 0 when none
    double threshold21 = 0;              // log n / (6 log gamma)
};

DiscrepancyReport certify_sparse(const Hypergraph& g, const Hypergraph& h, double p, double q,
                                 const CertifierConfig& cfg = {},
                                 SparseCertifyStats* stats = nullptr);

// Greedy max-codegree assignment on the full L x L codegree matrix; total and
// always available, used when the regime pipeline degenerates at small n.
DiscrepancyReport certify_fallback(const Hypergraph& g, const Hypergraph& h, double p, double q,
                                   const CertifierConfig& cfg = {});

// Regime dispatch; requires p <= q <= 1/2 (apply the complement reduction
// first). Always returns a report whose witness recomputes exactly.
DiscrepancyReport certify(const Hypergraph& g, const Hypergraph& h, double p, double q,
                          const CertifierConfig& cfg = {});

// Codegree matrix of the full L x L grid, row-parallel; the serial reference
// must produce the identical matrix.
std::vector<std::vector<std::int64_t>> codegree_matrix(const BipartiteProjection& pg,
                                                       const BipartiteProjection& ph);
std::vector<std::vector<std::int64_t>> codegree_matrix_serial(const BipartiteProjection& pg,
                                                              const BipartiteProjection& ph);

}  // namespace hyperdisc

#endif
