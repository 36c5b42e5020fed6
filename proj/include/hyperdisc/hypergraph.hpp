// k-uniform hypergraphs over {0..n-1}: canonical storage, random generation,
// permutation action, overlap, densities, complement, induced counts, text IO.
#ifndef HYPERDISC_HYPERGRAPH_HPP
#define HYPERDISC_HYPERGRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hyperdisc/binomial.hpp"
#include "hyperdisc/bitset.hpp"
#include "hyperdisc/rational.hpp"

namespace hyperdisc {

// Vertex permutation; optionally tagged as an L-bijection (fixes V \ L).
class Bijection {
public:
    explicit Bijection(int n);  // identity
    explicit Bijection(std::vector<int> map, std::optional<std::vector<int>> l_set = {});

    int n() const { return static_cast<int>(map_.size()); }
    int operator()(int v) const { return map_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& map() const { return map_; }
    const std::optional<std::vector<int>>& l_set() const { return l_set_; }

    Bijection inverse() const;
    // this after other: (compose(a,b))(v) = a(b(v)).
    static Bijection compose(const Bijection& a, const Bijection& b);

private:
    std::vector<int> map_;
    std::optional<std::vector<int>> l_set_;  // sorted; map fixes everything outside it
};

// Subset of [0,n) stored as a bitset.
class VertexSubset {
public:
    explicit VertexSubset(int n) : bits_(static_cast<std::size_t>(n)) {}
    VertexSubset(int n, const std::vector<int>& members);

    int n() const { return static_cast<int>(bits_.size()); }
    void add(int v) { bits_.set(static_cast<std::size_t>(v)); }
    bool contains(int v) const { return bits_.test(static_cast<std::size_t>(v)); }
    std::int64_t cardinality() const { return bits_.count(); }
    std::vector<int> members() const;

private:
    Bitset bits_;
};

// Edges are stored as sorted colex ranks; a bitset view over all C(n,k)
// candidate edges is kept when that fits in 2^24 bits, giving O(1) membership
// for the oracle's overlap loop while large sparse sweeps stay compact.
class Hypergraph {
public:
    static constexpr std::uint64_t kBitsetCap = 1ULL << 24;

    Hypergraph(int n, int k, std::vector<std::uint64_t> edge_ranks);

    int n() const { return n_; }
    int k() const { return k_; }
    std::uint64_t edge_count() const { return edges_.size(); }
    std::uint64_t candidate_count() const { return total_; }
    const std::vector<std::uint64_t>& edge_ranks() const { return edges_; }

    bool has_edge_rank(std::uint64_t rank) const;
    std::vector<std::vector<int>> edge_tuples() const;

    friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.edges_ == b.edges_;
    }

private:
    int n_, k_;
    std::uint64_t total_;
    std::vector<std::uint64_t> edges_;
    std::optional<Bitset> view_;
};

// Each candidate edge present independently with probability p; deterministic
// per (seed, n, k, p). Uses one uniform draw per candidate when C(n,k) is
// small and geometric gap-skipping above the bitset cap.
Hypergraph sample_hypergraph(int n, int k, double p, std::uint64_t seed);

Hypergraph apply_bijection(const Hypergraph& g, const Bijection& pi);

// |pi(E(G)) cap E(H)|.
std::int64_t overlap(const Hypergraph& g, const Bijection& pi, const Hypergraph& h);

Rational edge_density(const Hypergraph& h);

Hypergraph complement(const Hypergraph& h);

std::int64_t induced_edge_count(const Hypergraph& h, const VertexSubset& s);

// Expected overlap under a uniformly random bijection: e(G)e(H)/C(n,k).
Rational pair_baseline(const Hypergraph& g, const Hypergraph& h);

// Text format: "k n m" header, one edge per line as k increasing vertex ids,
// '#' comment lines. Writing is canonical (edges in rank order), so
// write(read(write(x))) == write(x) byte for byte.
void write_hypergraph(std::ostream& os, const Hypergraph& h);
Hypergraph read_hypergraph(std::istream& is);
std::string to_text(const Hypergraph& h);
Hypergraph from_text(const std::string& text);

}  // namespace hyperdisc

#endif
