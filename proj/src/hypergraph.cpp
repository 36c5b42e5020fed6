#include "hyperdisc/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>

#include "hyperdisc/rng.hpp"
#include <sstream>
#include <stdexcept>

namespace hyperdisc {

Bijection::Bijection(int n) : map_(static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) map_[static_cast<std::size_t>(i)] = i;
}

Bijection::Bijection(std::vector<int> map, std::optional<std::vector<int>> l_set)
    : map_(std::move(map)), l_set_(std::move(l_set)) {
    const int n = static_cast<int>(map_.size());
    std::vector<char> seen(map_.size(), 0);
    for (int v : map_) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("Bijection: map is not a permutation");
        seen[static_cast<std::size_t>(v)] = 1;
    }
    if (l_set_) {
        std::sort(l_set_->begin(), l_set_->end());
        std::vector<char> in_l(map_.size(), 0);
        for (int v : *l_set_) {
            if (v < 0 || v >= n) throw std::invalid_argument("Bijection: L vertex out of range");
            in_l[static_cast<std::size_t>(v)] = 1;
        }
        for (int v = 0; v < n; ++v)
            if (!in_l[static_cast<std::size_t>(v)] && map_[static_cast<std::size_t>(v)] != v)
                throw std::invalid_argument("Bijection: L-bijection moves a vertex outside L");
    }
}

Bijection Bijection::inverse() const {
    std::vector<int> inv(map_.size());
    for (int i = 0; i < n(); ++i) inv[static_cast<std::size_t>(map_[static_cast<std::size_t>(i)])] = i;
    return Bijection(std::move(inv), l_set_);
}

Bijection Bijection::compose(const Bijection& a, const Bijection& b) {
    if (a.n() != b.n()) throw std::invalid_argument("Bijection: size mismatch in compose");
    std::vector<int> m(a.map_.size());
    for (int i = 0; i < a.n(); ++i) m[static_cast<std::size_t>(i)] = a(b(i));
    return Bijection(std::move(m));
}

VertexSubset::VertexSubset(int n, const std::vector<int>& members) : bits_(static_cast<std::size_t>(n)) {
    for (int v : members) {
        if (v < 0 || v >= n) throw std::invalid_argument("VertexSubset: vertex out of range");
        bits_.set(static_cast<std::size_t>(v));
    }
}

std::vector<int> VertexSubset::members() const {
    std::vector<int> out;
    for (std::size_t i : bits_.ones()) out.push_back(static_cast<int>(i));
    return out;
}

Hypergraph::Hypergraph(int n, int k, std::vector<std::uint64_t> edge_ranks)
    : n_(n), k_(k), edges_(std::move(edge_ranks)) {
    if (k < 2 || k > n) throw std::invalid_argument("Hypergraph: need 2 <= k <= n");
    total_ = binom(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    if (!edges_.empty() && edges_.back() >= total_)
        throw std::invalid_argument("Hypergraph: edge rank out of range");
    if (total_ <= kBitsetCap) {
        view_.emplace(static_cast<std::size_t>(total_));
        for (std::uint64_t r : edges_) view_->set(static_cast<std::size_t>(r));
    }
}

bool Hypergraph::has_edge_rank(std::uint64_t rank) const {
    if (view_) return view_->test(static_cast<std::size_t>(rank));
    return std::binary_search(edges_.begin(), edges_.end(), rank);
}

std::vector<std::vector<int>> Hypergraph::edge_tuples() const {
    std::vector<std::vector<int>> out;
    out.reserve(edges_.size());
    for (std::uint64_t r : edges_) out.push_back(unrank_subset(r, n_, k_));
    return out;
}

Hypergraph sample_hypergraph(int n, int k, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_hypergraph: p outside [0,1]");
    const std::uint64_t total = binom(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
    std::vector<std::uint64_t> edges;
    if (p == 0.0) return Hypergraph(n, k, {});
    if (p == 1.0) {
        edges.resize(total);
        for (std::uint64_t r = 0; r < total; ++r) edges[r] = r;
        return Hypergraph(n, k, std::move(edges));
    }
    // Draw uniforms through the project's own 53-bit mapping so generation is
    // pinned by documented constants, not the library's distribution internals.
    std::mt19937_64 rng(seed);
    if (total <= Hypergraph::kBitsetCap) {
        for (std::uint64_t r = 0; r < total; ++r)
            if (uniform01(rng()) < p) edges.push_back(r);
    } else {
        // Geometric skipping: jump over runs of absent edges.
        const double log1mp = std::log1p(-p);
        double r = -1.0;
        while (true) {
            double u = uniform01(rng());
            if (u <= 0.0) u = std::numeric_limits<double>::min();
            r += 1.0 + std::floor(std::log(u) / log1mp);
            if (r >= static_cast<double>(total)) break;
            edges.push_back(static_cast<std::uint64_t>(r));
        }
    }
    return Hypergraph(n, k, std::move(edges));
}

Hypergraph apply_bijection(const Hypergraph& g, const Bijection& pi) {
    if (pi.n() != g.n()) throw std::invalid_argument("apply_bijection: size mismatch");
    BinomTable tab(static_cast<std::uint64_t>(g.n()), static_cast<std::uint64_t>(g.k()));
    std::vector<std::uint64_t> out;
    out.reserve(g.edge_count());
    std::vector<int> img(static_cast<std::size_t>(g.k()));
    for (std::uint64_t r : g.edge_ranks()) {
        std::vector<int> t = unrank_subset(r, g.n(), g.k());
        for (std::size_t i = 0; i < t.size(); ++i) img[i] = pi(t[i]);
        std::sort(img.begin(), img.end());
        out.push_back(rank_subset(img, tab));
    }
    Hypergraph h(g.n(), g.k(), std::move(out));
    if (h.edge_count() != g.edge_count())
        throw std::logic_error("apply_bijection: edge count changed");
    return h;
}

std::int64_t overlap(const Hypergraph& g, const Bijection& pi, const Hypergraph& h) {
    if (g.n() != h.n() || g.k() != h.k() || pi.n() != g.n())
        throw std::invalid_argument("overlap: shape mismatch");
    BinomTable tab(static_cast<std::uint64_t>(g.n()), static_cast<std::uint64_t>(g.k()));
    std::int64_t c = 0;
    std::vector<int> img(static_cast<std::size_t>(g.k()));
    for (std::uint64_t r : g.edge_ranks()) {
        std::vector<int> t = unrank_subset(r, g.n(), g.k());
        for (std::size_t i = 0; i < t.size(); ++i) img[i] = pi(t[i]);
        std::sort(img.begin(), img.end());
        if (h.has_edge_rank(rank_subset(img, tab))) ++c;
    }
    return c;
}

Rational edge_density(const Hypergraph& h) {
    return Rational(static_cast<std::int64_t>(h.edge_count()),
                    static_cast<std::int64_t>(h.candidate_count()));
}

Hypergraph complement(const Hypergraph& h) {
    std::vector<std::uint64_t> out;
    out.reserve(static_cast<std::size_t>(h.candidate_count() - h.edge_count()));
    const auto& in = h.edge_ranks();
    std::size_t j = 0;
    for (std::uint64_t r = 0; r < h.candidate_count(); ++r) {
        if (j < in.size() && in[j] == r) { ++j; continue; }
        out.push_back(r);
    }
    return Hypergraph(h.n(), h.k(), std::move(out));
}

std::int64_t induced_edge_count(const Hypergraph& h, const VertexSubset& s) {
    if (s.n() != h.n()) throw std::invalid_argument("induced_edge_count: size mismatch");
    if (s.cardinality() < h.k()) return 0;
    std::int64_t c = 0;
    for (const auto& t : h.edge_tuples()) {
        bool inside = true;
        for (int v : t)
            if (!s.contains(v)) { inside = false; break; }
        if (inside) ++c;
    }
    return c;
}

Rational pair_baseline(const Hypergraph& g, const Hypergraph& h) {
    // e(G)e(H)/C(n,k), reduced in 128-bit before it ever sees 64-bit storage.
    Rational eg(static_cast<std::int64_t>(g.edge_count()), 1);
    Rational frac(static_cast<std::int64_t>(h.edge_count()),
                  static_cast<std::int64_t>(g.candidate_count()));
    return eg * frac;
}

void write_hypergraph(std::ostream& os, const Hypergraph& h) {
    os << h.k() << ' ' << h.n() << ' ' << h.edge_count() << '\n';
    for (const auto& t : h.edge_tuples()) {
        for (std::size_t i = 0; i < t.size(); ++i) os << (i ? " " : "") << t[i];
        os << '\n';
    }
}

Hypergraph read_hypergraph(std::istream& is) {
    std::string line;
    int k = -1, n = -1;
    std::uint64_t m = 0;
    bool have_header = false;
    std::vector<std::uint64_t> edges;
    while (std::getline(is, line)) {
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ls(line);
        if (!have_header) {
            if (!(ls >> k >> n >> m)) throw std::invalid_argument("hypergraph text: bad header");
            have_header = true;
            continue;
        }
        std::vector<int> t(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            if (!(ls >> t[static_cast<std::size_t>(i)]))
                throw std::invalid_argument("hypergraph text: bad edge line");
        edges.push_back(rank_subset(t, n));
    }
    if (!have_header) throw std::invalid_argument("hypergraph text: missing header");
    if (edges.size() != m) throw std::invalid_argument("hypergraph text: edge count mismatch");
    return Hypergraph(n, k, std::move(edges));
}

std::string to_text(const Hypergraph& h) {
    std::ostringstream os;
    write_hypergraph(os, h);
    return os.str();
}

Hypergraph from_text(const std::string& text) {
    std::istringstream is(text);
    return read_hypergraph(is);
}

}  // namespace hyperdisc
