// Experiment orchestration: seeded grid sweeps, scaling summaries against the
// regime predictions, CSV/JSON emission, SVG charts.
#ifndef HYPERDISC_SWEEP_HPP
#define HYPERDISC_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperdisc/certifier.hpp"
#include "hyperdisc/hypergraph.hpp"
#include "hyperdisc/report.hpp"

namespace hyperdisc {

// q > 1/2 reduces to 1-q by complementing H; p > 1/2 likewise via G; p > q
// swaps the two sides. disc is invariant under all three.
struct PqNormalization {
    double p = 0, q = 0;
    bool complement_g = false, complement_h = false, swapped = false;
    std::string tag() const;  // "none" or "+"-joined transform names
};
PqNormalization normalize_pq(double p, double q);

// Edge probability as a function of n: "const:<x>" or "pow:<c>,<alpha>"
// meaning c * n^alpha.
struct PqSpec {
    enum class Kind { Const, Pow } kind = Kind::Const;
    double c = 0, alpha = 0;
    double eval(std::int64_t n) const;
    std::string str() const;
    static PqSpec parse(const std::string& text);
};

enum class SweepMode { Certify, Oracle, Bounds, Envelope };
SweepMode parse_mode(const std::string& name);
std::string mode_name(SweepMode m);

struct SweepConfig {
    std::vector<std::int64_t> ns;
    std::vector<int> ks;
    std::vector<PqSpec> ps, qs;
    int seeds_per_point = 1;
    SweepMode mode = SweepMode::Certify;
    std::string output;
    int parallelism = 1;
    std::uint64_t master_seed = 0;
    bool keep_witnesses = false;
    std::string witness_dir;
    bool timing = false;  // adds a wall_ms column; off by default so reruns are byte-identical
    CertifierConfig certifier;

    static SweepConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct SweepRow {
    std::uint64_t index = 0;
    std::int64_t n = 0;
    int k = 0;
    double p = 0, q = 0;  // after complement normalization
    std::uint64_t seed = 0;  // row seed; generation uses mix64(seed,1)/mix64(seed,2)
    std::string regime;
    double predicted = 0, achieved = 0, ratio = 0;
    std::string provenance;
    bool ok = false;
    std::string error;
    double wall_ms = 0;
};

// Deterministic per config; rows are independent and executed concurrently up
// to the parallelism hint, emitted in row-index order.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

// Shared by the sweep and the standalone certify command so a 1-point sweep
// reproduces the standalone output byte for byte. Generation streams are
// mix64(row_seed, 1) for G, mix64(row_seed, 2) for H, mix64(row_seed, 3) for
// the certifier's pruning seed; complement/swap transforms from normalize_pq
// are applied to the sampled hypergraphs.
struct GeneratedPair {
    Hypergraph g, h;
    PqNormalization norm;
};
GeneratedPair generate_pair(std::int64_t n, int k, double p, double q, std::uint64_t row_seed);

struct GeneratedCertify {
    Hypergraph g, h;
    PqNormalization norm;
    DiscrepancyReport report;
};
GeneratedCertify certify_generated(std::int64_t n, int k, double p, double q,
                                   std::uint64_t row_seed, const CertifierConfig& cfg,
                                   bool fallback_only = false);

void write_rows_csv(std::ostream& os, const std::vector<SweepRow>& rows, bool timing);
std::vector<SweepRow> read_rows_csv(std::istream& is);

struct ScalingPerN {
    std::int64_t n = 0;
    int rows = 0;
    double median_achieved = 0, median_predicted = 0;
    double median_ratio = 0, q25_ratio = 0, q75_ratio = 0;
};

struct ScalingGroup {
    int k = 0;
    std::string regime;
    std::vector<ScalingPerN> per_n;
    std::optional<double> slope_achieved, slope_predicted, slope_deviation;
    bool flagged = false;  // deviation > 0.15
    std::string notice;
};

struct ScalingSummary {
    std::vector<ScalingGroup> groups;
    nlohmann::json to_json() const;
};

ScalingSummary scaling_report(const std::vector<SweepRow>& rows);

// Log-log chart of median achieved (solid) and predicted (dashed) vs n.
std::string scaling_svg(const ScalingSummary& summary);

}  // namespace hyperdisc

#endif
