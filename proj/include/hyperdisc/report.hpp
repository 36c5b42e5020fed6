// Discrepancy reports: exact values, witness, provenance, JSON wire format.
#ifndef HYPERDISC_REPORT_HPP
#define HYPERDISC_REPORT_HPP

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hyperdisc/hypergraph.hpp"
#include "hyperdisc/rational.hpp"

namespace hyperdisc {

// Witness is either a bijection (pair discrepancy) or a vertex subset.
using Witness = std::variant<Bijection, std::vector<int>>;

struct DiscrepancyReport {
    Rational value;        // max(plus_value, minus_value)
    Rational plus_value;   // overshoot against the baseline
    Rational minus_value;  // undershoot against the baseline
    Rational baseline;     // rho_G rho_H C(n,k), or rho_H C(|S|,k) for subsets
    Witness witness = std::vector<int>{};
    std::int64_t witness_overlap = 0;  // overlap (or induced count) achieved by the witness
    std::string provenance;  // oracle | certifier-dense | certifier-sparse | certifier-fallback
    std::string trace;       // per-stage sizes for certifier paths

    nlohmann::json to_json() const;
    std::string to_json_string() const;  // stable byte layout (sorted keys)
};

// Recompute the witness deviation from first principles; true iff it
// reproduces the stored overlap and values exactly.
bool self_check(const DiscrepancyReport& r, const Hypergraph& g, const Hypergraph& h);

}  // namespace hyperdisc

#endif
