#include "hyperdisc/report.hpp"

namespace hyperdisc {

nlohmann::json DiscrepancyReport::to_json() const {
    nlohmann::json j;
    j["value_num"] = value.num();
    j["value_den"] = value.den();
    j["plus_num"] = plus_value.num();
    j["plus_den"] = plus_value.den();
    j["minus_num"] = minus_value.num();
    j["minus_den"] = minus_value.den();
    j["baseline_num"] = baseline.num();
    j["baseline_den"] = baseline.den();
    if (std::holds_alternative<Bijection>(witness)) {
        j["witness"] = nlohmann::json{{"bijection", std::get<Bijection>(witness).map()}};
    } else {
        j["witness"] = nlohmann::json{{"subset", std::get<std::vector<int>>(witness)}};
    }
    j["overlap"] = witness_overlap;
    j["provenance"] = provenance;
    j["trace"] = trace;
    return j;
}

std::string DiscrepancyReport::to_json_string() const {
    // nlohmann::json keeps object keys sorted, so dump() is byte-stable.
    return to_json().dump();
}

bool self_check(const DiscrepancyReport& r, const Hypergraph& g, const Hypergraph& h) {
    if (std::holds_alternative<Bijection>(r.witness)) {
        const auto& pi = std::get<Bijection>(r.witness);
        std::int64_t ov = overlap(g, pi, h);
        if (ov != r.witness_overlap) return false;
        Rational dev = Rational(ov) - r.baseline;
        // The witness must realize the reported value on at least one side.
        return dev == r.plus_value || -dev == r.minus_value;
    }
    VertexSubset s(h.n(), std::get<std::vector<int>>(r.witness));
    std::int64_t cnt = induced_edge_count(h, s);
    if (cnt != r.witness_overlap) return false;
    Rational dev = Rational(cnt) - r.baseline;
    return dev.abs() == r.value;
}

}  // namespace hyperdisc
