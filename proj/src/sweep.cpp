#include "hyperdisc/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hyperdisc/bounds.hpp"
#include "hyperdisc/oracle.hpp"
#include "hyperdisc/rng.hpp"

namespace hyperdisc {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double quantile_of(std::vector<double> v, double q) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    double pos = q * static_cast<double>(v.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    std::size_t hi = std::min(lo + 1, v.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return v[lo] * (1 - frac) + v[hi] * frac;
}

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / sxx;
}

}  // namespace

std::string PqNormalization::tag() const {
    std::string t;
    if (complement_g) t += t.empty() ? "complement-G" : "+complement-G";
    if (complement_h) t += t.empty() ? "complement-H" : "+complement-H";
    if (swapped) t += t.empty() ? "swap" : "+swap";
    return t.empty() ? "none" : t;
}

PqNormalization normalize_pq(double p, double q) {
    if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0))
        throw std::invalid_argument("normalize_pq: p, q must lie in (0,1)");
    PqNormalization out;
    out.p = p;
    out.q = q;
    if (out.p > 0.5) { out.p = 1.0 - out.p; out.complement_g = true; }
    if (out.q > 0.5) { out.q = 1.0 - out.q; out.complement_h = true; }
    if (out.p > out.q) { std::swap(out.p, out.q); out.swapped = true; }
    return out;
}

double PqSpec::eval(std::int64_t n) const {
    return kind == Kind::Const ? c : c * std::pow(static_cast<double>(n), alpha);
}

std::string PqSpec::str() const {
    return kind == Kind::Const ? "const:" + g17(c) : "pow:" + g17(c) + "," + g17(alpha);
}

PqSpec PqSpec::parse(const std::string& text) {
    PqSpec s;
    if (text.rfind("const:", 0) == 0) {
        s.kind = Kind::Const;
        s.c = std::stod(text.substr(6));
    } else if (text.rfind("pow:", 0) == 0) {
        auto comma = text.find(',', 4);
        if (comma == std::string::npos) throw std::invalid_argument("PqSpec: pow wants c,alpha");
        s.kind = Kind::Pow;
        s.c = std::stod(text.substr(4, comma - 4));
        s.alpha = std::stod(text.substr(comma + 1));
    } else {
        // bare number means a constant
        s.kind = Kind::Const;
        s.c = std::stod(text);
    }
    return s;
}

SweepMode parse_mode(const std::string& name) {
    if (name == "certify") return SweepMode::Certify;
    if (name == "oracle") return SweepMode::Oracle;
    if (name == "bounds") return SweepMode::Bounds;
    if (name == "envelope") return SweepMode::Envelope;
    throw std::invalid_argument("unknown sweep mode: " + name);
}

std::string mode_name(SweepMode m) {
    switch (m) {
        case SweepMode::Certify: return "certify";
        case SweepMode::Oracle: return "oracle";
        case SweepMode::Bounds: return "bounds";
        case SweepMode::Envelope: return "envelope";
    }
    return "?";
}

namespace {

std::vector<PqSpec> parse_spec_list(const nlohmann::json& j) {
    std::vector<PqSpec> out;
    for (const auto& e : j) {
        if (e.is_number()) {
            PqSpec s;
            s.kind = PqSpec::Kind::Const;
            s.c = e.get<double>();
            out.push_back(s);
        } else {
            out.push_back(PqSpec::parse(e.get<std::string>()));
        }
    }
    return out;
}

CertifierConfig certifier_from_json(const nlohmann::json& j) {
    CertifierConfig c;
    if (j.contains("c_gamma")) c.c_gamma = j["c_gamma"].get<double>();
    if (j.contains("survival_slack")) c.survival_slack = j["survival_slack"].get<double>();
    if (j.contains("block_size_exponent")) c.block_size_exponent = j["block_size_exponent"].get<double>();
    if (j.contains("neighborhood_tolerance"))
        c.neighborhood_tolerance = j["neighborhood_tolerance"].get<double>();
    if (j.contains("fallback_enabled")) c.fallback_enabled = j["fallback_enabled"].get<bool>();
    if (j.contains("force_pipeline")) c.force_pipeline = j["force_pipeline"].get<bool>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    return c;
}

}  // namespace

SweepConfig SweepConfig::from_json(const nlohmann::json& j) {
    SweepConfig c;
    for (const auto& e : j.at("n")) c.ns.push_back(e.get<std::int64_t>());
    for (const auto& e : j.at("k")) c.ks.push_back(e.get<int>());
    c.ps = parse_spec_list(j.at("p"));
    c.qs = parse_spec_list(j.at("q"));
    if (c.ns.empty() || c.ks.empty() || c.ps.empty() || c.qs.empty())
        throw std::invalid_argument("sweep config: empty grid");
    c.seeds_per_point = j.value("seeds_per_point", 1);
    if (c.seeds_per_point < 1) throw std::invalid_argument("sweep config: seeds_per_point >= 1");
    c.mode = parse_mode(j.value("mode", std::string("certify")));
    c.output = j.value("output", std::string());
    c.parallelism = j.value("parallelism", 1);
    c.master_seed = j.value("master_seed", std::uint64_t{0});
    c.keep_witnesses = j.value("keep_witnesses", false);
    c.witness_dir = j.value("witness_dir", std::string());
    c.timing = j.value("timing", false);
    if (j.contains("certifier")) c.certifier = certifier_from_json(j["certifier"]);
    return c;
}

nlohmann::json SweepConfig::to_json() const {
    nlohmann::json j;
    j["n"] = ns;
    j["k"] = ks;
    std::vector<std::string> pss, qss;
    for (const auto& s : ps) pss.push_back(s.str());
    for (const auto& s : qs) qss.push_back(s.str());
    j["p"] = pss;
    j["q"] = qss;
    j["seeds_per_point"] = seeds_per_point;
    j["mode"] = mode_name(mode);
    j["output"] = output;
    j["parallelism"] = parallelism;
    j["master_seed"] = master_seed;
    j["keep_witnesses"] = keep_witnesses;
    j["witness_dir"] = witness_dir;
    j["timing"] = timing;
    return j;
}

GeneratedPair generate_pair(std::int64_t n, int k, double p, double q, std::uint64_t row_seed) {
    PqNormalization norm = normalize_pq(p, q);
    Hypergraph g = sample_hypergraph(static_cast<int>(n), k, p, mix64(row_seed, 1));
    Hypergraph h = sample_hypergraph(static_cast<int>(n), k, q, mix64(row_seed, 2));
    if (norm.complement_g) g = complement(g);
    if (norm.complement_h) h = complement(h);
    if (norm.swapped) std::swap(g, h);
    return GeneratedPair{std::move(g), std::move(h), norm};
}

GeneratedCertify certify_generated(std::int64_t n, int k, double p, double q,
                                   std::uint64_t row_seed, const CertifierConfig& cfg,
                                   bool fallback_only) {
    GeneratedPair pair = generate_pair(n, k, p, q, row_seed);
    CertifierConfig cc = cfg;
    cc.seed = mix64(row_seed, 3);
    DiscrepancyReport rep = fallback_only
                                ? certify_fallback(pair.g, pair.h, pair.norm.p, pair.norm.q, cc)
                                : certify(pair.g, pair.h, pair.norm.p, pair.norm.q, cc);
    return GeneratedCertify{std::move(pair.g), std::move(pair.h), pair.norm, std::move(rep)};
}

namespace {

SweepRow execute_row(const SweepConfig& cfg, std::uint64_t index, std::int64_t n, int k,
                     const PqSpec& pspec, const PqSpec& qspec, int seed_idx,
                     std::string* witness_json) {
    SweepRow row;
    row.index = index;
    row.n = n;
    row.k = k;
    row.seed = mix64(cfg.master_seed, index);
    (void)seed_idx;
    auto started = std::chrono::steady_clock::now();
    try {
        double p_raw = pspec.eval(n), q_raw = qspec.eval(n);
        PqNormalization norm = normalize_pq(p_raw, q_raw);
        row.p = norm.p;
        row.q = norm.q;
        switch (cfg.mode) {
            case SweepMode::Certify: {
                GeneratedCertify run = certify_generated(n, k, p_raw, q_raw, row.seed, cfg.certifier);
                if (!self_check(run.report, run.g, run.h))
                    throw std::logic_error("witness self-check failed");
                RegimeParams rp = norm.p > 0 ? classify_regime(n, k, norm.p, norm.q) : RegimeParams{};
                row.regime = norm.p > 0 ? regime_name(rp.regime) : "degenerate";
                row.predicted = rp.predicted;
                row.achieved = run.report.value.to_double();
                row.provenance = run.report.provenance;
                if (norm.tag() != "none") row.provenance += "|" + norm.tag();
                if (witness_json) *witness_json = run.report.to_json_string();
                break;
            }
            case SweepMode::Oracle: {
                GeneratedPair run = generate_pair(n, k, p_raw, q_raw, row.seed);
                DiscrepancyReport rep = exact_disc_pair(run.g, run.h);
                RegimeParams rp = classify_regime(n, k, norm.p, norm.q);
                row.regime = regime_name(rp.regime);
                row.predicted = rp.predicted;
                row.achieved = rep.value.to_double();
                row.provenance = rep.provenance;
                if (norm.tag() != "none") row.provenance += "|" + norm.tag();
                if (witness_json) *witness_json = rep.to_json_string();
                break;
            }
            case SweepMode::Bounds: {
                RegimeParams rp = classify_regime(n, k, norm.p, norm.q);
                row.regime = regime_name(rp.regime);
                row.predicted = rp.predicted;
                row.achieved = predicted_disc_via_lambda(n, k, norm.p, norm.q);
                row.provenance = "lambda-route";
                break;
            }
            case SweepMode::Envelope: {
                RegimeParams rp = classify_regime(n, k, norm.p, norm.q);
                Envelope env = upper_envelope(n, k, norm.p, norm.q);
                row.regime = regime_name(rp.regime);
                row.predicted = rp.predicted;
                row.achieved = env.lambda;
                row.provenance = std::string("envelope;eps=") + g17(env.eps) +
                                 (env.sparse_branch ? ";branch=gamma-prime" : ";branch=chernoff");
                break;
            }
        }
        row.ratio = row.predicted > 0 ? row.achieved / row.predicted : 0.0;
        row.ok = true;
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    if (cfg.ns.empty() || cfg.ks.empty() || cfg.ps.empty() || cfg.qs.empty())
        throw std::invalid_argument("run_sweep: empty grid");
    struct Point {
        std::int64_t n;
        int k;
        const PqSpec* p;
        const PqSpec* q;
        int seed_idx;
    };
    std::vector<Point> points;
    for (std::int64_t n : cfg.ns)
        for (int k : cfg.ks)
            for (const auto& p : cfg.ps)
                for (const auto& q : cfg.qs)
                    for (int s = 0; s < cfg.seeds_per_point; ++s)
                        points.push_back({n, k, &p, &q, s});
    std::vector<SweepRow> rows(points.size());
    std::vector<std::string> witnesses(cfg.keep_witnesses ? points.size() : 0);
#ifdef _OPENMP
    int threads = std::max(1, cfg.parallelism);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point& pt = points[i];
        rows[i] = execute_row(cfg, i, pt.n, pt.k, *pt.p, *pt.q, pt.seed_idx,
                              cfg.keep_witnesses ? &witnesses[i] : nullptr);
    }
#else
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point& pt = points[i];
        rows[i] = execute_row(cfg, i, pt.n, pt.k, *pt.p, *pt.q, pt.seed_idx,
                              cfg.keep_witnesses ? &witnesses[i] : nullptr);
    }
#endif
    if (cfg.keep_witnesses && !cfg.witness_dir.empty()) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (witnesses[i].empty()) continue;
            std::ofstream out(cfg.witness_dir + "/row_" + std::to_string(i) + ".json");
            out << witnesses[i] << '\n';
        }
        // Spot-recompute a handful of rows; reports must come back identical.
        if ((cfg.mode == SweepMode::Certify || cfg.mode == SweepMode::Oracle) && !rows.empty()) {
            for (int probe = 0; probe < 5; ++probe) {
                std::size_t i = static_cast<std::size_t>(mix64(cfg.master_seed, 0xbeef00 + static_cast<std::uint64_t>(probe)) % rows.size());
                if (!rows[i].ok) continue;
                const Point& pt = points[i];
                std::string redo;
                SweepRow again = execute_row(cfg, i, pt.n, pt.k, *pt.p, *pt.q, pt.seed_idx, &redo);
                if (!again.ok || redo != witnesses[i])
                    throw std::logic_error("witness spot-check failed at row " + std::to_string(i));
            }
        }
    }
    return rows;
}

void write_rows_csv(std::ostream& os, const std::vector<SweepRow>& rows, bool timing) {
    os << "# hyperdisc sweep schema=v1\n";
    os << "n,k,p,q,seed,regime,predicted,achieved,ratio,provenance,ok,error";
    if (timing) os << ",wall_ms";
    os << '\n';
    for (const auto& r : rows) {
        os << r.n << ',' << r.k << ',' << g17(r.p) << ',' << g17(r.q) << ',' << r.seed << ','
           << r.regime << ',' << g17(r.predicted) << ',' << g17(r.achieved) << ',' << g17(r.ratio)
           << ',' << r.provenance << ',' << (r.ok ? 1 : 0) << ',' << r.error;
        if (timing) os << ',' << g17(r.wall_ms);
        os << '\n';
    }
}

std::vector<SweepRow> read_rows_csv(std::istream& is) {
    std::vector<SweepRow> rows;
    std::string line;
    bool header_seen = false;
    std::uint64_t index = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) { header_seen = true; continue; }
        std::vector<std::string> f;
        std::size_t start = 0;
        while (true) {
            std::size_t pos = line.find(',', start);
            if (pos == std::string::npos) {
                f.push_back(line.substr(start));
                break;
            }
            f.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
        if (f.size() < 12) throw std::invalid_argument("sweep csv: short row");
        SweepRow r;
        r.index = index++;
        r.n = std::stoll(f[0]);
        r.k = std::stoi(f[1]);
        r.p = std::stod(f[2]);
        r.q = std::stod(f[3]);
        r.seed = std::stoull(f[4]);
        r.regime = f[5];
        r.predicted = std::stod(f[6]);
        r.achieved = std::stod(f[7]);
        r.ratio = std::stod(f[8]);
        r.provenance = f[9];
        r.ok = f[10] == "1";
        r.error = f[11];
        if (f.size() > 12) r.wall_ms = std::stod(f[12]);
        rows.push_back(std::move(r));
    }
    return rows;
}

ScalingSummary scaling_report(const std::vector<SweepRow>& rows) {
    ScalingSummary out;
    // group rows by (k, regime)
    std::vector<std::pair<int, std::string>> keys;
    for (const auto& r : rows) {
        if (!r.ok) continue;
        std::pair<int, std::string> key{r.k, r.regime};
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());
    for (const auto& key : keys) {
        ScalingGroup grp;
        grp.k = key.first;
        grp.regime = key.second;
        std::vector<std::int64_t> ns;
        for (const auto& r : rows)
            if (r.ok && r.k == key.first && r.regime == key.second &&
                std::find(ns.begin(), ns.end(), r.n) == ns.end())
                ns.push_back(r.n);
        std::sort(ns.begin(), ns.end());
        std::vector<double> log_n, log_a, log_p;
        for (std::int64_t n : ns) {
            std::vector<double> ach, pred, ratio;
            for (const auto& r : rows) {
                if (!(r.ok && r.k == key.first && r.regime == key.second && r.n == n)) continue;
                ach.push_back(r.achieved);
                pred.push_back(r.predicted);
                ratio.push_back(r.ratio);
            }
            ScalingPerN per;
            per.n = n;
            per.rows = static_cast<int>(ach.size());
            per.median_achieved = median_of(ach);
            per.median_predicted = median_of(pred);
            per.median_ratio = median_of(ratio);
            per.q25_ratio = quantile_of(ratio, 0.25);
            per.q75_ratio = quantile_of(ratio, 0.75);
            grp.per_n.push_back(per);
            if (per.median_achieved > 0 && per.median_predicted > 0) {
                log_n.push_back(std::log(static_cast<double>(n)));
                log_a.push_back(std::log(per.median_achieved));
                log_p.push_back(std::log(per.median_predicted));
            }
        }
        if (log_n.size() >= 3) {
            grp.slope_achieved = ls_slope(log_n, log_a);
            grp.slope_predicted = ls_slope(log_n, log_p);
            grp.slope_deviation = std::abs(*grp.slope_achieved - *grp.slope_predicted);
            grp.flagged = *grp.slope_deviation > 0.15;
        } else {
            grp.notice = "slope omitted: fewer than 3 distinct n with positive medians";
        }
        out.groups.push_back(std::move(grp));
    }
    return out;
}

nlohmann::json ScalingSummary::to_json() const {
    nlohmann::json groups_json = nlohmann::json::array();
    for (const auto& g : groups) {
        nlohmann::json jg;
        jg["k"] = g.k;
        jg["regime"] = g.regime;
        nlohmann::json per = nlohmann::json::array();
        for (const auto& pn : g.per_n) {
            per.push_back({{"n", pn.n},
                           {"rows", pn.rows},
                           {"median_achieved", pn.median_achieved},
                           {"median_predicted", pn.median_predicted},
                           {"median_ratio", pn.median_ratio},
                           {"q25_ratio", pn.q25_ratio},
                           {"q75_ratio", pn.q75_ratio}});
        }
        jg["per_n"] = per;
        if (g.slope_achieved) {
            jg["slope_achieved"] = *g.slope_achieved;
            jg["slope_predicted"] = *g.slope_predicted;
            jg["slope_deviation"] = *g.slope_deviation;
            jg["flagged"] = g.flagged;
        }
        if (!g.notice.empty()) jg["notice"] = g.notice;
        groups_json.push_back(jg);
    }
    return nlohmann::json{{"groups", groups_json}};
}

std::string scaling_svg(const ScalingSummary& summary) {
    const int width = 720, height = 480, margin = 60;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    for (const auto& g : summary.groups) {
        for (const auto& pn : g.per_n) {
            if (pn.median_achieved <= 0 || pn.median_predicted <= 0) continue;
            double x = std::log10(static_cast<double>(pn.n));
            min_x = std::min(min_x, x);
            max_x = std::max(max_x, x);
            for (double y : {std::log10(pn.median_achieved), std::log10(pn.median_predicted)}) {
                min_y = std::min(min_y, y);
                max_y = std::max(max_y, y);
            }
        }
    }
    if (min_x > max_x) {
        svg << "<text x=\"20\" y=\"40\">no positive data</text>\n</svg>\n";
        return svg.str();
    }
    if (max_x - min_x < 1e-9) max_x = min_x + 1;
    if (max_y - min_y < 1e-9) max_y = min_y + 1;
    auto px = [&](double x) { return margin + (x - min_x) / (max_x - min_x) * (width - 2 * margin); };
    auto py = [&](double y) { return height - margin - (y - min_y) / (max_y - min_y) * (height - 2 * margin); };
    svg << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
        << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 15 << "\">log10 n</text>\n";
    svg << "<text x=\"15\" y=\"" << height / 2 << "\" transform=\"rotate(-90 15," << height / 2
        << ")\">log10 value</text>\n";
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    int ci = 0;
    int legend_y = margin;
    for (const auto& g : summary.groups) {
        const char* color = colors[ci % 4];
        std::ostringstream solid, dashed;
        for (const auto& pn : g.per_n) {
            if (pn.median_achieved <= 0 || pn.median_predicted <= 0) continue;
            double x = px(std::log10(static_cast<double>(pn.n)));
            solid << x << ',' << py(std::log10(pn.median_achieved)) << ' ';
            dashed << x << ',' << py(std::log10(pn.median_predicted)) << ' ';
            svg << "<circle cx=\"" << x << "\" cy=\"" << py(std::log10(pn.median_achieved))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        svg << "<polyline points=\"" << solid.str() << "\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<polyline points=\"" << dashed.str() << "\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
        svg << "<text x=\"" << width - margin - 200 << "\" y=\"" << legend_y << "\" fill=\"" << color
            << "\">k=" << g.k << " " << g.regime << " (solid=achieved, dashed=predicted)</text>\n";
        legend_y += 18;
        ++ci;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace hyperdisc
