// hyperdisc: discrepancy experiments between random k-uniform hypergraphs.
//
// Subcommands: gen, disc-exact, certify, lambda, bounds, verify-bounds,
// sweep, report.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "hyperdisc/bounds.hpp"
#include "hyperdisc/certifier.hpp"
#include "hyperdisc/oracle.hpp"
#include "hyperdisc/rng.hpp"
#include "hyperdisc/sweep.hpp"

using namespace hyperdisc;

namespace {

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open output file: " + path);
        out << text;
        if (text.empty() || text.back() != '\n') out << '\n';
    }
}

Hypergraph load_hypergraph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open hypergraph file: " + path);
    return read_hypergraph(in);
}

struct CsvWriter {
    std::ostringstream os;
    CsvWriter() { os << "function,params,value,bound,ok\n"; }
    void row(const std::string& fn, const std::string& params, double value, double bound, bool ok) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s,%s,%.12g,%.12g,%d\n", fn.c_str(), params.c_str(), value,
                      bound, ok ? 1 : 0);
        os << buf;
    }
};

int run_verify_bounds(const std::string& out_path, int samples, std::uint64_t seed) {
    CsvWriter csv;
    bool all_ok = true;
    auto note = [&](bool ok) { all_ok = all_ok && ok; };

    // binomial coefficient sandwich over the full grid
    for (std::int64_t m = 10; m <= 100; m += 10) {
        for (std::int64_t j = 1; j < m; ++j) {
            auto r = check_binomial_sandwich(m, static_cast<double>(j) / static_cast<double>(m));
            std::string params = "m=" + std::to_string(m) + ";pm=" + std::to_string(j);
            csv.row("sandwich-lower", params, r.value, r.lower, r.value >= r.lower);
            csv.row("sandwich-upper", params, r.value, r.upper, r.value <= r.upper);
            note(r.ok);
        }
    }

    // hypergeometric tail lower bound grid
    for (std::int64_t N : {200, 500, 1000, 2000}) {
        std::vector<std::int64_t> ds;
        for (int j = 1;; ++j) {
            std::int64_t d = std::llround(0.1 * static_cast<double>(N) * j);
            if (3 * d > 2 * N) break;
            ds.push_back(d);
        }
        for (std::int64_t d1 : ds) {
            for (std::int64_t d2 : ds) {
                double cap = static_cast<double>(d1) * static_cast<double>(d2) /
                             (100.0 * static_cast<double>(N));
                for (double K : {1.0, 2.0, std::min(3.0, cap)}) {
                    if (K < 1.0 || K > cap) continue;
                    auto r = hypergeom_tail_lower_check(N, d1, d2, K);
                    std::string params = "N=" + std::to_string(N) + ";d1=" + std::to_string(d1) +
                                         ";d2=" + std::to_string(d2) + ";K=" + std::to_string(K);
                    csv.row("hypergeom-tail-lower", params, r.tail, r.bound, r.ok);
                    note(r.ok);
                }
            }
        }
    }

    // Monte Carlo consistency for the Chernoff and Janson bounds
    std::mt19937_64 rng(seed);
    auto slack = [&](double bound) {
        double b = std::min(bound, 1.0);
        return 3.0 * std::sqrt(std::max(b * (1.0 - b), 1e-12) / samples);
    };
    struct Pt { int m; double rho, lambda; };
    for (Pt pt : {Pt{200, 0.5, 10}, Pt{200, 0.5, 20}, Pt{200, 0.5, 30}, Pt{1000, 0.3, 30},
                  Pt{1000, 0.3, 60}, Pt{500, 0.1, 25}}) {
        std::binomial_distribution<int> bin(pt.m, pt.rho);
        double mu = pt.m * pt.rho;
        int exceed = 0;
        for (int i = 0; i < samples; ++i)
            if (std::abs(bin(rng) - mu) > pt.lambda) ++exceed;
        double freq = static_cast<double>(exceed) / samples;
        double bound = chernoff_bound(mu, pt.lambda);
        bool ok = freq <= std::min(bound, 1.0) + slack(bound);
        std::string params = "m=" + std::to_string(pt.m) + ";rho=" + std::to_string(pt.rho) +
                             ";lambda=" + std::to_string(pt.lambda) + ";samples=" + std::to_string(samples);
        csv.row("chernoff-mc", params, freq, std::min(bound, 1.0), ok);
        note(ok);
    }
    for (Pt pt : {Pt{100, 0.3, 15}, Pt{400, 0.5, 40}, Pt{250, 0.2, 25}}) {
        std::binomial_distribution<int> bin(pt.m, pt.rho);
        double mu = pt.m * pt.rho;
        int low = 0;
        for (int i = 0; i < samples; ++i)
            if (bin(rng) <= mu - pt.lambda) ++low;
        double freq = static_cast<double>(low) / samples;
        double bound = janson_bound(mu, 0.0, pt.lambda);
        bool ok = freq <= std::min(bound, 1.0) + slack(bound);
        std::string params = "m=" + std::to_string(pt.m) + ";rho=" + std::to_string(pt.rho) +
                             ";lambda=" + std::to_string(pt.lambda) + ";samples=" + std::to_string(samples);
        csv.row("janson-mc", params, freq, std::min(bound, 1.0), ok);
        note(ok);
    }

    // lambda against brute-force maximization
    for (std::int64_t m = 1; m <= 30; ++m) {
        for (int ri = 1; ri <= 9; ri += 2) {
            double rho = 0.1 * ri;
            for (double K : {0.5, 1.0, 2.0, std::log(30.0)}) {
                double theta = std::exp(-K);
                std::int64_t best = 0;
                for (std::int64_t t = 0; t <= m; ++t)
                    if (binom_tail_exact(m, mpq_class(rho), t).get_d() >= theta) best = t;
                std::int64_t got = lambda_threshold(m, rho, K);
                bool ok = got == best;
                std::string params = "m=" + std::to_string(m) + ";rho=" + std::to_string(rho) +
                                     ";K=" + std::to_string(K);
                csv.row("lambda-vs-brute", params, static_cast<double>(got), static_cast<double>(best), ok);
                note(ok);
            }
        }
    }

    emit(csv.os.str(), out_path);
    return all_ok ? 0 : 1;
}

nlohmann::json regime_json(const RegimeParams& rp) {
    return nlohmann::json{{"n", rp.n},          {"k", rp.k},
                          {"p", rp.p},          {"q", rp.q},
                          {"N", rp.N},          {"gamma", rp.gamma},
                          {"regime", regime_name(rp.regime)}, {"predicted", rp.predicted},
                          {"low_pn_flag", rp.low_pn_flag}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relative discrepancy of random k-uniform hypergraphs"};
    app.require_subcommand(1);

    // --- gen ---
    auto* gen = app.add_subcommand("gen", "sample a random hypergraph and write its text form");
    int gen_n = 20, gen_k = 2;
    double gen_p = 0.5;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--k", gen_k, "edge size")->required();
    gen->add_option("--p", gen_p, "edge probability")->required();
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // --- disc-exact ---
    auto* de = app.add_subcommand("disc-exact", "brute-force discrepancy oracle");
    std::string de_g, de_h, de_input, de_out;
    int de_n = 6, de_k = 2, de_threads = 0;
    double de_p = 0.5, de_q = 0.5;
    std::uint64_t de_seed = 0;
    bool de_force = false, de_pruned = false, de_reduction = false;
    de->add_option("--g-file", de_g, "hypergraph file for G (pair oracle)");
    de->add_option("--h-file", de_h, "hypergraph file for H");
    de->add_option("--input", de_input, "hypergraph file for the subset oracle");
    de->add_option("--n", de_n, "generate: vertex count");
    de->add_option("--k", de_k, "generate: edge size");
    de->add_option("--p", de_p, "generate: probability for G");
    de->add_option("--q", de_q, "generate: probability for H");
    de->add_option("--seed", de_seed, "generate: row seed");
    de->add_option("--threads", de_threads, "enumeration tasks (0 = auto)");
    de->add_flag("--force", de_force, "override the size guards");
    de->add_flag("--pruned", de_pruned, "use the branch-and-bound enumerator");
    de->add_flag("--check-reduction", de_reduction, "verify disc(H) = max_i disc(G_i, H)");
    de->add_option("--out", de_out, "output path (default stdout)");

    // --- certify ---
    auto* ce = app.add_subcommand("certify", "constructive lower-bound certifier");
    std::string ce_g, ce_h, ce_out;
    int ce_n = 60, ce_k = 2;
    double ce_p = 0.5, ce_q = 0.5;
    std::uint64_t ce_seed = 0;
    CertifierConfig ce_cfg;
    bool ce_no_fallback = false, ce_fallback_only = false;
    ce->add_option("--g-file", ce_g, "hypergraph file for G (otherwise generated)");
    ce->add_option("--h-file", ce_h, "hypergraph file for H");
    ce->add_option("--n", ce_n, "generate: vertex count");
    ce->add_option("--k", ce_k, "generate: edge size");
    ce->add_option("--p", ce_p, "edge probability of G")->required();
    ce->add_option("--q", ce_q, "edge probability of H")->required();
    ce->add_option("--seed", ce_seed, "row seed; generation streams derive from it");
    ce->add_option("--c-gamma", ce_cfg.c_gamma, "codegree threshold constant");
    ce->add_option("--survival-slack", ce_cfg.survival_slack, "survival window multiplier");
    ce->add_option("--block-exponent", ce_cfg.block_size_exponent, "sparse block size exponent");
    ce->add_option("--tolerance", ce_cfg.neighborhood_tolerance, "neighborhood size tolerance");
    ce->add_option("--cert-seed", ce_cfg.seed, "pruning seed (files mode)");
    ce->add_flag("--no-fallback", ce_no_fallback, "disable the greedy fallback");
    ce->add_flag("--force-pipeline", ce_cfg.force_pipeline, "run the regime pipeline even when degenerate");
    ce->add_flag("--fallback-only", ce_fallback_only, "run only the greedy assignment");
    ce->add_option("--out", ce_out, "output path (default stdout)");

    // --- lambda ---
    auto* la = app.add_subcommand("lambda", "binomial rate-function deviation quantile");
    std::int64_t la_m = 10;
    double la_rho = 0.5, la_K = 1.0;
    std::string la_out;
    la->add_option("--m", la_m, "trial count")->required();
    la->add_option("--rho", la_rho, "success probability")->required();
    la->add_option("--K", la_K, "tail exponent")->required();
    la->add_option("--out", la_out, "output path (default stdout)");

    // --- bounds ---
    auto* bo = app.add_subcommand("bounds", "evaluate a single bound function");
    std::string bo_fn, bo_out;
    double bo_mu = 0, bo_lambda = 0, bo_delta = 0, bo_p = 0.5, bo_q = 0.5, bo_rho = 0.5, bo_K = 1;
    std::int64_t bo_m = 10, bo_N = 100, bo_d1 = 10, bo_d2 = 10, bo_n = 100;
    int bo_k = 2;
    bo->add_option("--fn", bo_fn,
                   "one of: chernoff, janson, entropy, sandwich, hypergeom-tail-check, lambda, "
                   "classify, predicted-lambda, envelope")
        ->required();
    bo->add_option("--mu", bo_mu, "mean");
    bo->add_option("--lambda", bo_lambda, "deviation");
    bo->add_option("--delta", bo_delta, "Janson dependency term");
    bo->add_option("--m", bo_m, "trial count");
    bo->add_option("--p", bo_p, "probability");
    bo->add_option("--q", bo_q, "probability");
    bo->add_option("--rho", bo_rho, "success probability");
    bo->add_option("--K", bo_K, "tail exponent");
    bo->add_option("--N", bo_N, "population size");
    bo->add_option("--d1", bo_d1, "first degree");
    bo->add_option("--d2", bo_d2, "second degree");
    bo->add_option("--n", bo_n, "vertex count");
    bo->add_option("--k", bo_k, "edge size");
    bo->add_option("--out", bo_out, "output path (default stdout)");

    // --- verify-bounds ---
    auto* vb = app.add_subcommand("verify-bounds", "grid checks with a pass/fail CSV");
    std::string vb_out;
    int vb_samples = 100000;
    std::uint64_t vb_seed = 515151;
    vb->add_option("--out", vb_out, "CSV path (default stdout)");
    vb->add_option("--samples", vb_samples, "Monte Carlo samples per point");
    vb->add_option("--seed", vb_seed, "Monte Carlo seed");

    // --- sweep ---
    auto* sw = app.add_subcommand("sweep", "run a seeded experiment grid");
    std::string sw_config, sw_output, sw_mode, sw_witness_dir;
    std::uint64_t sw_master = 0;
    int sw_par = 0, sw_seeds = 0;
    bool sw_keep = false, sw_timing = false;
    sw->add_option("--config", sw_config, "JSON config file")->required();
    sw->add_option("--output", sw_output, "CSV path (overrides config)");
    sw->add_option("--master-seed", sw_master, "master seed (overrides config)");
    sw->add_option("--parallelism", sw_par, "row concurrency (overrides config)");
    sw->add_option("--seeds-per-point", sw_seeds, "seeds per grid point (overrides config)");
    sw->add_option("--mode", sw_mode, "certify | oracle | bounds | envelope (overrides config)");
    sw->add_flag("--keep-witnesses", sw_keep, "write per-row witness JSON files");
    sw->add_option("--witness-dir", sw_witness_dir, "directory for witness files");
    sw->add_flag("--timing", sw_timing, "append a wall_ms column (breaks byte-stable reruns)");

    // --- report ---
    auto* rp = app.add_subcommand("report", "scaling summary from sweep rows");
    std::string rp_input, rp_out, rp_svg;
    rp->add_option("--input", rp_input, "sweep CSV")->required();
    rp->add_option("--out", rp_out, "summary JSON path (default stdout)");
    rp->add_option("--svg", rp_svg, "write a log-log chart to this path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            auto h = sample_hypergraph(gen_n, gen_k, gen_p, gen_seed);
            emit(to_text(h), gen_out);
            return 0;
        }

        if (*de) {
            OracleGuard guard;
            guard.force = de_force;
            if (de_reduction) {
                Hypergraph h = de_input.empty() ? sample_hypergraph(de_n, de_k, de_q, mix64(de_seed, 2))
                                                : load_hypergraph(de_input);
                bool ok = verify_reduction(h, guard);
                nlohmann::json j{{"reduction_holds", ok}};
                emit(j.dump(), de_out);
                return ok ? 0 : 1;
            }
            if (!de_input.empty()) {
                auto h = load_hypergraph(de_input);
                auto rep = exact_disc_subset(h, guard, de_threads);
                emit(rep.to_json_string(), de_out);
                return self_check(rep, h, h) ? 0 : 1;
            }
            Hypergraph g = de_g.empty() ? sample_hypergraph(de_n, de_k, de_p, mix64(de_seed, 1))
                                        : load_hypergraph(de_g);
            Hypergraph h = de_h.empty() ? sample_hypergraph(de_n, de_k, de_q, mix64(de_seed, 2))
                                        : load_hypergraph(de_h);
            auto rep = de_pruned ? exact_disc_pair_pruned(g, h, guard)
                                 : exact_disc_pair(g, h, guard, de_threads);
            emit(rep.to_json_string(), de_out);
            return self_check(rep, g, h) ? 0 : 1;
        }

        if (*ce) {
            ce_cfg.fallback_enabled = !ce_no_fallback;
            DiscrepancyReport rep;
            Hypergraph g(2, 2, {}), h(2, 2, {});
            if (!ce_g.empty() || !ce_h.empty()) {
                if (ce_g.empty() || ce_h.empty())
                    throw std::runtime_error("certify: provide both --g-file and --h-file or neither");
                g = load_hypergraph(ce_g);
                h = load_hypergraph(ce_h);
                auto norm = normalize_pq(ce_p, ce_q);
                if (norm.complement_g) g = complement(g);
                if (norm.complement_h) h = complement(h);
                if (norm.swapped) std::swap(g, h);
                rep = ce_fallback_only ? certify_fallback(g, h, norm.p, norm.q, ce_cfg)
                                       : certify(g, h, norm.p, norm.q, ce_cfg);
            } else {
                auto run = certify_generated(ce_n, ce_k, ce_p, ce_q, ce_seed, ce_cfg, ce_fallback_only);
                g = std::move(run.g);
                h = std::move(run.h);
                rep = std::move(run.report);
            }
            emit(rep.to_json_string(), ce_out);
            return self_check(rep, g, h) ? 0 : 1;
        }

        if (*la) {
            nlohmann::json j{{"m", la_m},
                             {"rho", la_rho},
                             {"K", la_K},
                             {"lambda", lambda_quantile(la_m, la_rho, la_K)},
                             {"threshold_t", lambda_threshold(la_m, la_rho, la_K)}};
            emit(j.dump(), la_out);
            return 0;
        }

        if (*bo) {
            nlohmann::json j{{"function", bo_fn}};
            if (bo_fn == "chernoff") {
                double raw = chernoff_bound(bo_mu, bo_lambda);
                j["value"] = raw;
                j["clamped"] = std::min(1.0, raw);
            } else if (bo_fn == "janson") {
                j["value"] = janson_bound(bo_mu, bo_delta, bo_lambda);
            } else if (bo_fn == "entropy") {
                j["value"] = entropy(bo_p);
            } else if (bo_fn == "sandwich") {
                auto r = check_binomial_sandwich(bo_m, bo_p);
                j["value"] = r.value;
                j["lower"] = r.lower;
                j["upper"] = r.upper;
                j["ok"] = r.ok;
            } else if (bo_fn == "hypergeom-tail-check") {
                auto r = hypergeom_tail_lower_check(bo_N, bo_d1, bo_d2, bo_K);
                j["tail"] = r.tail;
                j["bound"] = r.bound;
                j["delta"] = r.delta;
                j["ok"] = r.ok;
            } else if (bo_fn == "lambda") {
                j["value"] = lambda_quantile(bo_m, bo_rho, bo_K);
            } else if (bo_fn == "classify") {
                j.update(regime_json(classify_regime(bo_n, bo_k, bo_p, bo_q)));
            } else if (bo_fn == "predicted-lambda") {
                j["value"] = predicted_disc_via_lambda(bo_n, bo_k, bo_p, bo_q);
            } else if (bo_fn == "envelope") {
                auto env = upper_envelope(bo_n, bo_k, bo_p, bo_q);
                j["eps"] = env.eps;
                j["lambda"] = env.lambda;
                j["sparse_branch"] = env.sparse_branch;
                if (env.sparse_branch) j["gamma_prime"] = env.gamma_prime;
            } else {
                throw std::runtime_error("unknown bounds function: " + bo_fn);
            }
            emit(j.dump(), bo_out);
            return 0;
        }

        if (*vb) return run_verify_bounds(vb_out, vb_samples, vb_seed);

        if (*sw) {
            std::ifstream in(sw_config);
            if (!in) throw std::runtime_error("cannot open config: " + sw_config);
            nlohmann::json j;
            in >> j;
            SweepConfig cfg = SweepConfig::from_json(j);
            if (!sw_output.empty()) cfg.output = sw_output;
            if (sw->count("--master-seed")) cfg.master_seed = sw_master;
            if (sw->count("--parallelism")) cfg.parallelism = sw_par;
            if (sw->count("--seeds-per-point")) cfg.seeds_per_point = sw_seeds;
            if (!sw_mode.empty()) cfg.mode = parse_mode(sw_mode);
            if (sw_keep) cfg.keep_witnesses = true;
            if (!sw_witness_dir.empty()) cfg.witness_dir = sw_witness_dir;
            if (sw_timing) cfg.timing = true;
            auto rows = run_sweep(cfg);
            std::ostringstream os;
            write_rows_csv(os, rows, cfg.timing);
            emit(os.str(), cfg.output);
            for (const auto& r : rows)
                if (!r.ok) return 1;
            return 0;
        }

        if (*rp) {
            std::ifstream in(rp_input);
            if (!in) throw std::runtime_error("cannot open sweep csv: " + rp_input);
            auto rows = read_rows_csv(in);
            auto summary = scaling_report(rows);
            emit(summary.to_json().dump(2), rp_out);
            if (!rp_svg.empty()) emit(scaling_svg(summary), rp_svg);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
