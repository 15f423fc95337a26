#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypermatch/analytics.hpp"
#include "hypermatch/errors.hpp"
#include "hypermatch/experiments.hpp"
#include "hypermatch/ilp.hpp"
#include "hypermatch/instance_io.hpp"
#include "hypermatch/sampler.hpp"
#include "hypermatch/solver.hpp"
#include "hypermatch/svg.hpp"
#include "hypermatch/version.hpp"

namespace hypermatch {

namespace cli_detail {

struct UsageError {
    std::string message;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error("failed writing '" + path + "'");
}

inline void emit(const std::string& content, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << content;
    } else {
        write_file(path, content);
    }
}

} // namespace cli_detail

/// Entry point shared by the binary and the tests. Exit status: 0 success,
/// 1 usage error, 2 runtime error.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using cli_detail::UsageError;
    using nlohmann::json;

    CLI::App app{"random-hypergraph maximum-matching toolkit"};
    app.name("hypermatch");
    app.set_version_flag("--version", std::string("hypermatch ") + kVersion +
                                          " (rng=" + kRngFamily + ")");
    app.require_subcommand(1);

    // ---- sample ----
    auto* sample = app.add_subcommand("sample", "draw a hypergraph from H(n, M)");
    std::uint32_t s_n = 0;
    std::uint64_t s_m = 0, s_seed = 0;
    std::string s_out;
    sample->add_option("-n,--vertices", s_n, "vertex count")->required();
    sample->add_option("-m,--edges", s_m, "edge count")->required();
    sample->add_option("--seed", s_seed, "master seed")->default_val(0);
    sample->add_option("-o,--output", s_out, "instance file (stdout if omitted)");

    // ---- solve ----
    auto* solve = app.add_subcommand("solve", "exact maximum matching of an instance file");
    std::string so_in;
    bool so_witness = false, so_no_preprocess = false;
    std::uint64_t so_budget = 100'000'000;
    solve->add_option("-i,--input", so_in, "instance file")->required();
    solve->add_flag("--witness", so_witness, "print the matching itself as JSON");
    solve->add_flag("--no-preprocess", so_no_preprocess, "disable solver preprocessing");
    solve->add_option("--node-budget", so_budget, "search node budget")->default_val(100'000'000);

    // ---- analyze ----
    auto* analyze = app.add_subcommand("analyze", "closed-form quantities and bounds as JSON");
    std::uint32_t a_n = 0;
    std::uint64_t a_m = 0, a_k = 0, a_f = 0, a_l = 0, a_t = 0;
    std::uint32_t a_support = 0;
    double a_delta = 0.1, a_fraction = 0.25;
    std::string a_quantity;
    analyze->add_option("-n,--vertices", a_n, "vertex count")->required();
    auto* opt_m = analyze->add_option("-m,--edges", a_m, "edge count");
    auto* opt_k = analyze->add_option("-k,--matching-size", a_k, "matching size k");
    auto* opt_f = analyze->add_option("-f,--target-size", a_f, "target size f");
    auto* opt_support = analyze->add_option("--support", a_support, "support size n_S");
    auto* opt_l = analyze->add_option("--shared", a_l, "shared family members l");
    auto* opt_t = analyze->add_option("--covered", a_t, "vertices covered by shared members t");
    analyze->add_option("--delta", a_delta, "regime exponent offset")->default_val(0.1);
    analyze->add_option("--fraction", a_fraction, "dense-regime fraction of 2^n")
        ->default_val(0.25);
    analyze
        ->add_option("--quantity", a_quantity,
                     "one of: binomial, stirling2, disjoint-families, match-probability, "
                     "expected-upper, expected-lower, expected-exact, markov-no-pair, "
                     "conditional-bound, variance-upper, chebyshev-ratio, regime, "
                     "unit-threshold")
        ->required();

    // ---- sweep ----
    auto* sweep = app.add_subcommand("sweep", "seeded Monte-Carlo sweep with CSV output");
    std::string sw_mode;
    SweepConfig sw_cfg;
    bool sw_exact_base = false, sw_no_endpoint = false;
    std::string sw_trials_path, sw_summary_path, sw_plot_path;
    sweep->add_option("--mode", sw_mode, "unity or gap")->required();
    sweep->add_option("--n-from", sw_cfg.n_from, "first n (unity)")->default_val(5);
    sweep->add_option("--n-to", sw_cfg.n_to, "last n (unity)")->default_val(30);
    sweep->add_option("--base", sw_cfg.base, "M = floor(base^n) (unity)")->default_val(1.154);
    sweep->add_flag("--exact-base", sw_exact_base,
                    "use the exact unit threshold base 2/sqrt(3) instead of --base");
    sweep->add_option("-n,--vertices", sw_cfg.gap_n, "fixed n (gap)")->default_val(13);
    sweep->add_option("--m-from", sw_cfg.m_from, "first M (gap)")->default_val(1);
    sweep->add_option("--m-to", sw_cfg.m_to, "last M before the endpoint (gap)")
        ->default_val(8191);
    sweep->add_option("--m-step", sw_cfg.m_step, "M increment (gap)")->default_val(100);
    sweep->add_flag("--no-endpoint", sw_no_endpoint, "do not force M = 2^n - 1 (gap)");
    sweep->add_option("--trials", sw_cfg.trials, "trials per point")->default_val(30);
    std::uint64_t sw_seed = 0;
    sweep->add_option("--seed", sw_seed, "master seed")->default_val(0);
    sweep->add_option("--jobs", sw_cfg.jobs, "worker threads")->default_val(1);
    sweep->add_option("--node-budget", sw_cfg.node_budget, "per-solve node budget")
        ->default_val(100'000'000);
    sweep->add_option("--out-trials", sw_trials_path, "trials CSV path")->required();
    sweep->add_option("--out-summary", sw_summary_path, "summary CSV path")->required();
    sweep->add_option("--out-plot", sw_plot_path, "optional SVG path");

    // ---- plot ----
    auto* plot = app.add_subcommand("plot", "render a summary CSV as SVG");
    std::string p_in, p_out, p_x = "auto", p_title, p_xlabel, p_ylabel;
    double p_marker = 0.0;
    plot->add_option("-i,--input", p_in, "summary CSV")->required();
    plot->add_option("-o,--output", p_out, "SVG file (stdout if omitted)");
    plot->add_option("--x", p_x, "x axis source: auto, n or m")->default_val("auto");
    auto* opt_marker = plot->add_option("--marker", p_marker, "vertical marker position");
    plot->add_option("--title", p_title, "plot title");
    plot->add_option("--x-label", p_xlabel, "x axis label");
    plot->add_option("--y-label", p_ylabel, "y axis label");

    // ---- export-ilp ----
    auto* ilp = app.add_subcommand("export-ilp", "write the set-packing ILP in LP format");
    std::string e_in, e_out;
    ilp->add_option("-i,--input", e_in, "instance file")->required();
    ilp->add_option("-o,--output", e_out, "LP file (stdout if omitted)");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (sample->parsed()) {
            const Hypergraph h = sample_hypergraph(s_n, s_m, Seed{s_seed});
            cli_detail::emit(serialize_instance(h), s_out, out);
            return 0;
        }

        if (solve->parsed()) {
            const Hypergraph h = parse_instance(cli_detail::read_file(so_in));
            SolveOptions opt;
            opt.node_budget = so_budget;
            opt.preprocess = !so_no_preprocess;
            const SolveResult res = max_matching_exact(h, opt);
            if (so_witness) {
                json j;
                j["size"] = res.matching.size();
                json edges = json::array();
                for (const VertexSet& e : res.matching.edge_sets(h))
                    edges.push_back(e.vertices());
                j["edges"] = edges;
                out << j.dump() << "\n";
            } else {
                out << res.matching.size() << "\n";
            }
            return 0;
        }

        if (analyze->parsed()) {
            auto need = [&](const CLI::Option* o, const char* flag) {
                if (o->count() == 0)
                    throw UsageError{std::string("--quantity ") + a_quantity + " requires " +
                                     flag};
            };
            auto need_m = [&] { need(opt_m, "-m"); };
            auto k_or_f = [&](bool prefer_f) -> std::uint64_t {
                if (prefer_f && opt_f->count()) return a_f;
                if (opt_k->count()) return a_k;
                if (opt_f->count()) return a_f;
                throw UsageError{std::string("--quantity ") + a_quantity +
                                 " requires -k or -f"};
            };

            json j;
            j["quantity"] = a_quantity;
            j["n"] = a_n;
            if (opt_m->count()) j["M"] = a_m;

            auto finish_log = [&](const LogNumber& v, std::optional<std::uint64_t> kf,
                                  bool probability_like) {
                if (kf) j["k_or_f"] = *kf;
                j["value"] = v.value();
                j["log10_value"] = v.log10_magnitude();
                if (probability_like) j["clamped"] = v.clamped01();
                out << j.dump() << "\n";
            };

            if (a_quantity == "binomial") {
                const std::uint64_t k = k_or_f(false);
                j["k_or_f"] = k;
                j["exact"] = binomial(a_n, k).get_str();
                finish_log(log_binomial(a_n, k), std::nullopt, false);
            } else if (a_quantity == "stirling2") {
                const std::uint64_t k = k_or_f(false);
                j["k_or_f"] = k;
                j["exact"] = stirling2(a_n, k).get_str();
                finish_log(log_stirling2(a_n, k), std::nullopt, false);
            } else if (a_quantity == "disjoint-families") {
                const std::uint64_t k = k_or_f(false);
                j["k_or_f"] = k;
                j["exact"] = disjoint_family_count(a_n, k).get_str();
                finish_log(log_disjoint_family_count(a_n, k), std::nullopt, false);
            } else if (a_quantity == "match-probability") {
                const std::uint64_t k = k_or_f(false);
                const std::uint32_t ns = opt_support->count() ? a_support : a_n;
                j["support"] = ns;
                finish_log(match_probability(a_n, ns, k), k, true);
            } else if (a_quantity == "expected-upper") {
                need_m();
                const std::uint64_t k = k_or_f(false);
                finish_log(expected_matchings_bounds(a_n, a_m, k).upper, k, false);
            } else if (a_quantity == "expected-lower") {
                need_m();
                const std::uint64_t k = k_or_f(false);
                finish_log(expected_matchings_bounds(a_n, a_m, k).lower, k, false);
            } else if (a_quantity == "expected-exact") {
                need_m();
                const std::uint64_t k = k_or_f(false);
                finish_log(expected_matchings_exact(a_n, a_m, k), k, false);
            } else if (a_quantity == "markov-no-pair") {
                need_m();
                finish_log(markov_no_pair_bound(a_n, a_m), std::nullopt, true);
            } else if (a_quantity == "conditional-bound") {
                need(opt_l, "--shared");
                need(opt_t, "--covered");
                const std::uint64_t k = k_or_f(false);
                j["shared"] = a_l;
                j["covered"] = a_t;
                finish_log(conditional_match_probability_bound(a_n, k, a_l, a_t), k, true);
            } else if (a_quantity == "variance-upper") {
                need_m();
                const std::uint64_t f = k_or_f(true);
                finish_log(variance_upper_bound(a_n, a_m, f), f, false);
            } else if (a_quantity == "chebyshev-ratio") {
                need_m();
                const std::uint64_t f = k_or_f(true);
                finish_log(chebyshev_ratio(a_n, a_m, f), f, true);
            } else if (a_quantity == "unit-threshold") {
                const double v = unit_threshold(a_n);
                j["value"] = v;
                j["log10_value"] = std::log10(v);
                out << j.dump() << "\n";
            } else if (a_quantity == "regime") {
                need_m();
                const RegimeReport r = regime_classify(a_n, a_m, a_delta, a_fraction);
                j["regime"] = regime_name(r.regime);
                j["lower_fn_value"] = r.lower_fn_value;
                j["upper_fn_value"] = r.upper_fn_value;
                j["delta"] = r.delta;
                j["dense_fraction"] = r.dense_fraction;
                j["unit_threshold"] = r.unit_threshold;
                out << j.dump() << "\n";
            } else {
                throw UsageError{"unknown quantity '" + a_quantity + "'"};
            }
            return 0;
        }

        if (sweep->parsed()) {
            sw_cfg.master_seed = Seed{sw_seed};
            sw_cfg.force_dense_endpoint = !sw_no_endpoint;
            if (sw_exact_base) sw_cfg.base = 2.0 / std::sqrt(3.0);
            std::vector<TrialRecord> records;
            if (sw_mode == "unity") {
                sw_cfg.mode = SweepMode::Unity;
                records = run_unity_sweep(sw_cfg);
            } else if (sw_mode == "gap") {
                sw_cfg.mode = SweepMode::Gap;
                records = run_gap_sweep(sw_cfg);
            } else {
                throw UsageError{"--mode must be 'unity' or 'gap'"};
            }
            const auto summary = summarize(records);
            cli_detail::write_file(sw_trials_path, trials_csv(records));
            cli_detail::write_file(sw_summary_path, summary_csv(summary));
            if (!sw_plot_path.empty()) {
                PlotStyle style;
                if (sw_cfg.mode == SweepMode::Gap) {
                    style.marker_x = std::ceil(unit_threshold(sw_cfg.gap_n));
                }
                cli_detail::write_file(sw_plot_path, render_plot(summary, style));
            }
            return 0;
        }

        if (plot->parsed()) {
            const auto summary = parse_summary_csv(cli_detail::read_file(p_in));
            PlotStyle style;
            if (p_x == "n") {
                style.x_source = PlotX::VertexCount;
            } else if (p_x == "m" || p_x == "M") {
                style.x_source = PlotX::EdgeCount;
            } else if (p_x != "auto") {
                throw UsageError{"--x must be auto, n or m"};
            }
            if (opt_marker->count()) style.marker_x = p_marker;
            style.title = p_title;
            if (!p_xlabel.empty()) style.x_label = p_xlabel;
            if (!p_ylabel.empty()) style.y_label = p_ylabel;
            cli_detail::emit(render_plot(summary, style), p_out, out);
            return 0;
        }

        if (ilp->parsed()) {
            const Hypergraph h = parse_instance(cli_detail::read_file(e_in));
            cli_detail::emit(export_ilp(h), e_out, out);
            return 0;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.message << "\n";
        return 1;
    } catch (const NodeBudgetError& e) {
        err << "error: " << e.what() << " (best size found: " << e.best().size() << ")\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(std::move(args), out, err);
}

} // namespace hypermatch
