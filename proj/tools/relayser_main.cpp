// relayser: exact/asymptotic SER curves, optimal power allocation, amount of
// fading, link-level simulation and a self-validation suite for K-relay
// decode-and-forward cooperative links over eta-mu fading.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "relayser/monte_carlo.hpp"
#include "relayser/power_opt.hpp"
#include "relayser/run_config.hpp"
#include "relayser/special_fn.hpp"
#include "relayser/svg_plot.hpp"
#include "relayser/sweep.hpp"
#include "relayser/units.hpp"
#include "relayser/validate.hpp"

namespace {

using namespace relayser;

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::string svg_path;
    std::string methods;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::int64_t symbols = 0;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_config = true) {
    auto* copt = cmd->add_option("--config", args.config_path, "JSON run configuration");
    if (needs_config) copt->required();
    cmd->add_option("--out", args.out_path, "output CSV path (stdout if omitted)");
    cmd->add_option("--svg", args.svg_path, "optional SVG plot path");
    cmd->add_option("--method", args.methods, "comma list: exact,asymptotic,mc");
    cmd->add_option("--seed", args.seed, "Monte Carlo base seed override")
        ->each([&args](const std::string&) { args.seed_set = true; });
    cmd->add_option("--symbols", args.symbols, "Monte Carlo symbols per sweep point override");
    cmd->add_option("--threads", args.threads, "worker thread count (0 = hardware)");
}

RunConfig load_with_overrides(const CommonArgs& args) {
    RunConfig cfg = load_run_config(args.config_path);
    if (!args.methods.empty()) {
        cfg.method_exact = cfg.method_asymptotic = cfg.method_mc = false;
        std::stringstream ss(args.methods);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok == "exact")
                cfg.method_exact = true;
            else if (tok == "asymptotic")
                cfg.method_asymptotic = true;
            else if (tok == "mc")
                cfg.method_mc = true;
            else
                throw ConfigError("unknown method \"" + tok + "\"");
        }
    }
    if (args.seed_set) cfg.mc_seed = args.seed;
    if (args.symbols > 0) cfg.mc_symbols = args.symbols;
    if (args.threads > 0) cfg.threads = args.threads;
    return cfg;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fputs(content.c_str(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << content;
}

int cmd_ser(const CommonArgs& args, bool mc_only) {
    RunConfig cfg = load_with_overrides(args);
    if (mc_only) {
        cfg.method_exact = cfg.method_asymptotic = false;
        cfg.method_mc = true;
    }
    SweepNotices notices;
    auto rows = run_sweep(cfg, &notices);
    if (notices.mc_skipped) std::fprintf(stderr, "notice: %s\n", notices.reason.c_str());
    write_output(args.out_path, sweep_to_csv(rows, cfg.relay_count()));
    if (!args.svg_path.empty())
        write_output(args.svg_path,
                     sweep_to_svg(rows, cfg.description.empty() ? "SER sweep" : cfg.description));
    return 0;
}

int cmd_opa(const CommonArgs& args) {
    RunConfig cfg = load_with_overrides(args);
    auto rows = run_opa_sweep(cfg);
    if (!rows.empty()) {
        const OpaRow& last = rows.back();
        std::fprintf(stderr, "optimal allocation at %.4g dB:", last.snr_db);
        for (double a : last.allocation) std::fprintf(stderr, " %.4f", a);
        std::fprintf(stderr, "  (kkt residual %.3g, %s in %d iterations)\n", last.kkt_residual,
                     last.converged ? "converged" : "NOT converged", last.iterations);
    }
    write_output(args.out_path, opa_to_csv(rows, cfg.relay_count()));
    if (!args.svg_path.empty())
        write_output(args.svg_path,
                     opa_to_svg(rows, cfg.description.empty() ? "EPA vs OPA" : cfg.description));
    return 0;
}

int cmd_aof(const CommonArgs& args) {
    RunConfig cfg = load_with_overrides(args);
    std::string csv = "snr_db,aof\n";
    char line[64];
    for (double snr_db : cfg.sweep_points()) {
        NetworkModel net = build_network(cfg, snr_db);
        if (cfg.alloc_mode == AllocationMode::Opa)
            net.allocation = optimize_power(net, cfg.modulation).allocation;
        std::snprintf(line, sizeof line, "%.17g,%.17g\n", snr_db, amount_of_fading(net));
        csv += line;
    }
    write_output(args.out_path, csv);
    return 0;
}

int cmd_validate(const ValidationOptions& opts) {
    auto checks = run_validation(opts);
    std::string report = format_report(checks);
    std::fputs(report.c_str(), stdout);
    for (const auto& c : checks)
        if (!c.pass) return 2;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"end-to-end SER analysis and power allocation for multi-relay "
                 "decode-and-forward links over eta-mu fading"};
    app.require_subcommand(1);

    CommonArgs ser_args, opa_args, aof_args, sim_args;
    auto* ser = app.add_subcommand("ser", "exact/asymptotic/Monte-Carlo SER sweep -> CSV/SVG");
    add_common(ser, ser_args);
    auto* opa = app.add_subcommand("opa", "optimal power split and EPA-vs-OPA comparison");
    add_common(opa, opa_args);
    auto* aof = app.add_subcommand("aof", "amount of fading of the all-decode MRC output");
    add_common(aof, aof_args);
    auto* sim = app.add_subcommand("simulate", "Monte Carlo link simulation only");
    add_common(sim, sim_args);

    ValidationOptions vopts;
    bool no_mc = false;
    auto* val = app.add_subcommand("validate", "run the oracle/validation matrix");
    val->add_flag("--no-mc", no_mc, "skip the Monte Carlo corroboration checks");
    val->add_option("--symbols", vopts.mc_symbols, "Monte Carlo symbols per check");
    val->add_option("--seed", vopts.mc_seed, "Monte Carlo seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (ser->parsed()) return cmd_ser(ser_args, false);
        if (sim->parsed()) return cmd_ser(sim_args, true);
        if (opa->parsed()) return cmd_opa(opa_args);
        if (aof->parsed()) return cmd_aof(aof_args);
        if (val->parsed()) {
            vopts.with_mc = !no_mc;
            return cmd_validate(vopts);
        }
    } catch (const AccuracyError& e) {
        std::fprintf(stderr, "numerical accuracy failure: %s (best estimate %.17g)\n", e.what(),
                     e.best_estimate());
        return 3;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
