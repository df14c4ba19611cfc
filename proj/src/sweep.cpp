#include "relayser/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "relayser/monte_carlo.hpp"
#include "relayser/power_opt.hpp"

namespace relayser {
namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

bool sampler_supported(const RunConfig& cfg) {
    auto ok = [](const LinkSpec& s) {
        double n = 2.0 * s.mu;
        return s.format == 1 && std::fabs(n - std::round(n)) <= 1e-9 && n >= 0.5;
    };
    if (!ok(cfg.sd)) return false;
    for (const auto& s : cfg.sr)
        if (!ok(s)) return false;
    for (const auto& s : cfg.rd)
        if (!ok(s)) return false;
    return true;
}

std::vector<double> allocation_vector(const PowerAllocation& a) {
    std::vector<double> v{a.a0};
    v.insert(v.end(), a.ar.begin(), a.ar.end());
    return v;
}

void append_allocation_header(std::string& s, int relay_count) {
    s += ",a0";
    for (int k = 1; k <= relay_count; ++k) s += ",ar" + std::to_string(k);
}

void append_allocation_row(std::string& s, const std::vector<double>& alloc, int relay_count) {
    for (int k = 0; k <= relay_count; ++k) {
        s += ',';
        if (k < static_cast<int>(alloc.size())) s += fmt(alloc[k]);
    }
}

}  // namespace

std::vector<SweepRow> run_sweep(const RunConfig& cfg, SweepNotices* notices) {
    const std::vector<double> points = cfg.sweep_points();
    std::vector<SweepRow> rows(points.size());

    bool want_mc = cfg.method_mc;
    if (want_mc && !sampler_supported(cfg)) {
        want_mc = false;
        if (notices) {
            notices->mc_skipped = true;
            notices->reason =
                "mc method skipped: the variate generator needs Format 1 and half-integer mu "
                "on every hop";
        }
    }

    auto eval_point = [&](std::size_t i) {
        const double snr_db = points[i];
        SweepRow& row = rows[i];
        row.snr_db = snr_db;
        NetworkModel net = build_network(cfg, snr_db);
        if (cfg.alloc_mode == AllocationMode::Opa)
            net.allocation = optimize_power(net, cfg.modulation).allocation;
        row.allocation = allocation_vector(net.allocation);
        if (cfg.method_exact) row.ser_exact = end_to_end_ser(net, cfg.modulation).value;
        if (cfg.method_asymptotic)
            row.ser_asymptotic = asymptotic_ser(net, cfg.modulation).value;
        if (want_mc) {
            SimConfig sim;
            sim.symbols = cfg.mc_symbols;
            sim.batch = cfg.mc_batch;
            sim.threads = cfg.threads;
            sim.seed = RandomStream::mix(cfg.mc_seed, i);  // independent per-point streams
            SimResult r = simulate_ser(net, cfg.modulation, sim);
            row.ser_mc = r.ser_hat;
            row.mc_stderr = r.std_err;
        }
    };

    if (want_mc) {
        // the simulator is already parallel across symbol blocks
        for (std::size_t i = 0; i < points.size(); ++i) eval_point(i);
    } else {
        unsigned n = std::max(1u, std::thread::hardware_concurrency());
        n = std::min<unsigned>(n, static_cast<unsigned>(points.size()));
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= points.size()) return;
                eval_point(i);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows, int relay_count) {
    std::string out = "snr_db,ser_exact,ser_asymptotic,ser_mc,mc_stderr";
    append_allocation_header(out, relay_count);
    out += '\n';
    for (const auto& r : rows) {
        out += fmt(r.snr_db);
        out += ',' + fmt_opt(r.ser_exact);
        out += ',' + fmt_opt(r.ser_asymptotic);
        out += ',' + fmt_opt(r.ser_mc);
        out += ',' + fmt_opt(r.mc_stderr);
        append_allocation_row(out, r.allocation, relay_count);
        out += '\n';
    }
    return out;
}

std::vector<OpaRow> run_opa_sweep(const RunConfig& cfg) {
    if (cfg.relay_count() < 1)
        throw ConfigError("opa requires at least one relay in the network");
    const std::vector<double> points = cfg.sweep_points();
    std::vector<OpaRow> rows(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            OpaRow& row = rows[i];
            row.snr_db = points[i];
            NetworkModel net = build_network(cfg, points[i]);
            net.allocation = epa(cfg.relay_count());
            row.ser_exact_epa = end_to_end_ser(net, cfg.modulation).value;
            row.ser_asym_epa = asymptotic_ser(net, cfg.modulation).value;
            OpaReport rep = optimize_power(net, cfg.modulation);
            net.allocation = rep.allocation;
            row.ser_exact_opa = end_to_end_ser(net, cfg.modulation).value;
            row.ser_asym_opa = rep.ser;
            row.kkt_residual = rep.kkt_residual;
            row.iterations = rep.iterations;
            row.converged = rep.converged;
            row.allocation = allocation_vector(rep.allocation);
        }
    };
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    n = std::min<unsigned>(n, static_cast<unsigned>(points.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return rows;
}

std::string opa_to_csv(const std::vector<OpaRow>& rows, int relay_count) {
    std::string out =
        "snr_db,ser_exact_epa,ser_exact_opa,ser_asym_epa,ser_asym_opa,kkt_residual,"
        "iterations,converged";
    append_allocation_header(out, relay_count);
    out += '\n';
    for (const auto& r : rows) {
        out += fmt(r.snr_db);
        out += ',' + fmt(r.ser_exact_epa);
        out += ',' + fmt(r.ser_exact_opa);
        out += ',' + fmt(r.ser_asym_epa);
        out += ',' + fmt(r.ser_asym_opa);
        out += ',' + fmt(r.kkt_residual);
        out += ',' + std::to_string(r.iterations);
        out += ',' + std::string(r.converged ? "1" : "0");
        append_allocation_row(out, r.allocation, relay_count);
        out += '\n';
    }
    return out;
}

}  // namespace relayser
