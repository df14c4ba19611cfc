#include "relayser/validate.hpp"

#include <cmath>
#include <cstdio>

#include "relayser/monte_carlo.hpp"
#include "relayser/power_opt.hpp"
#include "relayser/quadrature.hpp"
#include "relayser/special_fn.hpp"
#include "relayser/units.hpp"

namespace relayser {
namespace {

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

NetworkModel grid_network(int k, unsigned salt, double snr_db) {
    const double etas[] = {0.1, 0.5, 0.9};
    const double mus[] = {0.5, 1.0, 1.5};
    auto pick = [](const double* set, unsigned i) { return set[(i * 2654435761u) % 3]; };
    NetworkModel net;
    net.sd = LinkParams(EtaMuParams::format1(pick(etas, salt), pick(mus, salt + 1)), 1.0);
    for (int i = 0; i < k; ++i) {
        net.sr.push_back(LinkParams(
            EtaMuParams::format1(pick(etas, salt + 2 + 3 * i), pick(mus, salt + 3 + 3 * i)), 1.0));
        net.rd.push_back(LinkParams(
            EtaMuParams::format1(pick(etas, salt + 4 + 3 * i), pick(mus, salt + 5 + 3 * i)), 1.0));
    }
    net.noise = 1.0;
    net.total_power = db_to_linear(snr_db);
    net.allocation = epa(k);
    return net;
}

double pdf_halfline_integral(const LinkParams& link, SnrPoint snr, bool first_moment) {
    auto f = [&](double t, double omt) {
        double g = snr.gbar * t / omt;
        double v = pdf_snr(g, link, snr) * snr.gbar / (omt * omt);
        return first_moment ? g * v : v;
    };
    return quad::tanh_sinh_01(f).value;
}

double aof_oracle(const NetworkModel& net) {
    auto mgf_product = [&](double s) {
        double v = mgf(net.sd, SnrPoint(net.gbar_sd()), s);
        for (int k = 0; k < net.relay_count(); ++k)
            v *= mgf(net.rd[k], SnrPoint(net.gbar_rd(k)), s);
        return v;
    };
    double gmax = net.gbar_sd();
    for (int k = 0; k < net.relay_count(); ++k) gmax = std::max(gmax, net.gbar_rd(k));
    const double h = 1e-4 / gmax;
    const double fm2 = mgf_product(-2 * h), fm1 = mgf_product(-h), f0 = mgf_product(0.0),
                 fp1 = mgf_product(h), fp2 = mgf_product(2 * h);
    double m1 = -(-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h);
    double m2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
    return (m2 - m1 * m1) / (m1 * m1);
}

}  // namespace

double rayleigh_reduction_error(const EtaMuParams& p) {
    LinkParams link(p, 1.0);
    double worst = 0.0;
    for (double sg : {0.1, 1.0, 9.0, 40.0})
        worst = std::max(worst, rel_err(mgf(link, SnrPoint(2.0), sg / 2.0), 1.0 / (1.0 + sg)));
    return worst;
}

double hoyt_reduction_error(const EtaMuParams& p, double q) {
    LinkParams link(p, 1.0);
    double worst = 0.0;
    for (double sg : {0.1, 1.0, 9.0, 40.0}) {
        double want = 1.0 / std::sqrt(1.0 + 2.0 * sg +
                                      sg * sg * 4.0 * q * q / ((1.0 + q * q) * (1.0 + q * q)));
        worst = std::max(worst, rel_err(mgf(link, SnrPoint(2.0), sg / 2.0), want));
    }
    return worst;
}

double nakagami_reduction_error(const EtaMuParams& p, double m) {
    LinkParams link(p, 1.0);
    double worst = 0.0;
    for (double sg : {0.1, 1.0, 9.0, 40.0})
        worst = std::max(worst,
                         rel_err(mgf(link, SnrPoint(2.0), sg / 2.0), std::pow(1.0 + sg / m, -m)));
    return worst;
}

std::vector<CheckResult> run_validation(const ValidationOptions& opts) {
    std::vector<CheckResult> out;
    auto add = [&](const std::string& name, double tol, double observed) {
        out.push_back({name, tol, observed, observed <= tol});
    };

    {  // F_D reduction chain to 2F1
        double worst = 0.0;
        for (double a : {0.5, 1.0, 1.5})
            for (double dc : {0.5, 1.0})
                for (double b : {0.5, 1.0, 1.5})
                    for (double x : {-5.0, -1.0, -0.1, 0.1, 0.5, 0.9})
                        worst = std::max(worst, rel_err(lauricella_fd(FdArgs{a, {b}, a + dc, {x}}),
                                                        gauss_2f1(a, b, a + dc, x)));
        add("fd_reduces_to_2f1", 1e-9, worst);
    }

    add("mgf_rayleigh_collapse", 1e-6, rayleigh_reduction_error(EtaMuParams::format1(1.0, 0.5)));
    {
        double worst = 0.0;
        for (double q : {0.3, 0.7})
            worst = std::max(worst, hoyt_reduction_error(EtaMuParams::format1(q * q, 0.5), q));
        add("mgf_hoyt_collapse", 1e-6, worst);
        worst = 0.0;
        for (double m : {1.0, 2.0, 3.0})
            worst = std::max(
                worst, nakagami_reduction_error(EtaMuParams::format1(1.0 - 1e-9, m / 2.0), m));
        add("mgf_nakagami_collapse", 1e-6, worst);
    }

    {  // pdf normalization and mean
        double worst_norm = 0.0, worst_mean = 0.0;
        for (auto shape : {EtaMuParams::format1(0.3, 0.5), EtaMuParams::format1(0.8, 1.5)}) {
            LinkParams link(shape, 1.0);
            for (double gbar : {0.7, 10.0}) {
                SnrPoint snr(gbar);
                worst_norm =
                    std::max(worst_norm, std::fabs(pdf_halfline_integral(link, snr, false) - 1.0));
                worst_mean =
                    std::max(worst_mean, rel_err(pdf_halfline_integral(link, snr, true), gbar));
            }
        }
        add("pdf_normalization", 1e-8, worst_norm);
        add("pdf_mean", 1e-7, worst_mean);
    }

    {  // closed forms vs direct theta-quadrature
        double worst_psk = 0.0, worst_qam = 0.0, worst_relay = 0.0;
        unsigned salt = 3;
        for (int k : {0, 1, 2}) {
            for (double snr_db : {0.0, 12.0, 24.0}) {
                NetworkModel net = grid_network(k, salt++, snr_db);
                for (std::uint32_t z = 0; z < (1u << k); ++z) {
                    DecodingSet cz{z};
                    for (auto mod : {Modulation::mpsk(4), Modulation::mpsk(16)})
                        worst_psk = std::max(
                            worst_psk, rel_err(cond_error_closed_form(net, cz, mod),
                                               cond_error_quadrature(net, cz, mod)));
                    for (auto mod : {Modulation::mqam(4), Modulation::mqam(16)})
                        worst_qam = std::max(
                            worst_qam, rel_err(cond_error_closed_form(net, cz, mod),
                                               cond_error_quadrature(net, cz, mod)));
                }
                if (k > 0) {
                    SnrPoint snr(net.gbar_sr(0));
                    for (auto mod : {Modulation::mpsk(2), Modulation::mqam(16)})
                        worst_relay = std::max(
                            worst_relay, rel_err(relay_decode_error_closed_form(net.sr[0], snr, mod),
                                                 relay_decode_error_quadrature(net.sr[0], snr, mod)));
                }
            }
        }
        add("cond_error_psk_closed_vs_quadrature", 1e-8, worst_psk);
        add("cond_error_qam_closed_vs_quadrature", 1e-8, worst_qam);
        add("relay_decode_closed_vs_quadrature", 1e-8, worst_relay);
    }

    {  // i.i.d fast path vs general path
        NetworkModel net = grid_network(3, 17, 14.0);
        for (auto& l : net.rd) l = LinkParams(EtaMuParams::format1(0.6, 1.0), 2.0);
        DecodingSet all{(1u << 3) - 1};
        double worst = 0.0;
        for (auto mod : {Modulation::mpsk(4), Modulation::mqam(16)})
            worst = std::max(
                worst, rel_err(cond_error_closed_form(net, all, mod, ClosedFormPath::IidCollapsed),
                               cond_error_closed_form(net, all, mod, ClosedFormPath::General)));
        add("iid_fast_path_vs_general", 1e-9, worst);
    }

    {  // asymptotic angle coefficients vs direct quadrature
        double worst = 0.0;
        for (auto mod : {Modulation::mpsk(4), Modulation::mqam(16)})
            for (double nu : {0.5, 1.0, 2.5}) {
                auto f = [&](double th) { return std::pow(std::sin(th), 4.0 * nu); };
                constexpr double pi = 3.14159265358979323846;
                double want;
                if (mod.scheme == Modulation::Scheme::Mpsk) {
                    want = quad::tanh_sinh(f, 0.0, (mod.m - 1.0) * pi / mod.m).value / pi;
                } else {
                    double c = mod.cqam;
                    want = 4.0 * c / pi * quad::tanh_sinh(f, 0.0, pi / 2.0).value -
                           4.0 * c * c / pi * quad::tanh_sinh(f, 0.0, pi / 4.0).value;
                }
                worst = std::max(worst, rel_err(angle_coeff(nu, mod), want));
            }
        add("angle_coeff_vs_quadrature", 1e-10, worst);
    }

    {  // amount of fading vs the MGF moment oracle
        double worst = 0.0;
        for (int k : {1, 2, 3}) {
            NetworkModel net;
            net.sd = LinkParams(EtaMuParams::format1(0.3, 1.0), 1.3);
            net.sr.assign(k, LinkParams(EtaMuParams::format1(0.7, 1.0), 1.0));
            net.rd.assign(k, LinkParams(EtaMuParams::format1(0.7, 1.5), 0.8));
            net.noise = 1.0;
            net.total_power = 2.0;
            net.allocation = epa(k);
            worst = std::max(worst, rel_err(amount_of_fading(net), aof_oracle(net)));
        }
        add("aof_vs_moment_oracle", 1e-6, worst);
    }

    {  // convexity and stationarity of the optimizer
        RandomStream rng(1234);
        bool all = true;
        for (int k : {1, 2, 3}) {
            NetworkModel net = grid_network(k, 29 + k, 20.0);
            net.rd[0].omega = 10.0;
            all = all && verify_convexity(net, Modulation::mqam(4), 25, rng);
        }
        add("asymptotic_objective_convexity", 0.0, all ? 0.0 : 1.0);

        NetworkModel net = grid_network(2, 41, 20.0);
        OpaReport rep = optimize_power(net, Modulation::mqam(4));
        add("kkt_residual_at_optimum", 1e-6, rep.kkt_residual);
    }

    {  // asymptotic approaches the exact curve
        NetworkModel net = grid_network(2, 53, 46.0);
        const Modulation mod = Modulation::mpsk(4);
        double ex = end_to_end_ser(net, mod).value;
        add("asymptotic_convergence_46db", 5e-3,
            std::fabs(asymptotic_ser(net, mod).value / ex - 1.0));
    }

    if (opts.with_mc) {
        int cfg_idx = 0;
        for (auto [k, snr_db] : {std::pair{1, 17.0}, std::pair{2, 14.0}}) {
            NetworkModel net;
            auto shape = EtaMuParams::format1(1.0, 0.5);
            net.sd = LinkParams(shape, 1.0);
            net.sr.assign(k, LinkParams(shape, 1.0));
            net.rd.assign(k, LinkParams(shape, 1.0));
            net.noise = 1.0;
            net.total_power = db_to_linear(snr_db);
            net.allocation = epa(k);
            const Modulation mod = Modulation::mpsk(4);
            double exact = end_to_end_ser(net, mod).value;
            SimConfig sim;
            sim.symbols = opts.mc_symbols;
            sim.seed = RandomStream::mix(opts.mc_seed, 1000 + cfg_idx);
            SimResult r = simulate_ser(net, mod, sim);
            add("mc_vs_exact_k" + std::to_string(k) + "_3sigma",
                3.0, std::fabs(r.ser_hat - exact) / std::max(r.std_err, 1e-300));
            ++cfg_idx;
        }
    }
    return out;
}

std::string format_report(const std::vector<CheckResult>& checks) {
    std::string s;
    char line[160];
    for (const auto& c : checks) {
        std::snprintf(line, sizeof line, "%-40s tol %-9.3g observed %-12.4g %s\n",
                      c.name.c_str(), c.tolerance, c.observed, c.pass ? "PASS" : "FAIL");
        s += line;
    }
    int passed = 0;
    for (const auto& c : checks) passed += c.pass;
    std::snprintf(line, sizeof line, "%d/%zu checks passed\n", passed, checks.size());
    s += line;
    return s;
}

}  // namespace relayser
