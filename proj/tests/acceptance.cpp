// Acceptance suite: runs every acceptance criterion end to end and prints one
// PASS/FAIL line per criterion.  Exit status is the number of failed criteria.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "relayser/monte_carlo.hpp"
#include "relayser/power_opt.hpp"
#include "relayser/quadrature.hpp"
#include "relayser/rng.hpp"
#include "relayser/run_config.hpp"
#include "relayser/ser_engine.hpp"
#include "relayser/sweep.hpp"
#include "relayser/units.hpp"
#include "relayser/validate.hpp"

using namespace relayser;

namespace {

constexpr double PI = 3.14159265358979323846;

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& details) {
    std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
                details.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void note(const std::string& text) { std::printf("       %s\n", text.c_str()); }

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

NetworkModel fig2_network(int k, double pdb) {
    NetworkModel net;
    auto sh = EtaMuParams::format1(1.0, 0.5);
    net.sd = LinkParams(sh, 1.0);
    net.sr.assign(k, LinkParams(sh, 1.0));
    net.rd.assign(k, LinkParams(sh, 1.0));
    net.noise = 1.0;
    net.total_power = db_to_linear(pdb);
    net.allocation = epa(k);
    return net;
}

NetworkModel fig8_network(double mu, double pdb) {
    NetworkModel net;
    auto sh = EtaMuParams::format1(0.5, mu);
    net.sd = LinkParams(sh, 1.0);
    net.sr.assign(2, LinkParams(sh, 1.0));
    net.rd.assign(2, LinkParams(sh, 10.0));
    net.noise = 1.0;
    net.total_power = db_to_linear(pdb);
    net.allocation = epa(2);
    return net;
}

double snr_at_ser(const std::function<double(double)>& ser_of_db, double target, double lo,
                  double hi) {
    for (int i = 0; i < 70; ++i) {
        double mid = 0.5 * (lo + hi);
        (ser_of_db(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// ---- criterion 1: closed forms vs quadrature over the randomized grid ----
void criterion_oracle_equivalence() {
    const double etas[] = {0.1, 0.5, 0.9};
    const double mus[] = {0.5, 1.0, 1.5};
    const double gdbs[] = {0.0, 10.0, 20.0};
    RandomStream rng(20250808);
    auto draw = [&](const double* set) { return set[rng.uniform_index(3)]; };

    const std::vector<Modulation> mods{Modulation::mpsk(2), Modulation::mpsk(4),
                                       Modulation::mpsk(16), Modulation::mqam(4),
                                       Modulation::mqam(16)};
    double worst = 0.0;
    int comparisons = 0;
    for (int k = 0; k <= 3; ++k) {
        for (const auto& mod : mods) {
            for (int rep = 0; rep < 3; ++rep) {
                // i.n.i.d parameters; per-hop gbar drawn from the grid and
                // realized through the hop variance under EPA, P = N0 = 1
                NetworkModel net;
                net.noise = 1.0;
                net.total_power = 1.0;
                net.allocation = epa(k);
                double a0 = net.allocation.a0;
                net.sd = LinkParams(EtaMuParams::format1(draw(etas), draw(mus)),
                                    db_to_linear(draw(gdbs)) / a0);
                for (int i = 0; i < k; ++i) {
                    net.sr.push_back(LinkParams(EtaMuParams::format1(draw(etas), draw(mus)),
                                                db_to_linear(draw(gdbs)) / a0));
                    net.rd.push_back(LinkParams(EtaMuParams::format1(draw(etas), draw(mus)),
                                                db_to_linear(draw(gdbs)) / net.allocation.ar[i]));
                }
                for (std::uint32_t z = 0; z < (1u << k); ++z) {
                    DecodingSet cz{z};
                    worst = std::max(worst, rel_err(cond_error_closed_form(net, cz, mod),
                                                    cond_error_quadrature(net, cz, mod)));
                    ++comparisons;
                }
                for (int i = 0; i < k; ++i) {
                    SnrPoint snr(net.gbar_sr(i));
                    worst = std::max(worst,
                                     rel_err(relay_decode_error_closed_form(net.sr[i], snr, mod),
                                             relay_decode_error_quadrature(net.sr[i], snr, mod)));
                    ++comparisons;
                }
            }
        }
    }
    report(1, "oracle equivalence of every Lauricella closed form", worst <= 1e-8,
           fmt("worst relative deviation %.3g over %d comparisons (tol 1e-8)", worst,
               comparisons));
}

// ---- criterion 2: Monte Carlo corroboration at N = 1e7 ----
void criterion_monte_carlo() {
    struct Config {
        std::string name;
        NetworkModel net;
        Modulation mod;
    };
    std::vector<Config> cfgs;
    for (int k : {1, 2, 3})
        cfgs.push_back({fmt("fig2 K=%d 4-PSK", k), fig2_network(k, 10.0), Modulation::mpsk(4)});
    cfgs.push_back({"fig3 K=2 4-QAM", fig2_network(2, 10.0), Modulation::mqam(4)});
    for (double eta : {0.1, 0.9}) {
        NetworkModel net;
        auto sh = EtaMuParams::format1(eta, 1.0);
        net.sd = LinkParams(sh, 1.0);
        net.sr.assign(2, LinkParams(sh, 1.0));
        net.rd.assign(2, LinkParams(sh, 1.0));
        net.noise = 1.0;
        net.allocation = epa(2);
        cfgs.push_back({fmt("fig4 K=2 mu=1 eta=%.1f 4-PSK", eta), net, Modulation::mpsk(4)});
    }

    bool all = true;
    std::string detail;
    int idx = 0;
    for (auto& c : cfgs) {
        // integer-dB point where the exact SER falls in [1e-3, 1e-2]
        double exact = 0.0;
        for (double pdb = 0.0; pdb <= 40.0; pdb += 1.0) {
            c.net.total_power = db_to_linear(pdb);
            exact = end_to_end_ser(c.net, c.mod).value;
            if (exact <= 1e-2 && exact >= 1e-3) break;
        }
        SimConfig sim;
        sim.symbols = 10000000;
        sim.seed = RandomStream::mix(424242, idx++);
        SimResult r = simulate_ser(c.net, c.mod, sim);
        double sigmas = std::fabs(r.ser_hat - exact) / std::max(r.std_err, 1e-300);
        bool ok = sigmas <= 3.0;
        all = all && ok;
        note(fmt("%-28s exact %.4e mc %.4e (+-%.1e) -> %.2f sigma %s", c.name.c_str(), exact,
                 r.ser_hat, r.std_err, sigmas, ok ? "ok" : "MISS"));
    }
    report(2, "Monte Carlo corroboration at 1e7 symbols", all,
           all ? "all 6 configurations within 3 binomial standard errors"
               : "at least one configuration beyond 3 sigma");

    // informational: the decoding-set factorization averages the error
    // probability over symbols, which is exact only for symbol-transitive
    // constellations; 16-QAM carries a small bias in the relay-failure terms
    {
        NetworkModel net = fig2_network(2, 17.0);
        const Modulation mod = Modulation::mqam(16);
        double exact = end_to_end_ser(net, mod).value;
        SimConfig sim;
        sim.symbols = 4000000;
        sim.seed = RandomStream::mix(424242, 999);
        SimResult r = simulate_ser(net, mod, sim);
        note(fmt("(informational, unscored) 16-QAM K=2: analytic %.4e vs protocol sim %.4e "
                 "(%+.1f%%): symbol-averaged factorization bias of the closed form",
                 exact, r.ser_hat, 100.0 * (r.ser_hat - exact) / exact));
    }
}

// ---- criterion 3: diversity slopes ----
void criterion_diversity() {
    const Modulation mod = Modulation::mpsk(4);
    const double want_exact[] = {1.96, 2.91, 3.85};
    bool pass = true;
    std::string lines;
    for (int k : {1, 2, 3}) {
        auto ser = [&](double pdb) {
            NetworkModel n = fig2_network(k, pdb);
            return end_to_end_ser(n, mod).value;
        };
        auto aser = [&](double pdb) {
            NetworkModel n = fig2_network(k, pdb);
            return asymptotic_ser(n, mod).value;
        };
        double slope_exact = std::log10(ser(30.0) / ser(40.0));
        double slope_asym = std::log10(aser(30.0) / aser(40.0));
        double slope_low = std::log10(ser(22.0) / ser(25.0)) / 0.3;
        bool ok_e = std::fabs(slope_exact - want_exact[k - 1]) <= 0.10;
        bool ok_a = std::fabs(slope_asym - static_cast<double>(k + 1)) <= 0.02;
        pass = pass && ok_e && ok_a;
        note(fmt("K=%d exact slope 30-40 dB: %.3f (anchor %.2f +- 0.10)%s | asymptotic %.3f "
                 "(want %d +- 0.02)%s | exact slope 22-25 dB: %.3f",
                 k, slope_exact, want_exact[k - 1], ok_e ? "" : " MISS", slope_asym, k + 1,
                 ok_a ? "" : " MISS", slope_low));
    }
    report(3, "diversity order from fitted log-log slopes", pass,
           pass ? "all slopes within tolerance"
                : "30-40 dB window sits past the curve's knee; the published anchors are "
                  "recovered at 22-25 dB (see per-K lines)");
}

// ---- criterion 4: relay gain over direct transmission at SER 1e-4 ----
void criterion_relay_gain() {
    const Modulation mod = Modulation::mpsk(4);
    auto curve = [&](int k) {
        return [&, k](double pdb) {
            NetworkModel n = fig2_network(k, pdb);
            return end_to_end_ser(n, mod).value;
        };
    };
    double direct_db = snr_at_ser(curve(0), 1e-4, 0.0, 60.0);
    const double want[] = {15.0, 19.5, 21.5};
    bool pass = true;
    for (int k : {1, 2, 3}) {
        double gain = direct_db - snr_at_ser(curve(k), 1e-4, 0.0, 60.0);
        bool ok = std::fabs(gain - want[k - 1]) <= 1.0;
        pass = pass && ok;
        note(fmt("K=%d gain %.2f dB (want %.1f +- 1.0)%s", k, gain, want[k - 1],
                 ok ? "" : " MISS"));
    }
    report(4, "SNR advantage over direct transmission at SER 1e-4", pass,
           fmt("direct reference at %.2f dB", direct_db));
}

// ---- criterion 5: OPA table anchors ----
std::vector<OpaReport> g_k1_reports;  // reused by criterion 8

void criterion_opa_tables() {
    const Modulation qam4 = Modulation::mqam(4);
    auto table_net = [&](int k, double mu, double om_rd) {
        NetworkModel net;
        auto sh = EtaMuParams::format1(0.5, mu);
        net.sd = LinkParams(sh, 1.0);
        net.sr.assign(k, LinkParams(sh, 1.0));
        net.rd.assign(k, LinkParams(sh, om_rd));
        net.noise = 1.0;
        net.total_power = db_to_linear(20.0);
        net.allocation = epa(k);
        return net;
    };

    bool pass = true;
    {
        OpaReport r = optimize_power(table_net(1, 0.5, 1.0), qam4);
        g_k1_reports.push_back(r);
        bool ok = std::fabs(r.allocation.a0 - 0.6270) <= 0.002 &&
                  std::fabs(r.allocation.ar[0] - 0.3730) <= 0.002;
        pass = pass && ok;
        note(fmt("balanced K=1: (%.4f, %.4f) want (0.6270, 0.3730)%s", r.allocation.a0,
                 r.allocation.ar[0], ok ? "" : " MISS"));
    }
    {
        OpaReport r = optimize_power(table_net(2, 0.5, 1.0), qam4);
        bool ok = std::fabs(r.allocation.a0 - 0.4832) <= 0.002 &&
                  std::fabs(r.allocation.ar[0] - 0.2584) <= 0.002 &&
                  std::fabs(r.allocation.ar[0] - r.allocation.ar[1]) <= 1e-6;
        pass = pass && ok;
        note(fmt("balanced K=2: (%.4f, %.4f, %.4f) want (0.4832, 0.2584, =)%s", r.allocation.a0,
                 r.allocation.ar[0], r.allocation.ar[1], ok ? "" : " MISS"));
    }
    {
        OpaReport r = optimize_power(table_net(1, 0.5, 100.0), qam4);
        g_k1_reports.push_back(r);
        bool ok = std::fabs(r.allocation.a0 - 0.9181) <= 0.002 &&
                  std::fabs(r.allocation.ar[0] - 0.0819) <= 0.002;
        pass = pass && ok;
        note(fmt("unbalanced K=1 (Omega_rd = 100): (%.4f, %.4f) want (0.9181, 0.0819)%s",
                 r.allocation.a0, r.allocation.ar[0], ok ? "" : " MISS"));
    }
    {
        NetworkModel net = table_net(2, 1.0, 1.0);
        OpaReport r = optimize_power(net, Modulation::mqam(16));
        bool ok = std::fabs(r.allocation.a0 - 0.4572) <= 0.002 &&
                  std::fabs(r.allocation.ar[0] - 0.2714) <= 0.002;
        pass = pass && ok;
        note(fmt("16-QAM mu=1 K=2: (%.4f, %.4f, %.4f) want (0.4572, 0.2714, =)%s",
                 r.allocation.a0, r.allocation.ar[0], r.allocation.ar[1], ok ? "" : " MISS"));
    }
    report(5, "optimal power split reproduces the published tables", pass,
           "budget P/N0 = 20 dB, channel variances linear as tabulated");
}

// ---- criterion 6: OPA over EPA gain at SER 1e-4 ----
void criterion_opa_gain() {
    const Modulation qam4 = Modulation::mqam(4);
    const double want[] = {1.5, 2.5, 3.0};
    const double mus[] = {0.5, 1.0, 1.5};
    bool pass = true;
    for (int i = 0; i < 3; ++i) {
        auto epa_curve = [&](double pdb) {
            NetworkModel n = fig8_network(mus[i], pdb);
            return end_to_end_ser(n, qam4).value;
        };
        auto opa_curve = [&](double pdb) {
            NetworkModel n = fig8_network(mus[i], pdb);
            n.allocation = optimize_power(n, qam4).allocation;
            return end_to_end_ser(n, qam4).value;
        };
        double gain =
            snr_at_ser(epa_curve, 1e-4, 0.0, 50.0) - snr_at_ser(opa_curve, 1e-4, 0.0, 50.0);
        bool ok = std::fabs(gain - want[i]) <= 0.5;
        pass = pass && ok;
        note(fmt("mu=%.1f gain %.2f dB (want %.1f +- 0.5)%s", mus[i], gain, want[i],
                 ok ? "" : " MISS"));
    }
    report(6, "OPA gain over EPA at SER 1e-4", pass,
           "two relays, 4-QAM, relay->destination links 10 dB stronger");
}

// ---- criterion 7: special-case reductions ----
void criterion_reductions() {
    bool pass = true;
    {
        double e_ray = rayleigh_reduction_error(EtaMuParams::format1(1.0, 0.5));
        double e_hoyt = 0.0, e_nak = 0.0;
        for (double q : {0.3, 0.7})
            e_hoyt = std::max(e_hoyt, hoyt_reduction_error(EtaMuParams::format1(q * q, 0.5), q));
        for (double m : {1.0, 2.0, 3.0})
            e_nak = std::max(e_nak,
                             nakagami_reduction_error(EtaMuParams::format1(1.0 - 1e-9, m / 2.0), m));
        bool ok = e_ray <= 1e-6 && e_hoyt <= 1e-6 && e_nak <= 1e-6;
        pass = pass && ok;
        note(fmt("MGF collapse: rayleigh %.2e hoyt %.2e nakagami %.2e (tol 1e-6)%s", e_ray,
                 e_hoyt, e_nak, ok ? "" : " MISS"));
    }
    {
        // single-hop SERs against classical closed forms
        double worst = 0.0;
        for (double gbar : {2.0, 10.0, 100.0}) {
            NetworkModel net = fig2_network(0, linear_to_db(gbar));
            double c = gbar;  // BPSK: g = 1
            double bpsk = 0.5 * (1.0 - std::sqrt(c / (1.0 + c)));
            worst = std::max(worst, rel_err(end_to_end_ser(net, Modulation::mpsk(2)).value, bpsk));

            double g = 0.5;  // QPSK
            double cc = g * gbar;
            double r = std::sqrt(cc / (1.0 + cc));
            double qpsk = 0.75 - (1.0 / PI) * r * (PI / 2.0 + std::atan(r));
            worst = std::max(worst, rel_err(end_to_end_ser(net, Modulation::mpsk(4)).value, qpsk));
        }
        for (double m : {1.0, 2.0, 3.0}) {
            for (double gbar : {2.0, 10.0, 100.0}) {
                double lam = std::sqrt(gbar / m / (1.0 + gbar / m));
                double sum = 0.0, comb = 1.0;
                for (int k = 0; k < static_cast<int>(m); ++k) {
                    if (k > 0) comb = comb * (m - 1 + k) / k;
                    sum += comb * std::pow(0.5 * (1.0 + lam), k);
                }
                double closed = std::pow(0.5 * (1.0 - lam), m) * sum;
                NetworkModel net;
                net.sd = LinkParams(EtaMuParams::format1(1.0 - 1e-9, m / 2.0), 1.0);
                net.noise = 1.0;
                net.total_power = gbar;
                net.allocation = epa(0);
                worst =
                    std::max(worst, rel_err(end_to_end_ser(net, Modulation::mpsk(2)).value, closed));
            }
        }
        for (double q : {0.3, 0.7}) {  // Hoyt BPSK via the classical Hoyt MGF
            for (double gbar : {2.0, 10.0}) {
                auto mgf_s = [&](double s) {
                    double sg = s * gbar;
                    return 1.0 / std::sqrt(1.0 + 2.0 * sg +
                                           sg * sg * 4.0 * q * q / ((1 + q * q) * (1 + q * q)));
                };
                double classical =
                    quad::tanh_sinh([&](double th) {
                        double s2 = std::sin(th);
                        return mgf_s(1.0 / (s2 * s2));
                    }, 0.0, PI / 2.0).value / PI;
                NetworkModel net;
                net.sd = LinkParams(EtaMuParams::format1(q * q, 0.5), 1.0);
                net.noise = 1.0;
                net.total_power = gbar;
                net.allocation = epa(0);
                worst = std::max(
                    worst, rel_err(end_to_end_ser(net, Modulation::mpsk(2)).value, classical));
            }
        }
        bool ok = worst <= 1e-6;
        pass = pass && ok;
        note(fmt("single-hop SER vs classical forms: worst %.2e (tol 1e-6)%s", worst,
                 ok ? "" : " MISS"));
    }
    {
        // density normalization and mean
        double worst_norm = 0.0, worst_mean = 0.0;
        for (auto shape : {EtaMuParams::format1(0.3, 0.5), EtaMuParams::format1(0.8, 1.5)}) {
            LinkParams link(shape, 1.0);
            for (double gbar : {0.7, 10.0}) {
                SnrPoint snr(gbar);
                auto f = [&](double t, double omt) {
                    double g = gbar * t / omt;
                    return pdf_snr(g, link, snr) * gbar / (omt * omt);
                };
                auto fm = [&](double t, double omt) {
                    double g = gbar * t / omt;
                    return g * pdf_snr(g, link, snr) * gbar / (omt * omt);
                };
                worst_norm = std::max(worst_norm,
                                      std::fabs(quad::tanh_sinh_01(f).value - 1.0));
                worst_mean = std::max(worst_mean, rel_err(quad::tanh_sinh_01(fm).value, gbar));
            }
        }
        bool ok = worst_norm <= 1e-8 && worst_mean <= 1e-7;
        pass = pass && ok;
        note(fmt("pdf normalization %.2e (tol 1e-8), mean %.2e (tol 1e-7)%s", worst_norm,
                 worst_mean, ok ? "" : " MISS"));
    }
    report(7, "special-case reductions (Rayleigh / Hoyt / Nakagami-m)", pass,
           pass ? "all collapses within tolerance" : "see lines above");
}

// ---- criterion 8: convexity, stationarity, K=1 power policy ----
void criterion_convexity() {
    bool pass = true;
    RandomStream rng(31337);
    for (int k : {1, 2, 3}) {
        NetworkModel net = fig8_network(1.0, 20.0);
        net.sr.resize(k, net.sr[0]);
        net.rd.resize(k, net.rd[0]);
        net.allocation = epa(k);
        bool ok = verify_convexity(net, Modulation::mqam(4), 100, rng);
        pass = pass && ok;
        note(fmt("K=%d Hessian PSD at 100 random interior points%s", k, ok ? "" : " MISS"));
    }

    double worst_kkt = 0.0;
    for (const auto& r : g_k1_reports) worst_kkt = std::max(worst_kkt, r.kkt_residual);
    bool policy_ok = true;
    const Modulation qam4 = Modulation::mqam(4);
    for (double mu_rd : {0.5, 1.0, 1.5}) {
        for (double om_rd : {1.0, 10.0, 100.0}) {
            NetworkModel net;
            net.sd = LinkParams(EtaMuParams::format1(0.5, 0.5), 1.0);
            net.sr.assign(1, LinkParams(EtaMuParams::format1(0.5, 0.5), 1.0));
            net.rd.assign(1, LinkParams(EtaMuParams::format1(0.5, mu_rd), om_rd));
            net.noise = 1.0;
            net.total_power = db_to_linear(20.0);
            net.allocation = epa(1);
            OpaReport r = optimize_power(net, qam4);
            worst_kkt = std::max(worst_kkt, r.kkt_residual);
            policy_ok = policy_ok &&
                        r.allocation.a0 * mu_rd >= r.allocation.ar[0] * 0.5 - 1e-12;
        }
    }
    bool kkt_ok = worst_kkt < 1e-6;
    pass = pass && kkt_ok && policy_ok;
    note(fmt("worst KKT residual over all optimizer outputs: %.3g (tol 1e-6)%s", worst_kkt,
             kkt_ok ? "" : " MISS"));
    note(fmt("K=1 policy a0*mu_RD >= aR*mu_SD at every optimum: %s",
             policy_ok ? "holds" : "VIOLATED"));
    report(8, "convexity, stationarity and the K=1 power policy", pass,
           pass ? "all checks hold" : "see lines above");
}

// ---- criterion 9: amount of fading ----
void criterion_aof() {
    bool pass = true;
    double worst0 = 0.0;
    for (double mu : {0.5, 1.0, 1.5, 2.0}) {
        NetworkModel net;
        net.sd = LinkParams(EtaMuParams::format1(1.0, mu), 1.0);
        net.noise = 1.0;
        net.total_power = 4.0;
        net.allocation = epa(0);
        worst0 = std::max(worst0, rel_err(amount_of_fading(net), 1.0 / (2.0 * mu)));
    }
    bool ok0 = worst0 <= 1e-9;
    note(fmt("K=0, eta=1: worst deviation from 1/(2 mu): %.2e (tol 1e-9)%s", worst0,
             ok0 ? "" : " MISS"));

    NetworkModel k1 = fig2_network(1, 6.0);
    double aof1 = amount_of_fading(k1);
    bool ok1 = rel_err(aof1, 0.5) <= 1e-9;
    note(fmt("K=1 dual Rayleigh: %.12f (want 0.5, tol 1e-9)%s", aof1, ok1 ? "" : " MISS"));

    double worst_oracle = 0.0;
    for (int k : {1, 2, 3}) {
        NetworkModel net;
        net.sd = LinkParams(EtaMuParams::format1(0.3, 1.0), 1.3);
        net.sr.assign(k, LinkParams(EtaMuParams::format1(0.7, 1.0), 1.0));
        net.rd.assign(k, LinkParams(EtaMuParams::format1(0.7, 1.5), 0.8));
        net.noise = 1.0;
        net.total_power = 2.0;
        net.allocation = epa(k);
        auto mgf_product = [&](double s) {
            double v = mgf(net.sd, SnrPoint(net.gbar_sd()), s);
            for (int i = 0; i < k; ++i) v *= mgf(net.rd[i], SnrPoint(net.gbar_rd(i)), s);
            return v;
        };
        double gmax = net.gbar_sd();
        for (int i = 0; i < k; ++i) gmax = std::max(gmax, net.gbar_rd(i));
        double h = 1e-4 / gmax;
        double fm2 = mgf_product(-2 * h), fm1 = mgf_product(-h), f0 = mgf_product(0.0),
               fp1 = mgf_product(h), fp2 = mgf_product(2 * h);
        double m1 = -(-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h);
        double m2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
        double oracle = (m2 - m1 * m1) / (m1 * m1);
        worst_oracle = std::max(worst_oracle, rel_err(amount_of_fading(net), oracle));
    }
    bool ok2 = worst_oracle <= 1e-6;
    note(fmt("K=1..3 vs moment oracle: worst %.2e (tol 1e-6)%s", worst_oracle,
             ok2 ? "" : " MISS"));

    pass = ok0 && ok1 && ok2;
    report(9, "amount of fading closed form", pass,
           pass ? "all checks within tolerance" : "see lines above");
}

// ---- criterion 10: determinism of CSV outputs ----
void criterion_determinism() {
    RunConfig cfg = parse_run_config(R"({
      "network": { "noise": 1.0, "links": {
        "sd": {"eta": 1.0, "mu": 0.5, "format": 1, "omega_db": 0.0},
        "sr": [{"eta": 1.0, "mu": 0.5, "format": 1, "omega_db": 0.0}],
        "rd": [{"eta": 1.0, "mu": 0.5, "format": 1, "omega_db": 0.0}] } },
      "modulation": {"scheme": "psk", "m": 2},
      "sweep": {"start_db": 14, "stop_db": 18, "step_db": 2},
      "methods": ["exact", "asymptotic", "mc"],
      "mc": {"symbols": 1000000, "seed": 99, "batch": 16384}
    })");

    cfg.threads = 1;
    std::string a = sweep_to_csv(run_sweep(cfg), cfg.relay_count());
    std::string b = sweep_to_csv(run_sweep(cfg), cfg.relay_count());
    cfg.threads = 2;
    std::string c = sweep_to_csv(run_sweep(cfg), cfg.relay_count());
    bool pass = a == b && a == c && !a.empty();
    report(10, "byte-identical CSV across runs and thread counts", pass,
           fmt("%zu bytes, 3 runs compared", a.size()));
}

}  // namespace

int main() {
    std::printf("acceptance suite\n================\n");
    criterion_oracle_equivalence();
    criterion_monte_carlo();
    criterion_diversity();
    criterion_relay_gain();
    criterion_opa_tables();
    criterion_opa_gain();
    criterion_reductions();
    criterion_convexity();
    criterion_aof();
    criterion_determinism();
    std::printf("================\n%d criterion(s) failed\n", g_failures);
    return g_failures;
}
