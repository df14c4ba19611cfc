#include "relayser/ser_engine.hpp"

#include <cmath>
#include <cstddef>

#include "relayser/quadrature.hpp"
#include "relayser/special_fn.hpp"

namespace relayser {
namespace {

constexpr double pi_v = 3.14159265358979323846;
constexpr double sqrt_pi = 1.77245385090551602730;

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// One multiplicative factor of the MGF product, mapped to the u-integral
// constants: x1 = gbar*g / (2(h-H)mu), x2 = gbar*g / (2(h+H)mu).  `weight` is
// the exponent the factor carries into F_D (mu for a single hop, K'*mu for a
// group of identically distributed hops).
struct FactorGroup {
    double weight;
    double x1, x2;
    double log_beta;   // ln[(4 mu^2 (h^2-H^2) / (gbar^2 g^2))^mu], times multiplicity
    double log_mgf_g;  // ln of the group's MGF factor evaluated at s = g
};

FactorGroup make_group(const EtaMuParams& s, double gbar, double g, int multiplicity) {
    FactorGroup f;
    const double hmH = s.h - s.H, hpH = s.h + s.H;
    f.weight = multiplicity * s.mu;
    f.x1 = gbar * g / (2.0 * hmH * s.mu);
    f.x2 = gbar * g / (2.0 * hpH * s.mu);
    f.log_beta = f.weight * (std::log(4.0 * s.mu * s.mu * hmH * hpH) - 2.0 * std::log(gbar * g));
    f.log_mgf_g = f.weight * (std::log(4.0 * s.mu * s.mu * s.h) -
                              std::log(2.0 * hmH * s.mu + g * gbar) -
                              std::log(2.0 * hpH * s.mu + g * gbar));
    return f;
}

double weight_sum(const std::vector<FactorGroup>& gs) {
    double s = 0.0;
    for (const auto& f : gs) s += f.weight;
    return s;
}

double log_beta_sum(const std::vector<FactorGroup>& gs) {
    double s = 0.0;
    for (const auto& f : gs) s += f.log_beta;
    return s;
}

double log_mgf_sum(const std::vector<FactorGroup>& gs) {
    double s = 0.0;
    for (const auto& f : gs) s += f.log_mgf_g;
    return s;
}

// Int_0^(pi/2) of the MGF product, u = sin^2(theta) route:
//   beta * B(2S+1/2, 1/2)/2 * F_D(2S+1/2; {w,w}; 2S+1; {-1/x1, -1/x2})
double half_plane_integral(const std::vector<FactorGroup>& gs) {
    const double S2 = 2.0 * weight_sum(gs);
    FdArgs fd;
    fd.a = S2 + 0.5;
    fd.c = S2 + 1.0;
    for (const auto& f : gs) {
        fd.b.push_back(f.weight);
        fd.b.push_back(f.weight);
        fd.x.push_back(-1.0 / f.x1);
        fd.x.push_back(-1.0 / f.x2);
    }
    double pref = std::exp(log_beta_sum(gs) + log_gamma(S2 + 0.5) - log_gamma(S2 + 1.0));
    return pref * sqrt_pi / 2.0 * lauricella_fd(fd);
}

// Int_(pi/2)^((M-1)pi/M), u = cos^2(theta)/cos^2(pi/M) route:
//   M_mrc(g) * cos(pi/M) * F_D(1/2; {w,w},1/2-2S; 3/2; {c2/(1+x1), c2/(1+x2)}, c2)
double psk_tail_integral(const std::vector<FactorGroup>& gs, int m) {
    const double cm = std::cos(pi_v / m);
    if (cm <= 0.0) return 0.0;  // BPSK: empty range
    const double c2 = cm * cm;
    FdArgs fd;
    fd.a = 0.5;
    fd.c = 1.5;
    for (const auto& f : gs) {
        fd.b.push_back(f.weight);
        fd.b.push_back(f.weight);
        fd.x.push_back(c2 / (1.0 + f.x1));
        fd.x.push_back(c2 / (1.0 + f.x2));
    }
    fd.b.push_back(0.5 - 2.0 * weight_sum(gs));
    fd.x.push_back(c2);
    return std::exp(log_mgf_sum(gs)) * cm * lauricella_fd(fd);
}

// Int_0^(pi/4), y = 2 sin^2(theta) route:
//   beta * 2^-(2S+3/2) Gamma(2S+1/2)/Gamma(2S+3/2)
//        * F_D(2S+1/2; {w,w},1/2; 2S+3/2; {-1/(2x1), -1/(2x2)}, 1/2)
double quarter_plane_integral(const std::vector<FactorGroup>& gs) {
    const double S2 = 2.0 * weight_sum(gs);
    FdArgs fd;
    fd.a = S2 + 0.5;
    fd.c = S2 + 1.5;
    for (const auto& f : gs) {
        fd.b.push_back(f.weight);
        fd.b.push_back(f.weight);
        fd.x.push_back(-0.5 / f.x1);
        fd.x.push_back(-0.5 / f.x2);
    }
    fd.b.push_back(0.5);
    fd.x.push_back(0.5);
    double lpref = log_beta_sum(gs) - (S2 + 1.5) * std::log(2.0) + log_gamma(S2 + 0.5) -
                   log_gamma(S2 + 1.5);
    return std::exp(lpref) * lauricella_fd(fd);
}

double closed_form_from_groups(const std::vector<FactorGroup>& gs, const Modulation& mod) {
    if (mod.scheme == Modulation::Scheme::Mpsk)
        return half_plane_integral(gs) / pi_v + psk_tail_integral(gs, mod.m) / pi_v;
    const double c = mod.cqam;
    return 4.0 * c / pi_v * half_plane_integral(gs) -
           4.0 * c * c / pi_v * quarter_plane_integral(gs);
}

std::vector<FactorGroup> groups_for_set(const NetworkModel& net, DecodingSet cz,
                                        const Modulation& mod, ClosedFormPath path) {
    std::vector<FactorGroup> gs;
    gs.push_back(make_group(net.sd.shape, net.gbar_sd(), mod.g, 1));

    std::vector<int> active;
    for (int k = 0; k < net.relay_count(); ++k)
        if (cz.decoded(k)) active.push_back(k);
    if (active.empty()) return gs;

    bool iid = path != ClosedFormPath::General && active.size() >= 2;
    for (std::size_t i = 1; i < active.size() && iid; ++i) {
        const EtaMuParams &a = net.rd[active[0]].shape, &b = net.rd[active[i]].shape;
        double ga = net.gbar_rd(active[0]), gb = net.gbar_rd(active[i]);
        iid = a.format == b.format && a.eta == b.eta && a.mu == b.mu &&
              std::fabs(ga - gb) <= 1e-14 * ga;
    }
    if (path == ClosedFormPath::IidCollapsed && !iid && active.size() >= 2)
        throw std::invalid_argument("cond_error: active relay hops are not i.i.d");

    if (iid) {
        gs.push_back(make_group(net.rd[active[0]].shape, net.gbar_rd(active[0]), mod.g,
                                static_cast<int>(active.size())));
    } else {
        for (int k : active)
            gs.push_back(make_group(net.rd[k].shape, net.gbar_rd(k), mod.g, 1));
    }
    return gs;
}

// Direct theta-quadrature of an MGF-product angle integral.
double angle_quadrature(const std::function<double(double)>& mgf_of_s, const Modulation& mod) {
    quad::QuadratureOptions opts;
    opts.rel_tol = 1e-12;
    opts.max_level = 12;
    auto f = [&](double theta) {
        double s2 = std::sin(theta);
        return mgf_of_s(mod.g / (s2 * s2));
    };
    if (mod.scheme == Modulation::Scheme::Mpsk) {
        double upper = (mod.m - 1.0) * pi_v / mod.m;
        return quad::tanh_sinh(f, 0.0, upper, opts).value / pi_v;
    }
    const double c = mod.cqam;
    double i3 = quad::tanh_sinh(f, 0.0, pi_v / 2.0, opts).value;
    double i4 = quad::tanh_sinh(f, 0.0, pi_v / 4.0, opts).value;
    return 4.0 * c / pi_v * i3 - 4.0 * c * c / pi_v * i4;
}

}  // namespace

Modulation Modulation::mpsk(int m) {
    if (m < 2) throw std::domain_error("Modulation: M-PSK requires M >= 2");
    Modulation mod;
    mod.scheme = Scheme::Mpsk;
    mod.m = m;
    double s = std::sin(pi_v / m);
    mod.g = s * s;
    return mod;
}

Modulation Modulation::mqam(int m) {
    if (m < 4) throw std::domain_error("Modulation: M-QAM requires M >= 4");
    int root = static_cast<int>(std::llround(std::sqrt(static_cast<double>(m))));
    if (root * root != m) throw std::domain_error("Modulation: M-QAM requires square M");
    Modulation mod;
    mod.scheme = Scheme::Mqam;
    mod.m = m;
    mod.g = 3.0 / (2.0 * (m - 1.0));
    mod.cqam = 1.0 - 1.0 / root;
    return mod;
}

void NetworkModel::validate() const {
    if (sr.size() != rd.size())
        throw std::invalid_argument("NetworkModel: sr and rd must have equal length");
    if (!(noise > 0.0)) throw std::domain_error("NetworkModel: requires noise > 0");
    if (!(total_power > 0.0)) throw std::domain_error("NetworkModel: requires total_power > 0");
    if (allocation.relay_count() != relay_count())
        throw std::invalid_argument("NetworkModel: allocation length mismatch");
    allocation.validate();
}

double mrc_mgf(const NetworkModel& net, DecodingSet cz, double s) {
    double v = mgf(net.sd, SnrPoint(net.gbar_sd()), s);
    for (int k = 0; k < net.relay_count(); ++k)
        if (cz.decoded(k)) v *= mgf(net.rd[k], SnrPoint(net.gbar_rd(k)), s);
    return v;
}

double cond_error_closed_form(const NetworkModel& net, DecodingSet cz, const Modulation& mod,
                              ClosedFormPath path) {
    return closed_form_from_groups(groups_for_set(net, cz, mod, path), mod);
}

double cond_error_quadrature(const NetworkModel& net, DecodingSet cz, const Modulation& mod) {
    return angle_quadrature([&](double s) { return mrc_mgf(net, cz, s); }, mod);
}

CondError cond_error(const NetworkModel& net, DecodingSet cz, const Modulation& mod) {
    try {
        return {cond_error_closed_form(net, cz, mod), SerMethod::ExactClosedForm};
    } catch (const AccuracyError&) {
        return {cond_error_quadrature(net, cz, mod), SerMethod::ExactQuadrature};
    }
}

CondError cond_error_mpsk(const NetworkModel& net, DecodingSet cz, const Modulation& mod) {
    if (mod.scheme != Modulation::Scheme::Mpsk)
        throw std::invalid_argument("cond_error_mpsk: modulation is not M-PSK");
    return cond_error(net, cz, mod);
}

CondError cond_error_mqam(const NetworkModel& net, DecodingSet cz, const Modulation& mod) {
    if (mod.scheme != Modulation::Scheme::Mqam)
        throw std::invalid_argument("cond_error_mqam: modulation is not M-QAM");
    return cond_error(net, cz, mod);
}

double relay_decode_error_closed_form(const LinkParams& link_sr, SnrPoint snr,
                                      const Modulation& mod) {
    std::vector<FactorGroup> gs{make_group(link_sr.shape, snr.gbar, mod.g, 1)};
    return closed_form_from_groups(gs, mod);
}

double relay_decode_error_quadrature(const LinkParams& link_sr, SnrPoint snr,
                                     const Modulation& mod) {
    return angle_quadrature([&](double s) { return mgf(link_sr, snr, s); }, mod);
}

CondError relay_decode_error(const LinkParams& link_sr, SnrPoint snr, const Modulation& mod) {
    try {
        return {relay_decode_error_closed_form(link_sr, snr, mod), SerMethod::ExactClosedForm};
    } catch (const AccuracyError&) {
        return {relay_decode_error_quadrature(link_sr, snr, mod), SerMethod::ExactQuadrature};
    }
}

SerResult end_to_end_ser(const NetworkModel& net, const Modulation& mod) {
    net.validate();
    const int K = net.relay_count();
    if (K > 20) throw std::length_error("end_to_end_ser: more than 20 relays");

    std::vector<double> perr(K);
    bool all_closed = true;
    for (int k = 0; k < K; ++k) {
        CondError p = relay_decode_error(net.sr[k], SnrPoint(net.gbar_sr(k)), mod);
        perr[k] = p.value;
        all_closed = all_closed && p.method == SerMethod::ExactClosedForm;
    }

    double total = 0.0;
    for (std::uint32_t z = 0; z < (1u << K); ++z) {
        DecodingSet cz{z};
        CondError ce = cond_error(net, cz, mod);
        all_closed = all_closed && ce.method == SerMethod::ExactClosedForm;
        double prob = 1.0;
        for (int k = 0; k < K; ++k) prob *= cz.decoded(k) ? 1.0 - perr[k] : perr[k];
        total += ce.value * prob;
    }
    return {clamp01(total),
            all_closed ? SerMethod::ExactClosedForm : SerMethod::ExactQuadrature};
}

double angle_coeff(double nu, const Modulation& mod) {
    if (!(nu > 0.0)) throw std::domain_error("angle_coeff: requires nu > 0");
    const double half = sqrt_pi / 2.0 * std::exp(log_gamma(2.0 * nu + 0.5) -
                                                 log_gamma(2.0 * nu + 1.0));
    if (mod.scheme == Modulation::Scheme::Mpsk) {
        double cm = std::cos(pi_v / mod.m);
        double tail = 0.0;
        if (cm > 0.0)
            tail = cm * gauss_2f1(0.5 - 2.0 * nu, 0.5, 1.5, cm * cm);
        return (half + tail) / pi_v;
    }
    const double c = mod.cqam;
    double quarter = std::exp(-(2.0 * nu + 1.5) * std::log(2.0) + log_gamma(2.0 * nu + 0.5) -
                              log_gamma(2.0 * nu + 1.5)) *
                     gauss_2f1(0.5, 2.0 * nu + 0.5, 2.0 * nu + 1.5, 0.5);
    return 4.0 * c / pi_v * half - 4.0 * c * c / pi_v * quarter;
}

double a_coeff_relay_dest(DecodingSet cz, const std::vector<double>& mus, const Modulation& mod) {
    if (mus.empty()) throw std::invalid_argument("a_coeff_relay_dest: mus empty");
    double nu = mus[0];
    for (std::size_t k = 1; k < mus.size(); ++k)
        if (cz.decoded(static_cast<int>(k) - 1)) nu += mus[k];
    return angle_coeff(nu, mod);
}

double a_coeff_source_relay(double mu_sr, const Modulation& mod) {
    return angle_coeff(mu_sr, mod);
}

std::vector<AsymptoticTerm> asymptotic_power_terms(const NetworkModel& net,
                                                   const Modulation& mod) {
    net.validate();
    const int K = net.relay_count();
    if (K > 20) throw std::length_error("asymptotic_power_terms: more than 20 relays");

    // allocation-independent ln[(4 mu^2 h N0^2 / (g^2 Omega^2 P^2))^mu] per hop
    auto hop_log = [&](const LinkParams& link) {
        const EtaMuParams& s = link.shape;
        double full_gbar = net.total_power * link.omega / net.noise;
        return s.mu * (std::log(4.0 * s.mu * s.mu * s.h) - 2.0 * std::log(mod.g * full_gbar));
    };
    const double l_sd = hop_log(net.sd);
    std::vector<double> l_sr(K), l_rd(K), a_sr(K);
    for (int k = 0; k < K; ++k) {
        l_sr[k] = hop_log(net.sr[k]);
        l_rd[k] = hop_log(net.rd[k]);
        a_sr[k] = a_coeff_source_relay(net.sr[k].shape.mu, mod);
    }

    std::vector<AsymptoticTerm> terms;
    terms.reserve(1u << K);
    for (std::uint32_t z = 0; z < (1u << K); ++z) {
        DecodingSet cz{z};
        AsymptoticTerm t;
        double nu = net.sd.shape.mu;
        double lg = l_sd;
        t.a0_exponent = 2.0 * net.sd.shape.mu;
        for (int k = 0; k < K; ++k) {
            if (cz.decoded(k)) {
                nu += net.rd[k].shape.mu;
                lg += l_rd[k];
                t.relay_exponents.emplace_back(k, 2.0 * net.rd[k].shape.mu);
            } else {
                lg += l_sr[k] + std::log(a_sr[k]);
                t.a0_exponent += 2.0 * net.sr[k].shape.mu;
            }
        }
        t.coeff = angle_coeff(nu, mod) * std::exp(lg);
        terms.push_back(std::move(t));
    }
    return terms;
}

double asymptotic_ser_at(const std::vector<AsymptoticTerm>& terms,
                         const PowerAllocation& alloc) {
    double total = 0.0;
    for (const auto& t : terms) {
        double v = t.coeff * std::pow(alloc.a0, -t.a0_exponent);
        for (const auto& [k, e] : t.relay_exponents) v *= std::pow(alloc.ar[k], -e);
        total += v;
    }
    return total;
}

SerResult asymptotic_ser(const NetworkModel& net, const Modulation& mod) {
    double v = asymptotic_ser_at(asymptotic_power_terms(net, mod), net.allocation);
    return {clamp01(v), SerMethod::Asymptotic};
}

}  // namespace relayser
