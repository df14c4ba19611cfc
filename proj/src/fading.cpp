#include "relayser/fading.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include "relayser/special_fn.hpp"
#include "relayser/ser_engine.hpp"

namespace relayser {
namespace {

constexpr double pi_v = 3.14159265358979323846;

// ln of the order-scaled Bessel function I~_nu(z) = I_nu(z) / (z/2)^nu.
// I~ is entire in z with all-positive power-series terms, so the (z/2)^nu
// factor that would cancel against H^(mu-1/2) in the SNR density never has to
// be formed explicitly.
double log_scaled_bessel_i(double nu, double z) {
    if (z < 30.0) {
        double term = 1.0, sum = 1.0;  // series relative to 1/Gamma(nu+1)
        const double q = 0.25 * z * z;
        for (int k = 0; k < 500; ++k) {
            term *= q / ((k + 1.0) * (nu + k + 1.0));
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return std::log(sum) - log_gamma(nu + 1.0);
    }
    // Hankel asymptotic expansion of e^(-z) I_nu(z); for half-integer nu the
    // series terminates, otherwise the truncation error at these z is far
    // below double precision
    const double fournu2 = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 20; ++k) {
        double odd = 2.0 * k - 1.0;
        term *= -(fournu2 - odd * odd) / (8.0 * k * z);
        if (std::fabs(term) > std::fabs(sum)) break;  // asymptotic divergence guard
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return z - 0.5 * std::log(2.0 * pi_v * z) + std::log(sum) - nu * std::log(0.5 * z);
}

void require_half_integer_format1(const EtaMuParams& shape) {
    if (shape.format != EtaMuFormat::Format1)
        throw UnsupportedError("sampler supports Format 1 only");
    double n = 2.0 * shape.mu;
    if (std::fabs(n - std::round(n)) > 1e-9 || n < 0.5)
        throw UnsupportedError("sampler requires 2*mu to be a positive integer");
}

// Sum of 2*mu Gaussian cluster pairs with E(total) = mean.
double sample_cluster_power(const EtaMuParams& shape, double mean, RandomStream& rng) {
    const int n = static_cast<int>(std::llround(2.0 * shape.mu));
    const double var_y = mean / (n * (1.0 + shape.eta));
    const double var_x = shape.eta * var_y;
    const double sx = std::sqrt(var_x), sy = std::sqrt(var_y);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double xi = sx * rng.gaussian();
        double yi = sy * rng.gaussian();
        acc += xi * xi + yi * yi;
    }
    return acc;
}

}  // namespace

std::pair<double, double> hH_from_eta(double eta, double mu, EtaMuFormat format) {
    if (!(mu > 0.0)) throw std::domain_error("eta-mu: requires mu > 0");
    if (format == EtaMuFormat::Format1) {
        if (!(eta > 0.0)) throw std::domain_error("eta-mu Format 1: requires eta > 0");
        return {(2.0 + 1.0 / eta + eta) / 4.0, (1.0 / eta - eta) / 4.0};
    }
    if (!(eta > -1.0 && eta < 1.0))
        throw std::domain_error("eta-mu Format 2: requires -1 < eta < 1");
    const double d = 1.0 - eta * eta;
    return {1.0 / d, eta / d};
}

EtaMuParams EtaMuParams::format1(double eta, double mu) {
    auto [h, H] = hH_from_eta(eta, mu, EtaMuFormat::Format1);
    return {eta, mu, EtaMuFormat::Format1, h, H};
}

EtaMuParams EtaMuParams::format2(double eta, double mu) {
    auto [h, H] = hH_from_eta(eta, mu, EtaMuFormat::Format2);
    return {eta, mu, EtaMuFormat::Format2, h, H};
}

double pdf_snr(double gamma, const LinkParams& link, SnrPoint snr) {
    if (gamma < 0.0) throw std::domain_error("pdf_snr: requires gamma >= 0");
    const EtaMuParams& s = link.shape;
    const double gbar = snr.gbar;
    if (gamma == 0.0) {
        if (s.mu > 0.5) return 0.0;
        if (s.mu < 0.5) return std::numeric_limits<double>::infinity();
        gamma = 0.0;  // mu == 1/2: finite limit, handled by the log form below
    }
    // f(g) = 2 sqrt(pi) mu^(2mu) h^mu g^(2mu-1) / (Gamma(mu) gbar^(2mu))
    //        * I~_(mu-1/2)(2 mu H g / gbar) * exp(-2 mu h g / gbar)
    const double z = 2.0 * s.mu * s.H * gamma / gbar;
    double lg = std::log(2.0 * std::sqrt(pi_v)) + 2.0 * s.mu * std::log(s.mu) +
                s.mu * std::log(s.h) - log_gamma(s.mu) - 2.0 * s.mu * std::log(gbar) -
                2.0 * s.mu * s.h * gamma / gbar + log_scaled_bessel_i(s.mu - 0.5, z);
    if (gamma > 0.0) lg += (2.0 * s.mu - 1.0) * std::log(gamma);
    return std::exp(lg);
}

double mgf(const LinkParams& link, SnrPoint snr, double s) {
    const EtaMuParams& p = link.shape;
    const double d1 = 2.0 * (p.h - p.H) * p.mu + s * snr.gbar;
    const double d2 = 2.0 * (p.h + p.H) * p.mu + s * snr.gbar;
    if (!(d1 > 0.0) || !(d2 > 0.0))
        throw std::domain_error("mgf: s below the abscissa of convergence");
    return std::exp(p.mu * (std::log(4.0 * p.mu * p.mu * p.h) - std::log(d1) - std::log(d2)));
}

double sample_snr(const LinkParams& link, SnrPoint snr, RandomStream& rng) {
    require_half_integer_format1(link.shape);
    return sample_cluster_power(link.shape, snr.gbar, rng);
}

double sample_gain2(const LinkParams& link, RandomStream& rng) {
    require_half_integer_format1(link.shape);
    return sample_cluster_power(link.shape, link.omega, rng);
}

double amount_of_fading(const NetworkModel& network) {
    const int K = network.relay_count();
    const EtaMuParams& sd = network.sd.shape;
    const double gsd = network.gbar_sd();
    const double hh_sd = sd.h * sd.h - sd.H * sd.H;
    const double d1 = gsd * sd.h / (sd.mu * hh_sd);
    const double d2 = gsd * gsd / (4.0 * sd.mu * sd.mu * hh_sd);

    double d3 = 0.0, d4 = 0.0, mu_rd = 0.0;
    if (K > 0) {
        const EtaMuParams& rd = network.rd[0].shape;
        const double grd = network.gbar_rd(0);
        for (int k = 1; k < K; ++k) {
            const EtaMuParams& o = network.rd[k].shape;
            bool same = o.format == rd.format && o.eta == rd.eta && o.mu == rd.mu &&
                        std::fabs(network.gbar_rd(k) - grd) <= 1e-12 * grd;
            if (!same)
                throw UnsupportedError(
                    "amount_of_fading: relay->destination links must be i.i.d");
        }
        const double hh_rd = rd.h * rd.h - rd.H * rd.H;
        d3 = grd * grd / (4.0 * rd.mu * rd.mu * hh_rd);
        d4 = grd * rd.h / (rd.mu * hh_rd);
        mu_rd = rd.mu;
    }

    const double mean = sd.mu * d1 + K * mu_rd * d4;
    double aof = (sd.mu * (sd.mu + 1.0) * d1 * d1 - 2.0 * d2 * sd.mu - 2.0 * d3 * K * mu_rd) /
                 (mean * mean);
    if (K > 0)
        aof += K * (mu_rd * (K * mu_rd + 1.0) * d4 * d4 + 2.0 * sd.mu * mu_rd * d1 * d4) /
               (mean * mean);
    return aof - 1.0;
}

}  // namespace relayser
