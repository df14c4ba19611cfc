#ifndef RELAYSER_FADING_HPP
#define RELAYSER_FADING_HPP

// eta-mu fading: parameterization (both formats), SNR density, MGF, amount of
// fading and the Format-1 physical-model variate generator.
//
// Conventions.  gamma is the instantaneous SNR per symbol, gbar = E(gamma) its
// mean.  eta is the in-phase/quadrature scattered-power ratio in Format 1
// (eta > 0) and the in-phase/quadrature correlation in Format 2 (|eta| < 1);
// mu > 0 relates to multipath clustering.  The derived constants satisfy
// h^2 - H^2 = h in both formats, which is what makes the MGF equal 1 at s = 0.
//
// Note: a widely circulated Format-1 table entry reads h = (1 + 1/eta + eta)/4,
// which breaks the mandatory Rayleigh reduction (eta = 1 must give h = 1).  The
// correct constant, used here and pinned by the Rayleigh/Hoyt/Nakagami collapse
// tests, is h = (2 + 1/eta + eta)/4.

#include <stdexcept>
#include <utility>

#include "relayser/rng.hpp"

namespace relayser {

struct NetworkModel;  // ser_engine.hpp

class UnsupportedError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class EtaMuFormat { Format1, Format2 };

struct EtaMuParams {
    double eta = 1.0;
    double mu = 0.5;
    EtaMuFormat format = EtaMuFormat::Format1;
    double h = 1.0;  // derived
    double H = 0.0;  // derived

    static EtaMuParams format1(double eta, double mu);
    static EtaMuParams format2(double eta, double mu);
};

// (h, H) from eta for the given format; throws std::domain_error outside the
// format's domain.
std::pair<double, double> hH_from_eta(double eta, double mu, EtaMuFormat format);

struct LinkParams {
    EtaMuParams shape;
    double omega = 1.0;  // channel variance E(|alpha|^2), linear scale

    LinkParams() = default;
    LinkParams(EtaMuParams s, double om) : shape(s), omega(om) {
        if (!(omega > 0.0)) throw std::domain_error("LinkParams: requires omega > 0");
    }
};

struct SnrPoint {
    double gbar = 1.0;  // average SNR per symbol, linear

    SnrPoint() = default;
    explicit SnrPoint(double g) : gbar(g) {
        if (!(gbar > 0.0)) throw std::domain_error("SnrPoint: requires gbar > 0");
    }
};

// Density of the instantaneous SNR at gamma >= 0.
double pdf_snr(double gamma, const LinkParams& link, SnrPoint snr);

// MGF M(s) = E[exp(-s*gamma)]
//          = (4 mu^2 h / ((2(h-H)mu + s*gbar)(2(h+H)mu + s*gbar)))^mu, s >= 0.
double mgf(const LinkParams& link, SnrPoint snr, double s);

// One draw of gamma from the Format-1 physical model (2*mu integer Gaussian
// cluster pairs with in-phase/quadrature variance ratio eta), scaled so that
// E(gamma) = snr.gbar.  Throws UnsupportedError for Format 2 or non-half-integer mu.
double sample_snr(const LinkParams& link, SnrPoint snr, RandomStream& rng);

// Squared channel gain |alpha|^2 with mean link.omega, same sampler model.
double sample_gain2(const LinkParams& link, RandomStream& rng);

// Amount of fading Var(gamma_MRC)/E(gamma_MRC)^2 of the MRC output when every
// relay decodes correctly; requires the relay->destination links to be i.i.d.
double amount_of_fading(const NetworkModel& network);

}  // namespace relayser

#endif
