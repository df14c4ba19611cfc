#ifndef RELAYSER_SER_ENGINE_HPP
#define RELAYSER_SER_ENGINE_HPP

// Exact and asymptotic end-to-end symbol-error rates of a K-relay
// decode-and-forward link with MRC reception at the destination, over
// independent (generally non-identical) eta-mu hops, for M-PSK and square
// M-QAM.
//
// The end-to-end SER is assembled by enumerating the 2^K relay decoding sets:
//
//   SER = sum_z P(error | decoding set z) * P(decoding set z)
//
// with P(decoding set z) a product of per-relay decode/fail probabilities on
// the source->relay hops.  Each conditional error probability is an MGF-type
// angle integral evaluated on two routes: a Lauricella F_D closed form (the
// default) and direct quadrature of the defining integral (the oracle, and
// the fallback if the closed form cannot meet its accuracy target).

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "relayser/fading.hpp"
#include "relayser/power_alloc.hpp"

namespace relayser {

struct Modulation {
    enum class Scheme { Mpsk, Mqam };

    Scheme scheme = Scheme::Mpsk;
    int m = 2;           // constellation order
    double g = 1.0;      // sin^2(pi/M) for PSK, 3/(2(M-1)) for QAM
    double cqam = 0.0;   // 1 - 1/sqrt(M), QAM only

    static Modulation mpsk(int m);
    static Modulation mqam(int m);  // requires square m >= 4
};

// Bit k set <=> relay k decoded the source symbol correctly.
struct DecodingSet {
    std::uint32_t bits = 0;

    bool decoded(int k) const { return (bits >> k) & 1u; }
    int active_count() const { return std::popcount(bits); }
};

enum class SerMethod { ExactClosedForm, ExactQuadrature, Asymptotic };

struct SerResult {
    double value = 0.0;  // clamped to [0,1]
    SerMethod method = SerMethod::ExactClosedForm;
};

struct NetworkModel {
    LinkParams sd;                // source -> destination
    std::vector<LinkParams> sr;   // source -> relay k
    std::vector<LinkParams> rd;   // relay k -> destination
    double noise = 1.0;           // N0
    double total_power = 1.0;     // P
    PowerAllocation allocation;   // (a0, a_R1..a_RK)

    int relay_count() const { return static_cast<int>(sr.size()); }
    void validate() const;

    // Per-hop average SNRs; source power feeds both S->D and S->R_k.
    double gbar_sd() const { return allocation.a0 * total_power * sd.omega / noise; }
    double gbar_sr(int k) const { return allocation.a0 * total_power * sr[k].omega / noise; }
    double gbar_rd(int k) const { return allocation.ar[k] * total_power * rd[k].omega / noise; }
};

// MGF of the MRC output SNR for a given decoding set: the S->D factor times
// the R_k->D factors of the relays that decoded (empty product = 1).
double mrc_mgf(const NetworkModel& net, DecodingSet cz, double s);

struct CondError {
    double value = 0.0;
    SerMethod method = SerMethod::ExactClosedForm;
};

// P(destination error | decoding set), closed form with quadrature fallback.
CondError cond_error_mpsk(const NetworkModel& net, DecodingSet cz, const Modulation& mod);
CondError cond_error_mqam(const NetworkModel& net, DecodingSet cz, const Modulation& mod);
CondError cond_error(const NetworkModel& net, DecodingSet cz, const Modulation& mod);

// Direct tanh-sinh integration of the defining angle integral (oracle route).
double cond_error_quadrature(const NetworkModel& net, DecodingSet cz, const Modulation& mod);

// Selects between the fully general closed form and the collapsed variant for
// identically distributed active relay hops (Auto picks the latter when valid).
enum class ClosedFormPath { Auto, General, IidCollapsed };
double cond_error_closed_form(const NetworkModel& net, DecodingSet cz, const Modulation& mod,
                              ClosedFormPath path = ClosedFormPath::Auto);

// Per-relay decode-error probability P(A(k) = 0) on the S->R_k hop.
CondError relay_decode_error(const LinkParams& link_sr, SnrPoint snr, const Modulation& mod);
double relay_decode_error_closed_form(const LinkParams& link_sr, SnrPoint snr,
                                      const Modulation& mod);
double relay_decode_error_quadrature(const LinkParams& link_sr, SnrPoint snr,
                                     const Modulation& mod);

// Full decoding-set enumeration with exact relay decode probabilities.
SerResult end_to_end_ser(const NetworkModel& net, const Modulation& mod);

// High-SNR angle coefficient A(nu) = (1/pi) Int sin^(4 nu) theta dtheta over the
// modulation's error angle range (two-term Gamma/2F1 closed form).
double angle_coeff(double nu, const Modulation& mod);

// A_{R_k,D}(C_z): mus[0] is mu_{S,D}, mus[1+k] is mu_{R_k,D}.
double a_coeff_relay_dest(DecodingSet cz, const std::vector<double>& mus, const Modulation& mod);

// A_{S,R_k}
double a_coeff_source_relay(double mu_sr, const Modulation& mod);

// One additive term of the asymptotic SER viewed as a function of the power
// allocation: coeff * a0^(-a0_exponent) * prod_k ar[k]^(-exp_k).
struct AsymptoticTerm {
    double coeff = 0.0;
    double a0_exponent = 0.0;
    std::vector<std::pair<int, double>> relay_exponents;
};

std::vector<AsymptoticTerm> asymptotic_power_terms(const NetworkModel& net,
                                                   const Modulation& mod);

double asymptotic_ser_at(const std::vector<AsymptoticTerm>& terms,
                         const PowerAllocation& alloc);

// High-SNR approximation of the end-to-end SER, clamped to [0,1].
SerResult asymptotic_ser(const NetworkModel& net, const Modulation& mod);

}  // namespace relayser

#endif
