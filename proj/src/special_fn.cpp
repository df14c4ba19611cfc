#include "relayser/special_fn.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

#include "relayser/quadrature.hpp"

namespace relayser {
namespace {

constexpr double pi_v = 3.14159265358979323846;

// Lanczos approximation, g = 7, 9 terms (Godfrey's coefficients); relative
// error on the real axis is a few ulps past 1e-14.
constexpr double lanczos_g = 7.0;
constexpr double lanczos_c[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double log_gamma_lanczos(double z) {
    // valid for z >= 0.5
    double acc = lanczos_c[0];
    for (int i = 1; i < 9; ++i) acc += lanczos_c[i] / (z - 1.0 + i);
    double t = z + lanczos_g - 0.5;
    return 0.91893853320467274178 /* ln sqrt(2 pi) */
           + (z - 0.5) * std::log(t) - t + std::log(acc);
}

// One series evaluation of 2F1; reports convergence through `ok` and the
// magnitude of the last term through `tail`.
double gauss_series(double a, double b, double c, double x, bool& ok, double& tail) {
    const int max_iter = 200000;
    double term = 1.0, sum = 1.0;
    int small_streak = 0;
    for (int n = 0; n < max_iter; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
        sum += term;
        tail = std::fabs(term);
        if (term == 0.0) {  // terminating (polynomial) case
            ok = true;
            return sum;
        }
        // two consecutive small terms, so a single near-zero Pochhammer
        // factor (negative a or b crossing an integer) cannot end the sum
        small_streak = tail <= 1e-16 * std::fabs(sum) ? small_streak + 1 : 0;
        if (small_streak >= 2 && n > 2) {
            ok = true;
            return sum;
        }
    }
    ok = false;
    return sum;
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    if (x >= 0.5) return log_gamma_lanczos(x);
    // reflection keeps the Lanczos argument away from 0
    return std::log(pi_v / std::sin(pi_v * x)) - log_gamma_lanczos(1.0 - x);
}

double gauss_2f1(double a, double b, double c, double x) {
    if (!(c > 0.0)) throw std::domain_error("gauss_2f1: requires c > 0");
    if (!(x < 1.0)) throw std::domain_error("gauss_2f1: requires x < 1");
    if (x == 0.0) return 1.0;

    if (x < 0.0) {
        // Pfaff transformation maps x < 0 into (0,1)
        double y = x / (x - 1.0);
        return std::pow(1.0 - x, -a) * gauss_2f1(a, c - b, c, y);
    }

    bool ok = false;
    double value, tail = 0.0;
    if (x <= 0.5) {
        value = gauss_series(a, b, c, x, ok, tail);
    } else {
        // Euler transformation; for the closed forms used here it turns the
        // alternating series (negative numerator parameter) into an
        // all-positive one so the slow convergence near x -> 1 stays stable
        double s = gauss_series(c - a, c - b, c, x, ok, tail);
        double pref = std::pow(1.0 - x, c - a - b);
        value = pref * s;
        tail *= pref;
    }
    if (!ok) throw AccuracyError("gauss_2f1: series did not converge", value, tail);
    return value;
}

void FdArgs::validate() const {
    if (b.size() != x.size() || b.empty())
        throw std::invalid_argument("FdArgs: b and x must have equal nonzero length");
    if (!(a > 0.0)) throw std::domain_error("FdArgs: requires a > 0");
    if (!(c - a > 0.0)) throw std::domain_error("FdArgs: requires c > a");
    for (double xi : x)
        if (!(xi < 1.0)) throw std::domain_error("FdArgs: requires every x_i < 1");
}

double lauricella_fd(const FdArgs& args) {
    args.validate();
    const std::size_t n = args.x.size();
    const double p = args.a - 1.0;        // exponent of t
    const double q = args.c - args.a - 1.0;  // exponent of 1-t

    auto integrand = [&](double t, double omt) {
        double lg = p * std::log(t) + q * std::log(omt);
        for (std::size_t i = 0; i < n; ++i) {
            const double xi = args.x[i];
            // 1 - xi*t = (1-t) + t*(1-xi): both addends positive for xi in
            // (0,1), so no cancellation as xi*t -> 1
            double base = (xi > 0.0) ? omt + t * (1.0 - xi) : 1.0 - xi * t;
            lg -= args.b[i] * std::log(base);
        }
        return std::exp(lg);
    };

    quad::QuadratureOptions opts;
    opts.rel_tol = 1e-12;
    opts.max_level = 13;
    quad::QuadratureResult r = quad::tanh_sinh_01(integrand, opts);

    double log_prefactor = log_gamma(args.c) - log_gamma(args.a) - log_gamma(args.c - args.a);
    double value = std::exp(log_prefactor) * r.value;
    if (!r.converged) {
        double err = std::exp(log_prefactor) * r.error_estimate;
        if (err > 1e-9 * std::fabs(value))
            throw AccuracyError("lauricella_fd: quadrature above tolerance", value, err);
    }
    return value;
}

}  // namespace relayser
