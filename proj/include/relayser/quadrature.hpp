#ifndef RELAYSER_QUADRATURE_HPP
#define RELAYSER_QUADRATURE_HPP

// Tanh-sinh (double-exponential) quadrature with successive level refinement.
//
// The substitution t = 1/(1 + exp(-pi*sinh(u))) maps (0,1) to the real line and
// pushes the quadrature nodes double-exponentially fast into the endpoints, so
// integrable algebraic singularities at t=0 or t=1 (t^{p-1}, (1-t)^{q-1} with
// p,q > 0) are absorbed by the decaying weights.  Refinement halves the step
// and reuses all previous evaluations.
//
// References:
//  - Takahasi, Mori, "Double exponential formulas for numerical integration",
//    Publ. RIMS Kyoto (1974).
//  - Bailey, Jeyabalan, Li, "A comparison of three high-precision quadrature
//    schemes", Experimental Mathematics 14.3 (2005).

#include <functional>

namespace relayser::quad {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // |last refinement delta|
    int levels = 0;               // refinement levels actually used
    bool converged = false;
};

struct QuadratureOptions {
    double rel_tol = 1e-12;
    int max_level = 12;
};

// Integral over (0,1).  The integrand receives both t and 1-t so that factors
// like (1-t)^(q-1) or 1-x*t with x near 1 can be formed without cancellation.
QuadratureResult tanh_sinh_01(const std::function<double(double t, double one_minus_t)>& f,
                              const QuadratureOptions& opts = {});

// Integral over a finite interval [a,b] (integrand evaluated strictly inside).
QuadratureResult tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

}  // namespace relayser::quad

#endif
