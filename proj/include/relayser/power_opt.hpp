#ifndef RELAYSER_POWER_OPT_HPP
#define RELAYSER_POWER_OPT_HPP

// SER-minimizing power split across source and relays under a total-power
// constraint.  The objective is the asymptotic SER viewed as a posynomial in
// the allocation fractions (every term is coeff * a0^-e0 * prod ar_k^-ek,
// all exponents positive), which is convex on the simplex; projected gradient
// descent with a Barzilai-Borwein step and Armijo backtracking therefore finds
// the global minimum from the equal-power start.

#include <functional>
#include <vector>

#include "relayser/power_alloc.hpp"
#include "relayser/rng.hpp"
#include "relayser/ser_engine.hpp"

namespace relayser {

struct OpaReport {
    PowerAllocation allocation;
    double ser = 0.0;           // asymptotic SER at the returned allocation
    double kkt_residual = 0.0;  // normalized stationarity defect (inf if boundary)
    int iterations = 0;
    bool converged = false;
    bool boundary = false;      // some fraction collapsed below 1e-9
};

struct OptimizeOptions {
    int max_iterations = 100000;
    double grad_tol = 1e-10;        // projected-gradient-norm stop
    double rel_improve_tol = 1e-14; // relative objective-improvement stop
};

// Uniform 1/(K+1) split.
PowerAllocation epa(int k);

// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::vector<double> v);

OpaReport optimize_power(const NetworkModel& net, const Modulation& mod,
                         const OptimizeOptions& opts = {});

// max_k |dSER/da0 - dSER/da_k| / |dSER/da0| at an interior allocation.
double kkt_residual(const NetworkModel& net, const Modulation& mod,
                    const PowerAllocation& alloc);

// f and its gradient at a simplex point x = (a0, ar_1..ar_K).
using SimplexObjective =
    std::function<void(const std::vector<double>& x, double& f, std::vector<double>& grad)>;

// Finite-difference Hessian of `obj` restricted to the simplex tangent space,
// tested for positive semi-definiteness at `trials` random interior points.
bool simplex_hessian_psd(const SimplexObjective& obj, int dim, int trials, RandomStream& rng,
                         double tol_scale = 1e-6);

// PSD check of the asymptotic-SER objective for this network.
bool verify_convexity(const NetworkModel& net, const Modulation& mod, int trials,
                      RandomStream& rng);

}  // namespace relayser

#endif
