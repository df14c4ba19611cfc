#ifndef RELAYSER_VALIDATE_HPP
#define RELAYSER_VALIDATE_HPP

// Self-validation suite: closed forms vs quadrature oracles, special-case
// fading reductions, moment identities, convexity, and (optionally) Monte
// Carlo corroboration at reduced sample counts.

#include <cstdint>
#include <string>
#include <vector>

#include "relayser/fading.hpp"

namespace relayser {

struct CheckResult {
    std::string name;
    double tolerance = 0.0;
    double observed = 0.0;  // measured error/deviation; pass iff observed <= tolerance
    bool pass = false;
};

struct ValidationOptions {
    bool with_mc = true;
    std::int64_t mc_symbols = 1000000;
    std::uint64_t mc_seed = 1;
};

std::vector<CheckResult> run_validation(const ValidationOptions& opts = {});

// Worst deviation of the eta-mu MGF from the classical closed form the given
// parameter set must collapse to (used by the validation suite, and by the
// fault-injection test that plants a wrong h constant).
double rayleigh_reduction_error(const EtaMuParams& p);
double hoyt_reduction_error(const EtaMuParams& p, double q);
double nakagami_reduction_error(const EtaMuParams& p, double m);

std::string format_report(const std::vector<CheckResult>& checks);

}  // namespace relayser

#endif
