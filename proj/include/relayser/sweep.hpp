#ifndef RELAYSER_SWEEP_HPP
#define RELAYSER_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include "relayser/run_config.hpp"

namespace relayser {

struct SweepRow {
    double snr_db = 0.0;
    std::optional<double> ser_exact;
    std::optional<double> ser_asymptotic;
    std::optional<double> ser_mc;
    std::optional<double> mc_stderr;
    std::vector<double> allocation;  // a0 first
};

struct SweepNotices {
    bool mc_skipped = false;
    std::string reason;
};

// One row per sweep point for each requested method.  Analytic-only sweeps
// are evaluated concurrently across points; rows come back ordered by SNR.
// Monte Carlo seeds are derived per point, so output is thread-count
// independent.  If the sampler cannot model the configured fading (Format 2
// or non-half-integer mu), the mc method is skipped with a notice.
std::vector<SweepRow> run_sweep(const RunConfig& cfg, SweepNotices* notices = nullptr);

// CSV with a stable schema: header row, fixed column order, full-precision
// floats, empty cells for absent methods.
std::string sweep_to_csv(const std::vector<SweepRow>& rows, int relay_count);

struct OpaRow {
    double snr_db = 0.0;
    double ser_exact_epa = 0.0;
    double ser_exact_opa = 0.0;
    double ser_asym_epa = 0.0;
    double ser_asym_opa = 0.0;
    double kkt_residual = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> allocation;
};

std::vector<OpaRow> run_opa_sweep(const RunConfig& cfg);
std::string opa_to_csv(const std::vector<OpaRow>& rows, int relay_count);

}  // namespace relayser

#endif
