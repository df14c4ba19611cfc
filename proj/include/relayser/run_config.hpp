#ifndef RELAYSER_RUN_CONFIG_HPP
#define RELAYSER_RUN_CONFIG_HPP

// JSON run configuration: network description (eta, mu, format, Omega in dB
// per hop), modulation, SNR sweep, method set, allocation mode and Monte
// Carlo settings.  The sweep variable is the total power budget P/N0 in dB.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "relayser/ser_engine.hpp"

namespace relayser {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct LinkSpec {
    double eta = 1.0;
    double mu = 0.5;
    int format = 1;        // 1 or 2
    double omega_db = 0.0; // channel variance in dB

    LinkParams to_link() const;
};

enum class AllocationMode { Epa, Opa, Explicit };

struct RunConfig {
    std::string description;

    double noise = 1.0;
    LinkSpec sd;
    std::vector<LinkSpec> sr, rd;

    Modulation modulation = Modulation::mpsk(4);

    double sweep_start_db = 0.0;
    double sweep_stop_db = 30.0;
    double sweep_step_db = 2.0;

    bool method_exact = true;
    bool method_asymptotic = false;
    bool method_mc = false;

    AllocationMode alloc_mode = AllocationMode::Epa;
    std::vector<double> explicit_alloc;  // a0 first, then relays

    std::int64_t mc_symbols = 1000000;
    std::uint64_t mc_seed = 1;
    std::int64_t mc_batch = 65536;
    int threads = 0;

    int relay_count() const { return static_cast<int>(sr.size()); }
    std::vector<double> sweep_points() const;
};

RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& json_text);

// Network at a given total-power budget (dB); Epa/Explicit resolve the
// allocation here, Opa starts from EPA and is optimized by the caller.
NetworkModel build_network(const RunConfig& cfg, double snr_db);

}  // namespace relayser

#endif
