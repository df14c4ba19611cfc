#ifndef RELAYSER_MONTE_CARLO_HPP
#define RELAYSER_MONTE_CARLO_HPP

// Signal-level simulator of the cooperative link: source broadcast, per-relay
// coherent ML detection, decode-and-forward retransmission, MRC combining and
// minimum-distance detection at the destination.  This is the independent
// oracle for every analytic SER result.
//
// Reproducibility: work is split into fixed-size symbol blocks; block b draws
// from a stream seeded with mix(seed, b), so results are bit-identical for a
// given seed regardless of thread count.

#include <complex>
#include <cstdint>
#include <vector>

#include "relayser/ser_engine.hpp"

namespace relayser {

struct SimConfig {
    std::int64_t symbols = 1000000;  // >= 1e4
    std::uint64_t seed = 1;
    std::int64_t batch = 65536;      // symbols per block
    int threads = 0;                 // 0 = hardware concurrency
};

struct SimResult {
    double ser_hat = 0.0;
    double std_err = 0.0;       // binomial sqrt(p(1-p)/n)
    std::int64_t n = 0;
    std::int64_t errors = 0;
};

// Unit-average-energy constellation: M-PSK ring or square M-QAM grid.
std::vector<std::complex<double>> constellation(const Modulation& mod);

// Index of the nearest constellation point; ties break to the lowest index.
int detect_symbol(std::complex<double> y, const std::vector<std::complex<double>>& points);
int detect_symbol(std::complex<double> y, const Modulation& mod);

SimResult simulate_ser(const NetworkModel& net, const Modulation& mod, const SimConfig& cfg);

}  // namespace relayser

#endif
