#ifndef RELAYSER_POWER_ALLOC_HPP
#define RELAYSER_POWER_ALLOC_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace relayser {

// Fractions of the total power budget assigned to the source (a0) and to each
// relay; a point on the probability simplex.
struct PowerAllocation {
    double a0 = 1.0;
    std::vector<double> ar;

    int relay_count() const { return static_cast<int>(ar.size()); }

    void validate() const {
        double sum = a0;
        if (a0 < 0.0) throw std::domain_error("PowerAllocation: negative a0");
        for (double a : ar) {
            if (a < 0.0) throw std::domain_error("PowerAllocation: negative relay fraction");
            sum += a;
        }
        if (!(sum > 1.0 - 1e-12 && sum < 1.0 + 1e-12))
            throw std::domain_error("PowerAllocation: fractions must sum to 1");
    }
};

}  // namespace relayser

#endif
