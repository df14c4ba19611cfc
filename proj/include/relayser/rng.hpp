#ifndef RELAYSER_RNG_HPP
#define RELAYSER_RNG_HPP

#include <cstdint>
#include <random>

namespace relayser {

// Deterministic random stream: mt19937_64 plus a hand-rolled Box-Muller, so
// the draw sequence does not depend on the standard library's (unspecified)
// normal_distribution implementation.  Parallel consumers derive independent
// streams from (base seed, stream index) via a splitmix64 mix.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream_index) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream_index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    static RandomStream derived(std::uint64_t base_seed, std::uint64_t stream_index) {
        return RandomStream(mix(base_seed, stream_index));
    }

    std::uint64_t next_u64() { return gen_(); }

    // uniform in [0,1), 53-bit resolution
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, m)
    std::uint32_t uniform_index(std::uint32_t m) {
        return static_cast<std::uint32_t>(uniform() * m) % m;
    }

    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform();  // (0,1], keeps log finite
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.28318530717958647692 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace relayser

#endif
