#include "relayser/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "relayser/fading.hpp"

namespace relayser {
namespace {

constexpr double two_pi = 6.28318530717958647692;

struct HopDraw {
    std::complex<double> alpha;
    double gain2;
};

// Envelope from the Format-1 cluster model, phase uniform: MRC with perfect
// CSI is insensitive to the absolute phase, so the power model fixes the
// envelope statistics and the phase merely randomizes the constellation
// rotation per hop.
HopDraw draw_hop(const LinkParams& link, RandomStream& rng) {
    double g2 = sample_gain2(link, rng);
    double phi = two_pi * rng.uniform();
    return {std::polar(std::sqrt(g2), phi), g2};
}

std::complex<double> draw_noise(double n0, RandomStream& rng) {
    double s = std::sqrt(0.5 * n0);
    return {s * rng.gaussian(), s * rng.gaussian()};
}

std::int64_t run_block(const NetworkModel& net, const Modulation& mod,
                       const std::vector<std::complex<double>>& points,
                       std::int64_t nsym, RandomStream rng) {
    const int K = net.relay_count();
    const int M = mod.m;
    const double p0 = net.allocation.a0 * net.total_power;
    std::vector<double> prk(K);
    for (int k = 0; k < K; ++k) prk[k] = net.allocation.ar[k] * net.total_power;
    const double n0 = net.noise;
    const double sqrt_p0 = std::sqrt(p0);

    std::int64_t errors = 0;
    std::vector<HopDraw> hsr(K), hrd(K);
    std::vector<std::complex<double>> nsr(K), nrd(K);
    for (std::int64_t i = 0; i < nsym; ++i) {
        int tx = static_cast<int>(rng.uniform_index(M));
        std::complex<double> x = points[tx];

        HopDraw hsd = draw_hop(net.sd, rng);
        for (int k = 0; k < K; ++k) hsr[k] = draw_hop(net.sr[k], rng);
        for (int k = 0; k < K; ++k) hrd[k] = draw_hop(net.rd[k], rng);
        std::complex<double> nsd = draw_noise(n0, rng);
        for (int k = 0; k < K; ++k) nsr[k] = draw_noise(n0, rng);
        for (int k = 0; k < K; ++k) nrd[k] = draw_noise(n0, rng);

        // phase I: broadcast
        std::complex<double> ysd = sqrt_p0 * hsd.alpha * x + nsd;

        // phase II: each relay detects; only correct ones retransmit
        // MRC combine with w = sqrt(P) conj(alpha) / N0 (silent relays have P = 0)
        std::complex<double> yd = sqrt_p0 * std::conj(hsd.alpha) / n0 * ysd;
        double gain = p0 * hsd.gain2 / n0;
        for (int k = 0; k < K; ++k) {
            std::complex<double> ysr = sqrt_p0 * hsr[k].alpha * x + nsr[k];
            std::complex<double> gsr = sqrt_p0 * hsr[k].alpha;
            int det = 0;
            double best = std::norm(ysr - gsr * points[0]);
            for (int m = 1; m < M; ++m) {
                double d = std::norm(ysr - gsr * points[m]);
                if (d < best) {
                    best = d;
                    det = m;
                }
            }
            if (det != tx) continue;
            double sqrt_pk = std::sqrt(prk[k]);
            std::complex<double> yrd = sqrt_pk * hrd[k].alpha * x + nrd[k];
            yd += sqrt_pk * std::conj(hrd[k].alpha) / n0 * yrd;
            gain += prk[k] * hrd[k].gain2 / n0;
        }

        int det = 0;
        double best = std::norm(yd - gain * points[0]);
        for (int m = 1; m < M; ++m) {
            double d = std::norm(yd - gain * points[m]);
            if (d < best) {
                best = d;
                det = m;
            }
        }
        if (det != tx) ++errors;
    }
    return errors;
}

}  // namespace

std::vector<std::complex<double>> constellation(const Modulation& mod) {
    std::vector<std::complex<double>> pts(mod.m);
    if (mod.scheme == Modulation::Scheme::Mpsk) {
        for (int m = 0; m < mod.m; ++m) pts[m] = std::polar(1.0, two_pi * m / mod.m);
        return pts;
    }
    const int root = static_cast<int>(std::llround(std::sqrt(static_cast<double>(mod.m))));
    const double scale = 1.0 / std::sqrt(2.0 * (mod.m - 1.0) / 3.0);  // unit average energy
    for (int i = 0; i < root; ++i)
        for (int q = 0; q < root; ++q)
            pts[i * root + q] = scale * std::complex<double>(2.0 * i - root + 1.0,
                                                             2.0 * q - root + 1.0);
    return pts;
}

int detect_symbol(std::complex<double> y, const std::vector<std::complex<double>>& points) {
    int best = 0;
    double bestd = std::norm(y - points[0]);
    for (std::size_t m = 1; m < points.size(); ++m) {
        double d = std::norm(y - points[m]);
        if (d < bestd) {
            bestd = d;
            best = static_cast<int>(m);
        }
    }
    return best;
}

int detect_symbol(std::complex<double> y, const Modulation& mod) {
    return detect_symbol(y, constellation(mod));
}

SimResult simulate_ser(const NetworkModel& net, const Modulation& mod, const SimConfig& cfg) {
    net.validate();
    if (cfg.symbols < 10000)
        throw std::invalid_argument("simulate_ser: requires at least 1e4 symbols");
    if (cfg.batch < 1) throw std::invalid_argument("simulate_ser: batch must be positive");

    // fail fast on sampler restrictions before spawning workers
    {
        RandomStream probe(0);
        (void)sample_gain2(net.sd, probe);
        for (int k = 0; k < net.relay_count(); ++k) {
            (void)sample_gain2(net.sr[k], probe);
            (void)sample_gain2(net.rd[k], probe);
        }
    }

    const auto points = constellation(mod);
    const std::int64_t nblocks = (cfg.symbols + cfg.batch - 1) / cfg.batch;
    unsigned nthreads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(nblocks));

    std::atomic<std::int64_t> next_block{0};
    std::atomic<std::int64_t> total_errors{0};
    auto worker = [&]() {
        for (;;) {
            std::int64_t b = next_block.fetch_add(1);
            if (b >= nblocks) return;
            std::int64_t lo = b * cfg.batch;
            std::int64_t n = std::min(cfg.batch, cfg.symbols - lo);
            total_errors += run_block(net, mod, points, n,
                                      RandomStream::derived(cfg.seed, static_cast<std::uint64_t>(b)));
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    SimResult res;
    res.n = cfg.symbols;
    res.errors = total_errors.load();
    res.ser_hat = static_cast<double>(res.errors) / static_cast<double>(res.n);
    res.std_err = std::sqrt(res.ser_hat * (1.0 - res.ser_hat) / static_cast<double>(res.n));
    return res;
}

}  // namespace relayser
