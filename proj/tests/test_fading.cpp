#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "relayser/fading.hpp"
#include "relayser/power_opt.hpp"
#include "relayser/quadrature.hpp"
#include "relayser/ser_engine.hpp"

using namespace relayser;

namespace {

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

// Int_0^inf f(gamma) dgamma via gamma = scale * t/(1-t)
double integrate_halfline(const std::function<double(double)>& f, double scale) {
    auto g = [&](double t, double omt) {
        double gamma = scale * t / omt;
        return f(gamma) * scale / (omt * omt);
    };
    return quad::tanh_sinh_01(g).value;
}

NetworkModel symmetric_network(int k, const EtaMuParams& shape, double power) {
    NetworkModel net;
    net.sd = LinkParams(shape, 1.0);
    net.sr.assign(k, LinkParams(shape, 1.0));
    net.rd.assign(k, LinkParams(shape, 1.0));
    net.noise = 1.0;
    net.total_power = power;
    net.allocation = epa(k);
    return net;
}

// AoF of the all-decode MRC output from finite-difference moments of the MGF
// product (5-point central stencils at s = 0).
double aof_moment_oracle(const NetworkModel& net) {
    auto mgf_product = [&](double s) {
        double v = mgf(net.sd, SnrPoint(net.gbar_sd()), s);
        for (int k = 0; k < net.relay_count(); ++k)
            v *= mgf(net.rd[k], SnrPoint(net.gbar_rd(k)), s);
        return v;
    };
    double gmax = net.gbar_sd();
    for (int k = 0; k < net.relay_count(); ++k) gmax = std::max(gmax, net.gbar_rd(k));
    const double h = 1e-4 / gmax;
    const double fm2 = mgf_product(-2 * h), fm1 = mgf_product(-h), f0 = mgf_product(0.0),
                 fp1 = mgf_product(h), fp2 = mgf_product(2 * h);
    double m1 = -(-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h);
    double m2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
    return (m2 - m1 * m1) / (m1 * m1);
}

}  // namespace

TEST_CASE("hH_from_eta: pinned values and domains") {
    auto [h1, H1] = hH_from_eta(1.0, 0.5, EtaMuFormat::Format1);
    CHECK(h1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(H1 == doctest::Approx(0.0).epsilon(1e-15));

    auto [h2, H2] = hH_from_eta(0.5, 1.0, EtaMuFormat::Format1);
    CHECK(h2 == doctest::Approx(1.125).epsilon(1e-15));
    CHECK(H2 == doctest::Approx(0.375).epsilon(1e-15));

    auto [h3, H3] = hH_from_eta(0.0, 0.5, EtaMuFormat::Format2);
    CHECK(h3 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(H3 == doctest::Approx(0.0).epsilon(1e-15));

    CHECK_THROWS_AS(hH_from_eta(-0.1, 0.5, EtaMuFormat::Format1), std::domain_error);
    CHECK_THROWS_AS(hH_from_eta(1.0, 0.5, EtaMuFormat::Format2), std::domain_error);
    CHECK_THROWS_AS(hH_from_eta(0.5, 0.0, EtaMuFormat::Format1), std::domain_error);
}

TEST_CASE("eta-mu constants satisfy h^2 - H^2 = h in both formats") {
    for (double eta : {0.05, 0.3, 1.0, 2.0, 7.5}) {
        auto p = EtaMuParams::format1(eta, 1.0);
        CHECK(rel_err(p.h * p.h - p.H * p.H, p.h) < 1e-14);
        CHECK(p.h > std::fabs(p.H));
    }
    for (double eta : {-0.9, -0.2, 0.0, 0.4, 0.95}) {
        auto p = EtaMuParams::format2(eta, 1.0);
        CHECK(rel_err(p.h * p.h - p.H * p.H, p.h) < 1e-13);
        CHECK(p.h > std::fabs(p.H));
    }
}

TEST_CASE("pdf_snr: normalization, mean, Rayleigh limit") {
    for (auto shape : {EtaMuParams::format1(0.3, 0.5), EtaMuParams::format1(0.8, 1.5),
                       EtaMuParams::format2(0.4, 1.0)}) {
        LinkParams link(shape, 1.0);
        for (double gbar : {0.7, 10.0}) {
            SnrPoint snr(gbar);
            double z = integrate_halfline([&](double g) { return pdf_snr(g, link, snr); }, gbar);
            CHECK(std::fabs(z - 1.0) < 1e-8);
            double mean =
                integrate_halfline([&](double g) { return g * pdf_snr(g, link, snr); }, gbar);
            CHECK(rel_err(mean, gbar) < 1e-7);
        }
    }

    LinkParams ray(EtaMuParams::format1(1.0 - 1e-9, 0.5), 1.0);
    for (double g : {0.1, 1.0, 3.0})
        CHECK(std::fabs(pdf_snr(g, ray, SnrPoint(1.0)) - std::exp(-g)) < 1e-6);

    CHECK_THROWS_AS(pdf_snr(-0.1, ray, SnrPoint(1.0)), std::domain_error);
}

TEST_CASE("pdf_snr: large-argument Bessel branch stays smooth") {
    // gamma far above gbar pushes 2 mu H gamma / gbar beyond the series range
    LinkParams link(EtaMuParams::format1(0.2, 1.0), 1.0);
    SnrPoint snr(0.05);
    double prev = pdf_snr(2.0, link, snr);
    for (double g = 2.1; g < 6.0; g += 0.1) {
        double v = pdf_snr(g, link, snr);
        CHECK(v > 0.0);
        CHECK(v < prev);  // deep in the exponential tail
        prev = v;
    }
    double z = integrate_halfline([&](double g) { return pdf_snr(g, link, snr); }, 0.05);
    CHECK(std::fabs(z - 1.0) < 1e-8);
}

TEST_CASE("mgf: pinned values") {
    LinkParams ray(EtaMuParams::format1(1.0, 0.5), 1.0);
    CHECK(mgf(ray, SnrPoint(3.0), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rel_err(mgf(ray, SnrPoint(9.0), 1.0), 0.1) < 1e-13);  // Rayleigh: 1/(1+s*gbar)

    LinkParams lk(EtaMuParams::format1(0.5, 1.0), 1.0);
    CHECK(rel_err(mgf(lk, SnrPoint(1.0), 1.0), 0.45) < 1e-13);
}

TEST_CASE("mgf: monotone in s, first-moment identity") {
    for (auto shape : {EtaMuParams::format1(0.25, 0.5), EtaMuParams::format1(2.0, 1.5),
                       EtaMuParams::format2(-0.6, 1.0)}) {
        LinkParams link(shape, 1.0);
        for (double gbar : {0.4, 5.0, 80.0}) {
            SnrPoint snr(gbar);
            double prev = 1.0;
            for (double s : {1e-3, 1e-2, 0.1, 1.0, 10.0, 1e3}) {
                double v = mgf(link, snr, s);
                CHECK(v > 0.0);
                CHECK(v < prev);
                prev = v;
            }
            double h = 1e-6 / gbar;
            double d = (mgf(link, snr, h) - mgf(link, snr, -h)) / (2.0 * h);
            CHECK(rel_err(-d, gbar) < 1e-4);
        }
    }
}

TEST_CASE("mgf: collapses to Rayleigh, Hoyt and Nakagami-m closed forms") {
    for (double sg : {0.1, 1.0, 9.0, 40.0}) {
        double gbar = 2.0, s = sg / gbar;

        LinkParams ray(EtaMuParams::format1(1.0, 0.5), 1.0);
        CHECK(rel_err(mgf(ray, SnrPoint(gbar), s), 1.0 / (1.0 + sg)) < 1e-6);

        for (double q : {0.3, 0.7}) {  // Hoyt: mu = 1/2, eta = q^2
            LinkParams hoyt(EtaMuParams::format1(q * q, 0.5), 1.0);
            double want = 1.0 / std::sqrt(1.0 + 2.0 * sg +
                                          sg * sg * 4.0 * q * q / ((1.0 + q * q) * (1.0 + q * q)));
            CHECK(rel_err(mgf(hoyt, SnrPoint(gbar), s), want) < 1e-6);
        }

        for (double m : {1.0, 2.0, 3.0}) {  // Nakagami-m: mu = m/2, eta -> 1
            LinkParams nak(EtaMuParams::format1(1.0 - 1e-9, m / 2.0), 1.0);
            CHECK(rel_err(mgf(nak, SnrPoint(gbar), s), std::pow(1.0 + sg / m, -m)) < 1e-6);
        }
    }
}

TEST_CASE("sample_snr: Rayleigh KS distance, moments, determinism") {
    LinkParams ray(EtaMuParams::format1(1.0, 0.5), 1.0);
    SnrPoint snr(2.5);
    const int n = 1000000;

    RandomStream rng(20240817);
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = sample_snr(ray, snr, rng);
    std::sort(xs.begin(), xs.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        double f = 1.0 - std::exp(-xs[i] / snr.gbar);
        ks = std::max(ks, std::fabs((i + 1.0) / n - f));
        ks = std::max(ks, std::fabs(f - static_cast<double>(i) / n));
    }
    CHECK(ks < 0.002);

    LinkParams lk(EtaMuParams::format1(0.3, 1.0), 1.0);
    SnrPoint s2(4.0);
    RandomStream rng2(7);
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double v = sample_snr(lk, s2, rng2);
        sum += v;
        sum2 += v * v;
    }
    double mean = sum / n, var = sum2 / n - mean * mean;
    double hoh = lk.shape.H / lk.shape.h;
    double want_var = s2.gbar * s2.gbar * (1.0 + hoh * hoh) / (2.0 * lk.shape.mu);
    CHECK(rel_err(mean, s2.gbar) < 0.005);
    CHECK(rel_err(var, want_var) < 0.01);

    RandomStream a(99), b(99);
    for (int i = 0; i < 100; ++i) CHECK(sample_snr(lk, s2, a) == sample_snr(lk, s2, b));

    RandomStream r(1);
    CHECK_THROWS_AS(sample_snr(LinkParams(EtaMuParams::format1(1.0, 0.7), 1.0), snr, r),
                    UnsupportedError);
    CHECK_THROWS_AS(sample_snr(LinkParams(EtaMuParams::format2(0.0, 0.5), 1.0), snr, r),
                    UnsupportedError);
}

TEST_CASE("amount_of_fading: closed cases") {
    for (double mu : {0.5, 1.0, 2.0}) {
        NetworkModel net = symmetric_network(0, EtaMuParams::format1(1.0, mu), 4.0);
        CHECK(rel_err(amount_of_fading(net), 1.0 / (2.0 * mu)) < 1e-9);
    }

    NetworkModel k1 = symmetric_network(1, EtaMuParams::format1(1.0, 0.5), 4.0);
    CHECK(rel_err(amount_of_fading(k1), 0.5) < 1e-9);

    double prev = amount_of_fading(symmetric_network(0, EtaMuParams::format1(0.4, 1.0), 4.0));
    for (int k : {1, 2, 3}) {
        double v = amount_of_fading(symmetric_network(k, EtaMuParams::format1(0.4, 1.0), 4.0));
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("amount_of_fading: matches the MGF moment oracle") {
    for (int k : {1, 2, 3}) {
        for (auto sd_shape : {EtaMuParams::format1(0.3, 1.0), EtaMuParams::format1(1.4, 0.5)}) {
            NetworkModel net;
            net.sd = LinkParams(sd_shape, 1.3);
            net.sr.assign(k, LinkParams(EtaMuParams::format1(0.7, 1.0), 1.0));
            net.rd.assign(k, LinkParams(EtaMuParams::format1(0.7, 1.5), 0.8));
            net.noise = 1.0;
            net.total_power = 2.0;
            net.allocation = epa(k);
            CHECK(rel_err(amount_of_fading(net), aof_moment_oracle(net)) < 1e-6);
        }
    }
}

TEST_CASE("amount_of_fading: rejects non-identical relay links") {
    NetworkModel net = symmetric_network(2, EtaMuParams::format1(0.5, 1.0), 4.0);
    net.rd[1] = LinkParams(EtaMuParams::format1(0.5, 1.5), 1.0);
    CHECK_THROWS_AS(amount_of_fading(net), UnsupportedError);
}
