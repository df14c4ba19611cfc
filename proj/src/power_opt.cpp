#include "relayser/power_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace relayser {
namespace {

struct Objective {
    std::vector<AsymptoticTerm> terms;
    int dim;  // K+1

    double value(const std::vector<double>& x) const {
        double total = 0.0;
        for (const auto& t : terms) {
            double lg = -t.a0_exponent * std::log(x[0]);
            for (const auto& [k, e] : t.relay_exponents) lg -= e * std::log(x[k + 1]);
            total += t.coeff * std::exp(lg);
        }
        return total;
    }

    void value_grad(const std::vector<double>& x, double& f, std::vector<double>& g) const {
        f = 0.0;
        g.assign(dim, 0.0);
        for (const auto& t : terms) {
            double lg = -t.a0_exponent * std::log(x[0]);
            for (const auto& [k, e] : t.relay_exponents) lg -= e * std::log(x[k + 1]);
            double v = t.coeff * std::exp(lg);
            f += v;
            g[0] -= t.a0_exponent * v / x[0];
            for (const auto& [k, e] : t.relay_exponents) g[k + 1] -= e * v / x[k + 1];
        }
    }
};

Objective make_objective(const NetworkModel& net, const Modulation& mod) {
    return {asymptotic_power_terms(net, mod), net.relay_count() + 1};
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Orthonormal (Helmert) basis of the simplex tangent space {v : sum v = 0}.
std::vector<std::vector<double>> tangent_basis(int dim) {
    std::vector<std::vector<double>> q;
    for (int j = 1; j < dim; ++j) {
        std::vector<double> v(dim, 0.0);
        double s = 1.0 / std::sqrt(j * (j + 1.0));
        for (int i = 0; i < j; ++i) v[i] = s;
        v[j] = -j * s;
        q.push_back(std::move(v));
    }
    return q;
}

// Jacobi eigenvalue sweep for a small symmetric matrix.
std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> a) {
    const int n = static_cast<int>(a.size());
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int i = 0; i < n; ++i) {
                    double aip = a[i][p], aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    double api = a[p][i], aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
            }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a[i][i];
    return ev;
}

PowerAllocation to_allocation(const std::vector<double>& x) {
    PowerAllocation a;
    a.a0 = x[0];
    a.ar.assign(x.begin() + 1, x.end());
    return a;
}

}  // namespace

PowerAllocation epa(int k) {
    if (k < 0) throw std::invalid_argument("epa: negative relay count");
    PowerAllocation a;
    a.a0 = 1.0 / (k + 1.0);
    a.ar.assign(k, 1.0 / (k + 1.0));
    return a;
}

std::vector<double> project_to_simplex(std::vector<double> v) {
    // Held-Wolfe-Crowder: threshold tau with sum(max(v - tau, 0)) = 1
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double acc = 0.0, tau = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        acc += u[i];
        double t = (acc - 1.0) / (i + 1.0);
        if (u[i] - t > 0.0) tau = t;
    }
    for (double& x : v) x = std::max(x - tau, 0.0);
    return v;
}

OpaReport optimize_power(const NetworkModel& net, const Modulation& mod,
                         const OptimizeOptions& opts) {
    const int K = net.relay_count();
    if (K < 1) throw std::invalid_argument("optimize_power: requires at least one relay");
    Objective obj = make_objective(net, mod);

    PowerAllocation start = epa(K);
    std::vector<double> x(K + 1);
    x[0] = start.a0;
    for (int k = 0; k < K; ++k) x[k + 1] = start.ar[k];

    // normalize so f(EPA) = 1: stopping thresholds become scale-free and the
    // argmin is untouched (terms can span hundreds of orders of magnitude
    // across SNR budgets)
    const double f_scale = obj.value(x);
    if (!(f_scale > 0.0) || !std::isfinite(f_scale))
        throw std::domain_error("optimize_power: objective not finite at EPA");
    for (auto& t : obj.terms) t.coeff /= f_scale;

    double f;
    std::vector<double> g;
    obj.value_grad(x, f, g);

    OpaReport report;
    double step = 1.0;
    std::vector<double> x_prev, g_prev;
    int it = 0;
    bool converged = false;
    for (; it < opts.max_iterations; ++it) {
        // projected-gradient residual
        std::vector<double> y(K + 1);
        for (int i = 0; i <= K; ++i) y[i] = x[i] - g[i];
        std::vector<double> px = project_to_simplex(y);
        double resid = 0.0;
        for (int i = 0; i <= K; ++i) resid += (x[i] - px[i]) * (x[i] - px[i]);
        resid = std::sqrt(resid);
        if (resid < opts.grad_tol) {
            converged = true;
            break;
        }

        if (!x_prev.empty()) {  // Barzilai-Borwein step from the last move
            double sy = 0.0, ss = 0.0;
            for (int i = 0; i <= K; ++i) {
                double dx = x[i] - x_prev[i], dg = g[i] - g_prev[i];
                sy += dx * dg;
                ss += dx * dx;
            }
            if (sy > 0.0) step = std::clamp(ss / sy, 1e-14, 1e14);
        }

        // Armijo backtracking along the projection arc
        double f_new = f;
        std::vector<double> x_new;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (int i = 0; i <= K; ++i) y[i] = x[i] - step * g[i];
            x_new = project_to_simplex(y);
            f_new = obj.value(x_new);
            double decrease = 0.0;
            for (int i = 0; i <= K; ++i) decrease += g[i] * (x_new[i] - x[i]);
            if (std::isfinite(f_new) && f_new <= f + 1e-4 * decrease) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // numerically stuck

        double improvement = (f - f_new) / std::max(f, std::numeric_limits<double>::min());
        x_prev = x;
        g_prev = g;
        x = x_new;
        obj.value_grad(x, f, g);
        if (improvement >= 0.0 && improvement < opts.rel_improve_tol) {
            converged = true;
            ++it;
            break;
        }
    }

    report.allocation = to_allocation(x);
    report.ser = std::min(1.0, std::max(0.0, f * f_scale));
    report.iterations = it;
    report.converged = converged;
    for (double v : x) report.boundary = report.boundary || v < 1e-9;
    if (report.boundary) {
        report.kkt_residual = std::numeric_limits<double>::infinity();
    } else {
        report.kkt_residual = kkt_residual(net, mod, report.allocation);
    }
    return report;
}

double kkt_residual(const NetworkModel& net, const Modulation& mod,
                    const PowerAllocation& alloc) {
    if (alloc.a0 <= 0.0) throw std::domain_error("kkt_residual: boundary allocation");
    for (double a : alloc.ar)
        if (a <= 0.0) throw std::domain_error("kkt_residual: boundary allocation");
    Objective obj = make_objective(net, mod);
    std::vector<double> x{alloc.a0};
    x.insert(x.end(), alloc.ar.begin(), alloc.ar.end());
    double f;
    std::vector<double> g;
    obj.value_grad(x, f, g);
    double worst = 0.0;
    for (std::size_t k = 1; k < g.size(); ++k)
        worst = std::max(worst, std::fabs(g[0] - g[k]));
    return worst / std::fabs(g[0]);
}

bool simplex_hessian_psd(const SimplexObjective& obj, int dim, int trials, RandomStream& rng,
                         double tol_scale) {
    auto basis = tangent_basis(dim);
    const int n = dim - 1;
    std::vector<double> gp, gm;
    double f;
    for (int trial = 0; trial < trials; ++trial) {
        // Dirichlet(1,...,1) interior point
        std::vector<double> x(dim);
        double s = 0.0;
        for (int i = 0; i < dim; ++i) {
            x[i] = -std::log(1.0 - rng.uniform());
            s += x[i];
        }
        double xmin = 1.0;
        for (int i = 0; i < dim; ++i) {
            x[i] /= s;
            xmin = std::min(xmin, x[i]);
        }
        if (xmin < 1e-3) {  // keep the FD stencil inside the simplex
            --trial;
            continue;
        }
        // The tangent Hessian can be nearly singular (one posynomial term
        // dominating), with lambda_min only ~1e-6 of the trace; a 5-point
        // stencil keeps the FD error a couple of orders below that.
        double eps = 3e-3 * xmin;

        std::vector<std::vector<double>> hcols(n);
        std::vector<double> gp2, gm2;
        for (int j = 0; j < n; ++j) {
            std::vector<double> xp = x, xm = x, xp2 = x, xm2 = x;
            for (int i = 0; i < dim; ++i) {
                xp[i] += eps * basis[j][i];
                xm[i] -= eps * basis[j][i];
                xp2[i] += 2.0 * eps * basis[j][i];
                xm2[i] -= 2.0 * eps * basis[j][i];
            }
            obj(xp, f, gp);
            obj(xm, f, gm);
            obj(xp2, f, gp2);
            obj(xm2, f, gm2);
            hcols[j].resize(dim);
            for (int i = 0; i < dim; ++i)
                hcols[j][i] =
                    (-gp2[i] + 8.0 * gp[i] - 8.0 * gm[i] + gm2[i]) / (12.0 * eps);
        }
        std::vector<std::vector<double>> ht(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) ht[i][j] = dot(basis[i], hcols[j]);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double m = 0.5 * (ht[i][j] + ht[j][i]);
                ht[i][j] = ht[j][i] = m;
            }

        double trace = 0.0;
        for (int i = 0; i < n; ++i) trace += ht[i][i];
        double scale = std::max(std::fabs(trace) / n, 1e-300);
        auto ev = symmetric_eigenvalues(ht);
        for (double e : ev)
            if (e < -tol_scale * scale) return false;
    }
    return true;
}

bool verify_convexity(const NetworkModel& net, const Modulation& mod, int trials,
                      RandomStream& rng) {
    if (net.relay_count() < 1)
        throw std::invalid_argument("verify_convexity: requires at least one relay");
    Objective obj = make_objective(net, mod);
    SimplexObjective fn = [&obj](const std::vector<double>& x, double& f,
                                 std::vector<double>& g) { obj.value_grad(x, f, g); };
    return simplex_hessian_psd(fn, net.relay_count() + 1, trials, rng);
}

}  // namespace relayser
