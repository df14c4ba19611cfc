#ifndef RELAYSER_SPECIAL_FN_HPP
#define RELAYSER_SPECIAL_FN_HPP

// Gauss hypergeometric 2F1 and the Lauricella function of the fourth kind,
// F_D^(n), restricted to the real convergence region used by the SER closed
// forms: c > a > 0 and every argument x_i < 1.  F_D is evaluated through its
// Euler-type integral
//
//   F_D^(n)(a; b_1..b_n; c; x_1..x_n)
//     = Gamma(c)/(Gamma(a)Gamma(c-a)) *
//       Int_0^1 t^(a-1) (1-t)^(c-a-1) Prod_i (1 - x_i t)^(-b_i) dt
//
// with tanh-sinh quadrature, which tolerates the endpoint singularities that
// appear when a < 1 or c-a < 1 and the steep integrands when some x_i -> 1.

#include <stdexcept>
#include <string>
#include <vector>

namespace relayser {

// Thrown when an iterative/numerical scheme cannot meet its accuracy target;
// carries the best value computed so far.
class AccuracyError : public std::runtime_error {
  public:
    AccuracyError(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_(best_estimate), err_(error_estimate) {}
    double best_estimate() const { return best_; }
    double error_estimate() const { return err_; }

  private:
    double best_;
    double err_;
};

// ln Gamma(x) for x > 0, relative error below 1e-13.
double log_gamma(double x);

// 2F1(a,b;c;x) for real parameters, c > 0, x < 1.
double gauss_2f1(double a, double b, double c, double x);

struct FdArgs {
    double a = 0.0;          // outer numerator parameter, a > 0
    std::vector<double> b;   // per-variable numerator parameters
    double c = 0.0;          // denominator parameter, c > a
    std::vector<double> x;   // arguments, each < 1

    void validate() const;   // throws std::domain_error / std::invalid_argument
};

// F_D^(n) over the convergence region above; relative accuracy target 1e-9.
double lauricella_fd(const FdArgs& args);

}  // namespace relayser

#endif
