#pragma once

#include <functional>

namespace tlaw {

// Regularized incomplete gamma functions, P(a,x) = gamma(a,x)/Gamma(a) and
// Q(a,x) = 1 - P(a,x), for a > 0, x >= 0.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// CDF of Gamma(shape, scale) at x.
double gamma_cdf(double x, double shape, double scale);

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol);

struct MinResult {
  double arg;
  double value;
};

// Golden-section minimization of a unimodal f on [a, b]; tol is on the
// argument.
MinResult minimize_golden(const std::function<double(double)>& f, double a,
                          double b, double tol);

// Bisection root of f on [a, b]; f(a) and f(b) must bracket a sign change.
double bisect(const std::function<double(double)>& f, double a, double b,
              double tol);

}  // namespace tlaw
