#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tlaw {

// Truncated formal power series with real coefficients. A series of order N
// stores the coefficients of z^0 .. z^{N-1}; every operation truncates to
// that window and never reads beyond index N-1 of any operand. Binary
// operations require equal orders.
//
// All operations are pure; values can be shared freely across threads.
class PowerSeries {
 public:
  // Zero series of the given order (order >= 1).
  explicit PowerSeries(std::size_t order);
  // Takes the coefficient vector as-is; its length is the order.
  explicit PowerSeries(std::vector<double> coeffs);

  static PowerSeries constant(double value, std::size_t order);
  // value * z^k
  static PowerSeries monomial(double value, std::size_t k, std::size_t order);

  std::size_t order() const noexcept { return coeffs_.size(); }
  double operator[](std::size_t k) const { return coeffs_[k]; }
  double& operator[](std::size_t k) { return coeffs_[k]; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

 private:
  std::vector<double> coeffs_;
};

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);  // Cauchy product
PowerSeries operator*(double s, const PowerSeries& a);
// Long division; requires b[0] != 0. The result r satisfies r*b == a up to
// truncation.
PowerSeries operator/(const PowerSeries& a, const PowerSeries& b);

// outer(inner(z)) by Horner's scheme. Requires inner[0] == 0 exactly, which
// makes the truncated result coefficient-correct. Substitutions with a
// nonzero inner constant term must be rewritten through exp/log identities
// (or compose_affine below) at the call site.
PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner);

// a(b0 + b1*z). The inner polynomial has degree one, so the composition of
// the truncated a is computed without any truncation loss, for any b0.
PowerSeries compose_affine(const PowerSeries& a, double b0, double b1);

PowerSeries exp(const PowerSeries& a);
// Requires a[0] > 0.
PowerSeries log(const PowerSeries& a);
// Coefficient k of the result is (k+1)*a[k+1]; the top coefficient is left 0.
PowerSeries derivative(const PowerSeries& a);
// Coefficient k of the result is a[k-1]/k with constant term 0; the top
// input coefficient falls outside the window and is dropped.
PowerSeries antiderivative(const PowerSeries& a);

// pgf of the c-thinning: coefficient j of the result is
// sum_k a_k C(k,j) c^j (1-c)^{k-j}, i.e. a(1-c+cz). Requires c in [0,1].
PowerSeries bernoulli_thin(const PowerSeries& a, double c);

// Horner evaluation of the truncated polynomial at z.
double evaluate(const PowerSeries& a, double z);

}  // namespace tlaw
