#include "tlaw/power_series.hpp"

#include <cmath>
#include <string>

#include "tlaw/errors.hpp"

namespace tlaw {

namespace {

void check_same_order(const PowerSeries& a, const PowerSeries& b,
                      const char* op) {
  if (a.order() != b.order()) {
    throw DomainError(std::string(op) + ": mismatched orders " +
                      std::to_string(a.order()) + " and " +
                      std::to_string(b.order()));
  }
}

}  // namespace

PowerSeries::PowerSeries(std::size_t order) : coeffs_(order, 0.0) {
  if (order == 0) throw DomainError("PowerSeries: order must be >= 1");
}

PowerSeries::PowerSeries(std::vector<double> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("PowerSeries: order must be >= 1");
}

PowerSeries PowerSeries::constant(double value, std::size_t order) {
  PowerSeries s(order);
  s[0] = value;
  return s;
}

PowerSeries PowerSeries::monomial(double value, std::size_t k,
                                  std::size_t order) {
  PowerSeries s(order);
  if (k >= order) {
    throw DomainError("monomial: exponent " + std::to_string(k) +
                      " outside order " + std::to_string(order));
  }
  s[k] = value;
  return s;
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  check_same_order(a, b, "add");
  PowerSeries r(a.order());
  for (std::size_t k = 0; k < a.order(); ++k) r[k] = a[k] + b[k];
  return r;
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
  check_same_order(a, b, "subtract");
  PowerSeries r(a.order());
  for (std::size_t k = 0; k < a.order(); ++k) r[k] = a[k] - b[k];
  return r;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  check_same_order(a, b, "multiply");
  const std::size_t n = a.order();
  PowerSeries r(n);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= k; ++j) acc += a[j] * b[k - j];
    r[k] = acc;
  }
  return r;
}

PowerSeries operator*(double s, const PowerSeries& a) {
  PowerSeries r(a.order());
  for (std::size_t k = 0; k < a.order(); ++k) r[k] = s * a[k];
  return r;
}

PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) {
  check_same_order(a, b, "divide");
  if (b[0] == 0.0) {
    throw DomainError("divide: divisor has zero constant term");
  }
  const std::size_t n = a.order();
  PowerSeries r(n);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = a[k];
    for (std::size_t j = 1; j <= k; ++j) acc -= b[j] * r[k - j];
    r[k] = acc / b[0];
  }
  return r;
}

PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner) {
  check_same_order(outer, inner, "compose");
  if (inner[0] != 0.0) {
    throw DomainError(
        "compose: inner constant term must be exactly 0 (rewrite the "
        "substitution through exp/log identities or compose_affine)");
  }
  const std::size_t n = outer.order();
  PowerSeries r = PowerSeries::constant(outer[n - 1], n);
  for (std::size_t k = n - 1; k-- > 0;) {
    r = r * inner;
    r[0] += outer[k];
  }
  return r;
}

PowerSeries compose_affine(const PowerSeries& a, double b0, double b1) {
  const std::size_t n = a.order();
  PowerSeries r = PowerSeries::constant(a[n - 1], n);
  for (std::size_t k = n - 1; k-- > 0;) {
    // r <- r*(b0 + b1 z) + a_k, degree grows by one per step so nothing is
    // lost to truncation.
    PowerSeries next(n);
    next[0] = r[0] * b0 + a[k];
    for (std::size_t j = 1; j < n; ++j) next[j] = r[j] * b0 + r[j - 1] * b1;
    r = std::move(next);
  }
  return r;
}

PowerSeries exp(const PowerSeries& a) {
  // r' = a' r gives k r_k = sum_{j=1..k} j a_j r_{k-j}.
  const std::size_t n = a.order();
  PowerSeries r(n);
  r[0] = std::exp(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      acc += static_cast<double>(j) * a[j] * r[k - j];
    }
    r[k] = acc / static_cast<double>(k);
  }
  return r;
}

PowerSeries log(const PowerSeries& a) {
  if (!(a[0] > 0.0)) {
    throw DomainError("log: constant term must be positive");
  }
  // a = exp(l) gives k a_k = sum_{j=1..k} j l_j a_{k-j}, solved for l_k.
  const std::size_t n = a.order();
  PowerSeries l(n);
  l[0] = std::log(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double acc = static_cast<double>(k) * a[k];
    for (std::size_t j = 1; j < k; ++j) {
      acc -= static_cast<double>(j) * l[j] * a[k - j];
    }
    l[k] = acc / (static_cast<double>(k) * a[0]);
  }
  return l;
}

PowerSeries derivative(const PowerSeries& a) {
  const std::size_t n = a.order();
  PowerSeries r(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    r[k] = static_cast<double>(k + 1) * a[k + 1];
  }
  return r;
}

PowerSeries antiderivative(const PowerSeries& a) {
  const std::size_t n = a.order();
  PowerSeries r(n);
  for (std::size_t k = 1; k < n; ++k) {
    r[k] = a[k - 1] / static_cast<double>(k);
  }
  return r;
}

PowerSeries bernoulli_thin(const PowerSeries& a, double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw DomainError("bernoulli_thin: c must be in [0,1]");
  }
  return compose_affine(a, 1.0 - c, c);
}

double evaluate(const PowerSeries& a, double z) {
  double acc = 0.0;
  for (std::size_t k = a.order(); k-- > 0;) acc = acc * z + a[k];
  return acc;
}

}  // namespace tlaw
