#include "tlaw/mcstats.hpp"

#include <algorithm>
#include <cmath>

#include "tlaw/errors.hpp"

namespace tlaw {

namespace {

EstimateCI make_ci(double point, double se, std::size_t n) {
  return {point, se, point - 1.96 * se, point + 1.96 * se, n};
}

}  // namespace

MomentsEstimate empirical_moments(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 4) throw DomainError("empirical_moments: need at least 4 samples");
  const double dn = static_cast<double>(n);
  double sum = 0.0;
  for (const double x : xs) sum += x;
  const double mean = sum / dn;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (const double x : xs) {
    const double d = x - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= dn;
  m4 /= dn;
  const double var_unbiased = m2 * dn / (dn - 1.0);
  const double se_mean = std::sqrt(std::max(0.0, m2 / (dn - 1.0)));
  const double var_of_var =
      std::max(0.0, (m4 - m2 * m2 * (dn - 3.0) / (dn - 1.0)) / dn);
  return {make_ci(mean, se_mean, n),
          make_ci(var_unbiased, std::sqrt(var_of_var), n)};
}

TLFit fit_taylor(std::span<const std::pair<double, double>> mu_sigma2) {
  const std::size_t n = mu_sigma2.size();
  if (n < 2) throw DomainError("fit_taylor: need at least 2 points");
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [mu, s2] = mu_sigma2[i];
    if (!(mu > 0.0) || !(s2 > 0.0)) {
      throw DomainError("fit_taylor: all mu and sigma^2 must be positive");
    }
    x[i] = std::log(mu);
    y[i] = std::log(s2);
  }
  const double dn = static_cast<double>(n);
  double xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xbar += x[i];
    ybar += y[i];
  }
  xbar /= dn;
  ybar /= dn;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - xbar) * (x[i] - xbar);
    sxy += (x[i] - xbar) * (y[i] - ybar);
    syy += (y[i] - ybar) * (y[i] - ybar);
  }
  if (!(sxx > 0.0)) {
    throw DomainError("fit_taylor: degenerate abscissa (all log mu equal)");
  }
  const double b = sxy / sxx;
  const double a = ybar - b * xbar;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (a + b * x[i]);
    ss_res += r * r;
  }
  const double r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return {a, b, r2, n};
}

DistanceReport pmf_distance(std::span<const double> samples,
                            const std::function<double(long long)>& pmf,
                            long long cutoff) {
  if (samples.empty()) throw DomainError("pmf_distance: empty sample set");
  if (cutoff < 1) throw DomainError("pmf_distance: cutoff must be >= 1");
  std::vector<double> counts(static_cast<std::size_t>(cutoff) + 1, 0.0);
  for (const double s : samples) {
    const long long k = std::llround(s);
    if (k < 0) throw DomainError("pmf_distance: negative sample value");
    counts[static_cast<std::size_t>(std::min(k, cutoff))] += 1.0;
  }
  const double n = static_cast<double>(samples.size());
  double tv = 0.0;
  double chi2 = 0.0;
  double analytic_head = 0.0;
  for (long long k = 0; k < cutoff; ++k) {
    const double p = pmf(k);
    const double phat = counts[static_cast<std::size_t>(k)] / n;
    analytic_head += p;
    tv += std::fabs(phat - p);
    if (p > 0.0) chi2 += n * (phat - p) * (phat - p) / p;
  }
  const double tail_p = std::max(0.0, 1.0 - analytic_head);
  const double tail_hat = counts[static_cast<std::size_t>(cutoff)] / n;
  tv += std::fabs(tail_hat - tail_p);
  if (tail_p > 0.0) {
    chi2 += n * (tail_hat - tail_p) * (tail_hat - tail_p) / tail_p;
  }
  return {0.5 * tv, chi2};
}

double ks_distance(std::span<const double> samples,
                   const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("ks_distance: empty sample set");
  std::vector<double> xs(samples.begin(), samples.end());
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::fabs(static_cast<double>(i) / n - f));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

}  // namespace tlaw
