#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace tlaw {

struct EstimateCI {
  double point;
  double stderr_;
  double ci95_low;
  double ci95_high;
  std::size_t n;
};

struct MomentsEstimate {
  EstimateCI mean;
  EstimateCI variance;
};

// Sample mean and unbiased sample variance with standard errors; the
// variance stderr uses the fourth-central-moment plug-in
// Var(S^2) ~ (m4 - m2^2 (n-3)/(n-1)) / n. Requires n >= 4.
MomentsEstimate empirical_moments(std::span<const double> xs);

struct TLFit {
  double a_hat;
  double b_hat;
  double r_squared;
  std::size_t n_points;
};

// OLS of log sigma^2 on log mu. Requires >= 2 points, positive moments and
// a non-degenerate abscissa; exact-law inputs come back with r^2 = 1.
TLFit fit_taylor(std::span<const std::pair<double, double>> mu_sigma2);

struct DistanceReport {
  double tv;
  double chi2;
};

// Total variation (and Pearson chi^2 statistic) between the empirical pmf
// of integer-valued samples and an analytic pmf, over bins 0..cutoff-1 with
// everything >= cutoff folded into one tail bin. Pick cutoff so the
// analytic tail mass is negligible (< 1e-6).
DistanceReport pmf_distance(std::span<const double> samples,
                            const std::function<double(long long)>& pmf,
                            long long cutoff);

// Kolmogorov-Smirnov statistic against a continuous CDF.
double ks_distance(std::span<const double> samples,
                   const std::function<double(double)>& cdf);

}  // namespace tlaw
