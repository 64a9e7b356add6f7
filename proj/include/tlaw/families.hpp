#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "tlaw/power_series.hpp"
#include "tlaw/rng.hpp"

namespace tlaw {

// The five two-parameter families.
//
//   TweBLE       bilateral Laplace exponent built from
//                k(theta) = ((1-alpha)/alpha) (theta/(1-alpha))^alpha;
//                covers Poisson (alpha = -inf), compound Poisson-gamma
//                (alpha < 0), exponential (alpha = 0), tempered stable
//                (0 < alpha < 1 and 1 < alpha < 2) and Gaussian (alpha = 2).
//   NegBin       P[X=k] = C(k+alpha-1, k) q^alpha p^k.
//   CPGeo        sum of N iid Poisson(alpha) with P(N=k) = q p^k, k >= 0.
//   PolyaAeppli  sum of a Poisson(alpha) number of geometric clusters with
//                P(G=k) = q p^{k-1}, k >= 1.
//   Gamma        shape alpha, scale beta.
//
// q is always derived as 1-p, never stored.

struct TwebleParams {
  // Admissible: alpha = -infinity (Poisson limit) or alpha in [-40, 2]\{1}.
  // theta/(1-alpha) must be positive: theta > 0 when alpha < 1, theta < 0
  // when alpha in (1, 2].
  double alpha;
  double theta;
};

struct NegBinParams {
  double alpha;  // > 0
  double p;      // in (0,1)
  double q() const noexcept { return 1.0 - p; }
};

struct CPGeoParams {
  double alpha;  // > 0
  double p;      // in (0,1)
  double q() const noexcept { return 1.0 - p; }
};

struct PolyaAeppliParams {
  double alpha;  // > 0
  double p;      // in (0,1)
  double q() const noexcept { return 1.0 - p; }
};

struct GammaParams {
  double alpha;  // shape > 0
  double beta;   // scale > 0
};

using FamilyParams = std::variant<TwebleParams, NegBinParams, CPGeoParams,
                                  PolyaAeppliParams, GammaParams>;

enum class FamilyKind { Tweble, NegBin, CPGeo, PolyaAeppli, Gamma };

FamilyKind kind_of(const FamilyParams& fam) noexcept;
std::string family_name(FamilyKind kind);
bool is_discrete(const FamilyParams& fam) noexcept;

// Throws DomainError with the admissible range if the parameters are out of
// range.
void validate(const FamilyParams& fam);

struct Moments {
  double mu;
  double sigma2;
};

// Closed-form mean and variance.
Moments moments(const FamilyParams& fam);

// Log-Laplace transform L(lambda) = -log E exp(-lambda X), with L(0) = 0.
// Accepted lambda range is the transform's natural domain, which extends a
// little below 0 for every family (needed for central finite differences
// at the origin); lambda >= 0 is always safe.
double llt(const FamilyParams& fam, double lambda);

// Probability generating function at z in [0,1]; discrete families only.
double pgf(const FamilyParams& fam, double z);

// P[X=k], equal to coefficient k of the pgf expansion; discrete families
// only, k < order. order matters only for the series-computed Poisson-
// geometric compound; negative round-off within 1e-12 is clamped to 0.
double pmf(const FamilyParams& fam, long long k, std::size_t order = 256);

// Truncated pgf expansion; discrete families only.
PowerSeries pgf_series(const FamilyParams& fam, std::size_t order);

// Draws one variate, exact in distribution. TweBLE sampling covers the
// Poisson limit, alpha < 0 (compound Poisson-gamma) and alpha = 0
// (exponential); the tempered-stable range must go through the
// Ornstein-Uhlenbeck construction instead.
double sample(const FamilyParams& fam, Philox& rng);

}  // namespace tlaw
