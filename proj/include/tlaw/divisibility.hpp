#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tlaw/families.hpp"
#include "tlaw/power_series.hpp"

namespace tlaw {

// Compound-Poisson form phi(z) = exp{-rate (1 - cluster(z))}. For the
// negative binomial and Polya-Aeppli families the cluster pgf has no atom
// at zero; for the Poisson-geometric compound the textbook cluster
// c(phi_tilde(z)) carries one, and normalized() strips it by folding the
// atom into the rate.
struct CompoundPoissonRep {
  double rate;
  PowerSeries cluster;

  CompoundPoissonRep normalized() const;
};

enum class SDVerdict { SD, NotSD, Inconclusive };
std::string verdict_name(SDVerdict v);

// Canonical self-decomposable pair (r, h) in
//   phi(z) = exp{-r int_z^1 (1-h(u))/(1-u) du},  h(0) = 0.
// The verdict is the coefficient oracle: SD when every computed coefficient
// of h is >= -tol, NotSD when some coefficient falls below -tol (the first
// such index is reported). Closed-form side conditions from the literature
// are reported separately by reference_claim and never decide the verdict.
struct SDCanonical {
  double rate;
  PowerSeries h;
  SDVerdict verdict;
  std::optional<std::size_t> first_negative_index;
  double min_coefficient;
  std::size_t order;
  double tol;
};

// Compound-geometric form phi(z) = (1-pi)/(1 - pi inner(z)) for the
// negative binomial with 0 < alpha < 1; inner(0) = 0.
struct CompoundGeometricRep {
  double pi;
  PowerSeries inner;
};

// A published closed-form condition evaluated at this parameter point and
// compared against the coefficient oracle.
struct ReferenceClaim {
  std::string description;
  std::optional<bool> claims_sd;  // empty when the condition is silent here
  bool agrees_with_oracle;
};

CompoundPoissonRep compound_poisson_rep(const FamilyParams& fam,
                                        std::size_t order = 64);

SDCanonical sd_canonical(const FamilyParams& fam, std::size_t order = 64,
                         double tol = 1e-10);

ReferenceClaim reference_claim(const FamilyParams& fam,
                               const SDCanonical& oracle);

CompoundGeometricRep compound_geometric_rep(const NegBinParams& fam,
                                            std::size_t order = 64);

// Rebuilds the family pgf from a canonical pair, anchored at phi(0):
// phi(0) exp{r int_0^z (1-h(u))/(1-u) du}. Coefficient-exact up to the
// truncation order.
PowerSeries sd_reconstruct(double rate, const PowerSeries& h, double phi0);

// Self-decomposability analysis of the TweBLE family with alpha < 1 through
// L0(lambda) = lambda L'(lambda) = (1-alpha)^{1-alpha} lambda
// (theta+lambda)^{alpha-1}:
//   alpha < 0       L0' changes sign at lambda_c = -theta/alpha, so L0' is
//                   not completely monotone: NotSD, with a witness lambda.
//   alpha = 0       exponential; SD with L0 = lambda/(theta+lambda).
//   0 < alpha < 1   SD; L0 integrates the tempered jump density
//                   pi(x) = x^{-(alpha+1)} (alpha + theta x) e^{-theta x}
//                   / Gamma(1-alpha), tabulated on a log grid. (The
//                   Ornstein-Uhlenbeck driver additionally carries the
//                   factor (1-alpha)^{1-alpha}; see processes.)
struct TwebleSDAnalysis {
  SDVerdict verdict;
  std::optional<double> lambda_c;
  std::optional<double> witness_lambda;
  std::vector<std::pair<double, double>> l0_values;     // (lambda, L0)
  std::vector<std::pair<double, double>> levy_density;  // (x, pi(x))
};

TwebleSDAnalysis tweble_sd_analysis(double alpha, double theta,
                                    const std::vector<double>& lambda_grid);

double tweble_l0(double alpha, double theta, double lambda);
double tweble_l0_prime(double alpha, double theta, double lambda);
double tweble_levy_density(double alpha, double theta, double x);

// PLSt Phi_0 of the infinitely divisible rv generating the gamma family's
// SD representation: exp{-alpha (1 - 1/(1+lambda beta))}, a compound
// Poisson(alpha) of Exp(beta) clusters. This is also the unit-time
// transform of the Ornstein-Uhlenbeck driver.
double gamma_sd_phi0(const GammaParams& fam, double lambda);

// pgf of the residual component X_c in X = c*X' + X_c (Bernoulli-thinning
// sense): phi(z) / phi(1 - c(1-z)). Requires an SD oracle verdict; for a
// NotSD family the ratio has a negative coefficient, reported in the error.
PowerSeries sd_thin_component_pgf(const FamilyParams& fam, double c,
                                  std::size_t order = 64);

}  // namespace tlaw
