#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tlaw/families.hpp"

namespace tlaw {

// Under the canonical parametrization every family here satisfies
// sigma^2 = mu^b exactly, so b = log sigma^2 / log mu wherever mu != 1.
// Logarithms are natural throughout.

// Branch labels for the two-sided structure of b against the swept
// parameter. Upper is the side on which b diverges to +infinity at the
// singular point (mu = 1); Lower the side diverging to -infinity. Sweeps on
// which b is constant report FixedPoint; points with mu = 1 are Singular and
// never silently skipped.
enum class Branch { LowerBranch, UpperBranch, FixedPoint, Singular };
std::string branch_name(Branch b);

struct TLReport {
  double b;
  double a;  // 0 under the canonical parametrization
  Branch branch;
  std::map<std::string, double> critical;
};

// TL exponent log sigma^2 / log mu. For the TweBLE family this equals
// (2-alpha)/(1-alpha) exactly and is returned in that form. Throws
// DomainError at singular mean (mu = 1) for the other families.
double tl_exponent(const FamilyParams& fam);

Branch branch_of(const FamilyParams& fam);

// Critical parameter values for a family kind with its non-swept parameter
// fixed (alpha for the discrete families, beta for gamma, theta for tweble):
//   negbin        p_c, p_0, q_0, b_min, b_min_p
//   cpgeo         q_c, q_0
//   polya-aeppli  q_c and q_0 when they fall inside (0,1), i.e. alpha < 1
//   gamma         alpha_c = 1/beta when beta != 1
//   tweble        alpha_c = 1
// Divergence points satisfy mu = 1 and zero points sigma^2 = 1, each to
// 1e-10; b_min is a golden-section minimum over the upper branch.
std::map<std::string, double> critical_points(FamilyKind kind,
                                              double fixed_param);

TLReport tl_report(const FamilyParams& fam);

enum class SweepParam { Alpha, Theta, P, Q, Beta };
std::string sweep_param_name(SweepParam sweep);

// Family point with one parameter swept and the other fixed. Combinations:
// tweble sweeps alpha or theta (fixing the other); the discrete families
// sweep p or q at fixed alpha; gamma sweeps alpha at fixed beta or beta at
// fixed alpha.
FamilyParams make_family(FamilyKind kind, SweepParam sweep, double value,
                         double fixed_param);

struct BCurveRow {
  double param;
  double mu;
  double sigma2;
  double b;
  Branch branch;
  bool excluded;        // singular mean or inadmissible moments
  std::string flag;     // "ok", "singular" or "domain"
};

// Evaluates (mu, sigma^2, b, branch) over a sweep grid. Singular or
// inadmissible points are flagged rather than dropped; for tweble the
// alpha-only exponent is still reported on rows whose moments are flagged.
std::vector<BCurveRow> b_curve(FamilyKind kind, double fixed_param,
                               SweepParam sweep,
                               const std::vector<double>& grid);

struct IsoBSolution {
  double param;
  Branch branch;  // FixedPoint when every parameter value attains b_target
};

// Finds a swept-parameter value attaining b_target on the requested branch
// (bisection after a bracketing scan; where a branch is non-monotone the
// crossing nearest the singularity is returned). Throws NoSolutionError
// naming the attainable range, e.g. the excluded NegBin band (1, b_min).
IsoBSolution solve_iso_b(FamilyKind kind, double fixed_param, double b_target,
                         Branch branch);

struct RescaleResult {
  Moments moments;  // mean unchanged, variance scaled by sigma1_sq
  double a;         // log sigma1_sq
  std::optional<GammaParams> rescaled_gamma;  // Gamma{alpha/A, beta*A}
};

// Variance rescaling L(lambda) -> L(A lambda)/A with A = sigma1_sq; the mean
// is invariant, the variance picks up the factor A and the TL intercept
// becomes a = log A.
RescaleResult rescale(const FamilyParams& fam, double sigma1_sq);

// The summand family whose n-fold convolution reproduces fam; closed under
// alpha -> alpha/n for NegBin and Gamma only.
FamilyParams iid_summand(const FamilyParams& fam, long long n);

// Exponent claimed by a published alpha = 1 closed form for the
// Polya-Aeppli family, log(2-q); disagrees with the normative
// log sigma^2/log mu limit and is exposed for side-by-side reporting only.
double polya_aeppli_alpha1_reported_b(double q);

}  // namespace tlaw
