#include "tlaw/taylor.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "tlaw/errors.hpp"
#include "tlaw/special.hpp"

namespace tlaw {

namespace {

constexpr double kSingularTol = 1e-12;

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

bool singular_mean(const Moments& m) {
  return std::fabs(std::log(m.mu)) < kSingularTol;
}

double negbin_p_c(double alpha) { return 1.0 / (1.0 + alpha); }

double negbin_p_0(double alpha) {
  return (2.0 + alpha - std::sqrt(alpha * alpha + 4.0 * alpha)) / 2.0;
}

double cpgeo_q_c(double alpha) { return alpha / (1.0 + alpha); }

// Positive root of (1+alpha) q^2 - alpha(1-alpha) q - alpha^2 = 0.
double cpgeo_q_0(double alpha) {
  return alpha *
         ((1.0 - alpha) + std::sqrt(alpha * alpha + 2.0 * alpha + 5.0)) /
         (2.0 * (1.0 + alpha));
}

// Positive root of q^2 + alpha q - 2 alpha = 0.
double polya_q_0(double alpha) {
  return (std::sqrt(alpha * alpha + 8.0 * alpha) - alpha) / 2.0;
}

// b as a function of the swept parameter, through moments().
double b_of(FamilyKind kind, SweepParam sweep, double value, double fixed) {
  return tl_exponent(make_family(kind, sweep, value, fixed));
}

struct ScanSegment {
  double lo;
  double hi;
  bool log_spaced;
};

// Scans the segment for a sign change of b - target and bisects it.
// Returns the crossing nearest lo, plus the observed b-range for error
// reporting.
std::optional<double> scan_and_bisect(const std::function<double(double)>& b,
                                      const ScanSegment& seg, double target,
                                      double* b_min_seen, double* b_max_seen) {
  constexpr int kScanPoints = 2048;
  const auto at = [&](int i) {
    const double t = static_cast<double>(i) / kScanPoints;
    if (seg.log_spaced) {
      return seg.lo * std::pow(seg.hi / seg.lo, t);
    }
    return seg.lo + (seg.hi - seg.lo) * t;
  };
  double prev_x = at(0);
  double prev_f = b(prev_x) - target;
  *b_min_seen = std::min(*b_min_seen, prev_f + target);
  *b_max_seen = std::max(*b_max_seen, prev_f + target);
  if (prev_f == 0.0) return prev_x;
  for (int i = 1; i <= kScanPoints; ++i) {
    const double x = at(i);
    const double f = b(x) - target;
    *b_min_seen = std::min(*b_min_seen, f + target);
    *b_max_seen = std::max(*b_max_seen, f + target);
    if (f == 0.0) return x;
    if ((f > 0.0) != (prev_f > 0.0)) {
      const double root = bisect([&](double v) { return b(v) - target; },
                                 prev_x, x, 1e-14 * std::max(1.0, x));
      return root;
    }
    prev_x = x;
    prev_f = f;
  }
  return std::nullopt;
}

}  // namespace

std::string branch_name(Branch b) {
  switch (b) {
    case Branch::LowerBranch:
      return "lower";
    case Branch::UpperBranch:
      return "upper";
    case Branch::FixedPoint:
      return "fixed-point";
    case Branch::Singular:
      return "singular";
  }
  return "unknown";
}

std::string sweep_param_name(SweepParam sweep) {
  switch (sweep) {
    case SweepParam::Alpha:
      return "alpha";
    case SweepParam::Theta:
      return "theta";
    case SweepParam::P:
      return "p";
    case SweepParam::Q:
      return "q";
    case SweepParam::Beta:
      return "beta";
  }
  return "unknown";
}

double tl_exponent(const FamilyParams& fam) {
  validate(fam);
  if (kind_of(fam) == FamilyKind::Tweble) {
    const auto& t = std::get<TwebleParams>(fam);
    if (std::isinf(t.alpha)) return 1.0;  // Poisson limit
    return (2.0 - t.alpha) / (1.0 - t.alpha);
  }
  const Moments m = moments(fam);
  if (singular_mean(m)) {
    throw DomainError(
        "tl_exponent: singular mean (mu = 1), b is undefined at this "
        "parameter point");
  }
  return std::log(m.sigma2) / std::log(m.mu);
}

Branch branch_of(const FamilyParams& fam) {
  validate(fam);
  return std::visit(
      [&fam](const auto& f) -> Branch {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, TwebleParams>) {
          if (std::isinf(f.alpha)) return Branch::UpperBranch;
          return f.alpha < 1.0 ? Branch::UpperBranch : Branch::LowerBranch;
        } else {
          const Moments m = moments(fam);
          // Singular means mu = 1 with sigma^2 != 1; the one point where
          // both equal 1 (gamma alpha = beta = 1) falls through to the
          // family rules below.
          if (singular_mean(m) &&
              std::fabs(std::log(m.sigma2)) >= kSingularTol) {
            return Branch::Singular;
          }
          if constexpr (std::is_same_v<T, NegBinParams>) {
            return f.p < negbin_p_c(f.alpha) ? Branch::LowerBranch
                                             : Branch::UpperBranch;
          } else if constexpr (std::is_same_v<T, CPGeoParams>) {
            return f.q() < cpgeo_q_c(f.alpha) ? Branch::UpperBranch
                                              : Branch::LowerBranch;
          } else if constexpr (std::is_same_v<T, PolyaAeppliParams>) {
            if (f.alpha >= 1.0) return Branch::UpperBranch;  // single branch
            return f.q() < f.alpha ? Branch::UpperBranch : Branch::LowerBranch;
          } else {
            if (f.beta == 1.0 || f.alpha == 1.0) return Branch::FixedPoint;
            // The +infinity side sits where log(beta) and log(alpha beta)
            // share a sign.
            const bool upper = (f.beta > 1.0) == (f.alpha > 1.0 / f.beta);
            return upper ? Branch::UpperBranch : Branch::LowerBranch;
          }
        }
      },
      fam);
}

std::map<std::string, double> critical_points(FamilyKind kind,
                                              double fixed_param) {
  std::map<std::string, double> out;
  switch (kind) {
    case FamilyKind::Tweble: {
      out["alpha_c"] = 1.0;
      break;
    }
    case FamilyKind::NegBin: {
      const double alpha = fixed_param;
      validate(NegBinParams{alpha, 0.5});
      out["p_c"] = negbin_p_c(alpha);
      out["p_0"] = negbin_p_0(alpha);
      out["q_0"] = 1.0 - negbin_p_0(alpha);
      const double lo = out["p_c"] + 1e-9 * (1.0 - out["p_c"]);
      const double hi = 1.0 - 1e-12;
      const MinResult min = minimize_golden(
          [alpha](double p) {
            return tl_exponent(FamilyParams(NegBinParams{alpha, p}));
          },
          lo, hi, 1e-12);
      out["b_min"] = min.value;
      out["b_min_p"] = min.arg;
      break;
    }
    case FamilyKind::CPGeo: {
      const double alpha = fixed_param;
      validate(CPGeoParams{alpha, 0.5});
      out["q_c"] = cpgeo_q_c(alpha);
      out["q_0"] = cpgeo_q_0(alpha);
      break;
    }
    case FamilyKind::PolyaAeppli: {
      const double alpha = fixed_param;
      validate(PolyaAeppliParams{alpha, 0.5});
      if (alpha < 1.0) {
        out["q_c"] = alpha;
        const double q0 = polya_q_0(alpha);
        if (q0 < 1.0) out["q_0"] = q0;
      }
      break;
    }
    case FamilyKind::Gamma: {
      const double beta = fixed_param;
      validate(GammaParams{1.0, beta});
      if (beta != 1.0) out["alpha_c"] = 1.0 / beta;
      break;
    }
  }
  return out;
}

TLReport tl_report(const FamilyParams& fam) {
  validate(fam);
  TLReport report;
  report.a = 0.0;
  report.branch = branch_of(fam);
  if (report.branch == Branch::Singular) {
    report.b = nan();
  } else if (report.branch == Branch::FixedPoint &&
             kind_of(fam) == FamilyKind::Gamma) {
    const auto& g = std::get<GammaParams>(fam);
    if (g.beta == 1.0 && g.alpha == 1.0) {
      report.b = nan();  // mu = sigma^2 = 1: every exponent fits
    } else if (g.beta == 1.0) {
      report.b = 1.0;
    } else {
      report.b = 2.0;  // alpha = 1, any beta
    }
  } else {
    report.b = tl_exponent(fam);
  }
  const double fixed = std::visit(
      [](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, TwebleParams>) {
          return f.theta;
        } else if constexpr (std::is_same_v<T, GammaParams>) {
          return f.beta;
        } else {
          return f.alpha;
        }
      },
      fam);
  report.critical = critical_points(kind_of(fam), fixed);
  return report;
}

FamilyParams make_family(FamilyKind kind, SweepParam sweep, double value,
                         double fixed_param) {
  switch (kind) {
    case FamilyKind::Tweble:
      if (sweep == SweepParam::Alpha) return TwebleParams{value, fixed_param};
      if (sweep == SweepParam::Theta) return TwebleParams{fixed_param, value};
      break;
    case FamilyKind::NegBin:
      if (sweep == SweepParam::P) return NegBinParams{fixed_param, value};
      if (sweep == SweepParam::Q) {
        return NegBinParams{fixed_param, 1.0 - value};
      }
      break;
    case FamilyKind::CPGeo:
      if (sweep == SweepParam::P) return CPGeoParams{fixed_param, value};
      if (sweep == SweepParam::Q) return CPGeoParams{fixed_param, 1.0 - value};
      break;
    case FamilyKind::PolyaAeppli:
      if (sweep == SweepParam::P) {
        return PolyaAeppliParams{fixed_param, value};
      }
      if (sweep == SweepParam::Q) {
        return PolyaAeppliParams{fixed_param, 1.0 - value};
      }
      break;
    case FamilyKind::Gamma:
      if (sweep == SweepParam::Alpha) return GammaParams{value, fixed_param};
      if (sweep == SweepParam::Beta) return GammaParams{fixed_param, value};
      break;
  }
  throw DomainError("make_family: sweep parameter " + sweep_param_name(sweep) +
                    " is not valid for family " + family_name(kind));
}

std::vector<BCurveRow> b_curve(FamilyKind kind, double fixed_param,
                               SweepParam sweep,
                               const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("b_curve: empty sweep grid");
  std::vector<BCurveRow> rows;
  rows.reserve(grid.size());
  for (const double value : grid) {
    BCurveRow row;
    row.param = value;
    row.mu = nan();
    row.sigma2 = nan();
    row.b = nan();
    row.branch = Branch::Singular;
    row.excluded = true;
    try {
      const FamilyParams fam = make_family(kind, sweep, value, fixed_param);
      validate(fam);
      row.branch = branch_of(fam);
      const Moments m = moments(fam);
      row.mu = m.mu;
      row.sigma2 = m.sigma2;
      if (singular_mean(m) && kind != FamilyKind::Tweble) {
        row.flag = "singular";
      } else {
        row.b = tl_exponent(fam);
        row.excluded = false;
        row.flag = "ok";
      }
    } catch (const DomainError&) {
      row.flag = "domain";
      // The tweble exponent depends on alpha only; report it even when the
      // moment domain excludes this (alpha, theta) pairing.
      if (kind == FamilyKind::Tweble && sweep == SweepParam::Alpha &&
          std::isfinite(value) && value != 1.0 && value >= -40.0 &&
          value <= 2.0) {
        row.b = (2.0 - value) / (1.0 - value);
        row.branch = value < 1.0 ? Branch::UpperBranch : Branch::LowerBranch;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

IsoBSolution solve_iso_b(FamilyKind kind, double fixed_param, double b_target,
                         Branch branch) {
  if (branch == Branch::Singular) {
    throw DomainError("solve_iso_b: cannot target the singular set");
  }
  if (kind == FamilyKind::Tweble) {
    // b = (2-alpha)/(1-alpha) inverts to alpha = (b-2)/(b-1).
    if (b_target > 0.0 && b_target < 1.0) {
      throw NoSolutionError(
          "solve_iso_b: tweble exponents never fall in (0,1)");
    }
    if (b_target == 1.0) {
      return {-std::numeric_limits<double>::infinity(), Branch::UpperBranch};
    }
    const double alpha = (b_target - 2.0) / (b_target - 1.0);
    if (alpha < -40.0) {
      throw NoSolutionError(
          "solve_iso_b: target needs alpha < -40, outside the implemented "
          "tweble domain [-40, 2]");
    }
    const Branch found = alpha < 1.0 ? Branch::UpperBranch : Branch::LowerBranch;
    if (found != branch) {
      throw NoSolutionError("solve_iso_b: target " + std::to_string(b_target) +
                            " lies on the " + branch_name(found) +
                            " tweble branch, not " + branch_name(branch));
    }
    return {alpha, found};
  }
  if (kind == FamilyKind::Gamma) {
    const double beta = fixed_param;
    validate(GammaParams{1.0, beta});
    if (beta == 1.0) {
      if (b_target == 1.0) return {2.0, Branch::FixedPoint};
      throw NoSolutionError(
          "solve_iso_b: with beta = 1 the exponent is identically 1");
    }
    const double alpha_c = 1.0 / beta;
    ScanSegment seg;
    const bool upper_is_right = beta > 1.0;
    if ((branch == Branch::UpperBranch) == upper_is_right) {
      seg = {alpha_c * (1.0 + 1e-12), alpha_c * 1e9, true};
    } else {
      seg = {alpha_c * 1e-9, alpha_c * (1.0 - 1e-12), true};
    }
    double bmin = std::numeric_limits<double>::infinity();
    double bmax = -bmin;
    const auto b_fn = [&](double a) {
      return tl_exponent(FamilyParams(GammaParams{a, beta}));
    };
    if (auto root = scan_and_bisect(b_fn, seg, b_target, &bmin, &bmax)) {
      return {*root, branch};
    }
    throw NoSolutionError("solve_iso_b: b = " + std::to_string(b_target) +
                          " unattainable on the " + branch_name(branch) +
                          " gamma branch (observed range [" +
                          std::to_string(bmin) + ", " + std::to_string(bmax) +
                          "])");
  }

  // Discrete families: sweep p (negbin) or q (cpgeo, polya-aeppli) at fixed
  // alpha.
  const double alpha = fixed_param;
  SweepParam sweep;
  double crit;  // singular point of the swept parameter, if any
  switch (kind) {
    case FamilyKind::NegBin:
      validate(NegBinParams{alpha, 0.5});
      sweep = SweepParam::P;
      crit = negbin_p_c(alpha);
      break;
    case FamilyKind::CPGeo:
      validate(CPGeoParams{alpha, 0.5});
      sweep = SweepParam::Q;
      crit = cpgeo_q_c(alpha);
      break;
    default:
      validate(PolyaAeppliParams{alpha, 0.5});
      sweep = SweepParam::Q;
      crit = alpha < 1.0 ? alpha : 1.0;  // no singularity when alpha >= 1
      break;
  }
  const bool upper_below_crit =
      (kind != FamilyKind::NegBin);  // negbin: upper branch is p > p_c
  ScanSegment seg;
  const double eps = 1e-12;
  const bool has_pole = crit < 1.0;
  if (!has_pole) {
    // Single branch across (0,1); treat it as the upper branch.
    if (branch != Branch::UpperBranch) {
      throw NoSolutionError(
          "solve_iso_b: this parameter choice has a single branch; use the "
          "upper branch");
    }
    seg = {eps, 1.0 - eps, false};
  } else if ((branch == Branch::UpperBranch) == upper_below_crit) {
    seg = {eps, crit * (1.0 - 1e-9), false};
  } else {
    seg = {crit + 1e-9 * (1.0 - crit), 1.0 - eps, false};
  }
  double bmin = std::numeric_limits<double>::infinity();
  double bmax = -bmin;
  const auto b_fn = [&](double v) {
    return b_of(kind, sweep, v, alpha);
  };
  // Scan from the singular side so that a doubly-attained target (possible
  // on the non-monotone negbin upper branch) resolves to the crossing
  // nearest the pole.
  ScanSegment oriented = seg;
  bool reverse = false;
  if (has_pole && ((branch == Branch::UpperBranch) == upper_below_crit)) {
    reverse = true;  // pole sits at the hi end
  }
  std::optional<double> root;
  if (!reverse) {
    root = scan_and_bisect(b_fn, oriented, b_target, &bmin, &bmax);
  } else {
    const auto flipped = [&](double v) {
      return b_fn(seg.lo + seg.hi - v);
    };
    root = scan_and_bisect(flipped, oriented, b_target, &bmin, &bmax);
    if (root) root = seg.lo + seg.hi - *root;
  }
  if (root) return {*root, branch};
  std::string msg = "solve_iso_b: b = " + std::to_string(b_target) +
                    " unattainable on the " + branch_name(branch) + " " +
                    family_name(kind) + " branch (observed range [" +
                    std::to_string(bmin) + ", " + std::to_string(bmax) + "])";
  if (kind == FamilyKind::NegBin && branch == Branch::UpperBranch) {
    const auto cp = critical_points(FamilyKind::NegBin, alpha);
    if (b_target > 1.0 && b_target < cp.at("b_min")) {
      msg += "; the band (1, " + std::to_string(cp.at("b_min")) +
             ") is excluded for this family";
    }
  }
  if (kind == FamilyKind::CPGeo && b_target > 1.0 && b_target < 2.0) {
    msg += "; the band (1, 2) is excluded for this family";
  }
  throw NoSolutionError(msg);
}

RescaleResult rescale(const FamilyParams& fam, double sigma1_sq) {
  validate(fam);
  if (!(sigma1_sq > 0.0) || !std::isfinite(sigma1_sq)) {
    throw DomainError("rescale: sigma1_sq must be positive and finite");
  }
  const Moments m = moments(fam);
  RescaleResult out;
  out.moments = {m.mu, sigma1_sq * m.sigma2};
  out.a = std::log(sigma1_sq);
  if (kind_of(fam) == FamilyKind::Gamma) {
    const auto& g = std::get<GammaParams>(fam);
    out.rescaled_gamma = GammaParams{g.alpha / sigma1_sq, g.beta * sigma1_sq};
  }
  return out;
}

FamilyParams iid_summand(const FamilyParams& fam, long long n) {
  validate(fam);
  if (n < 1) throw DomainError("iid_summand: n must be >= 1");
  const double dn = static_cast<double>(n);
  if (kind_of(fam) == FamilyKind::NegBin) {
    const auto& f = std::get<NegBinParams>(fam);
    return NegBinParams{f.alpha / dn, f.p};
  }
  if (kind_of(fam) == FamilyKind::Gamma) {
    const auto& f = std::get<GammaParams>(fam);
    return GammaParams{f.alpha / dn, f.beta};
  }
  throw UnsupportedError(
      "iid_summand: only negbin and gamma are closed under convolution "
      "roots within their family");
}

double polya_aeppli_alpha1_reported_b(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("polya_aeppli_alpha1_reported_b: q must be in (0,1)");
  }
  return std::log(2.0 - q);
}

}  // namespace tlaw
