#include "tlaw/families.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tlaw/errors.hpp"

namespace tlaw {

namespace {

constexpr double kTwebleAlphaMin = -40.0;

bool is_poisson_limit(const TwebleParams& t) {
  return std::isinf(t.alpha) && t.alpha < 0.0;
}

// theta/(1-alpha); positive for admissible parameters.
double tweble_w(const TwebleParams& t) { return t.theta / (1.0 - t.alpha); }

void validate_tweble(const TwebleParams& t) {
  if (is_poisson_limit(t)) {
    if (!(t.theta > 0.0) || !std::isfinite(t.theta)) {
      throw DomainError("tweble: Poisson limit requires theta > 0");
    }
    return;
  }
  if (!std::isfinite(t.alpha) || t.alpha == 1.0 || t.alpha < kTwebleAlphaMin ||
      t.alpha > 2.0) {
    throw DomainError(
        "tweble: alpha must be -inf (Poisson limit) or in [-40, 2] excluding "
        "1");
  }
  if (!std::isfinite(t.theta) || !(tweble_w(t) > 0.0)) {
    throw DomainError(
        "tweble: theta/(1-alpha) must be positive (theta > 0 for alpha < 1, "
        "theta < 0 for alpha in (1,2])");
  }
}

void validate_alpha_p(double alpha, double p, const char* name) {
  if (!std::isfinite(alpha) || !(alpha > 0.0)) {
    throw DomainError(std::string(name) + ": alpha must be > 0");
  }
  if (!std::isfinite(p) || !(p > 0.0 && p < 1.0)) {
    throw DomainError(std::string(name) + ": p must be in (0,1)");
  }
}

// Series of the Poisson(alpha) pgf exp(-alpha(1-z)) built from the exp
// pipeline; used by the compound Poisson-geometric expansion.
PowerSeries poisson_pgf_series(double alpha, std::size_t order) {
  PowerSeries a(order);
  a[0] = -alpha;
  if (order > 1) a[1] = alpha;
  return exp(a);
}

double clamp_pmf(double value, long long k) {
  if (value >= 0.0) return value;
  if (value >= -1e-12) return 0.0;
  throw DomainError("pmf: negative coefficient " + std::to_string(value) +
                    " at k=" + std::to_string(k) +
                    " (truncation order too short)");
}

}  // namespace

FamilyKind kind_of(const FamilyParams& fam) noexcept {
  switch (fam.index()) {
    case 0:
      return FamilyKind::Tweble;
    case 1:
      return FamilyKind::NegBin;
    case 2:
      return FamilyKind::CPGeo;
    case 3:
      return FamilyKind::PolyaAeppli;
    default:
      return FamilyKind::Gamma;
  }
}

std::string family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Tweble:
      return "tweble";
    case FamilyKind::NegBin:
      return "negbin";
    case FamilyKind::CPGeo:
      return "cpgeo";
    case FamilyKind::PolyaAeppli:
      return "polya-aeppli";
    case FamilyKind::Gamma:
      return "gamma";
  }
  return "unknown";
}

bool is_discrete(const FamilyParams& fam) noexcept {
  const FamilyKind k = kind_of(fam);
  return k == FamilyKind::NegBin || k == FamilyKind::CPGeo ||
         k == FamilyKind::PolyaAeppli;
}

void validate(const FamilyParams& fam) {
  std::visit(
      [](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, TwebleParams>) {
          validate_tweble(f);
        } else if constexpr (std::is_same_v<T, NegBinParams>) {
          validate_alpha_p(f.alpha, f.p, "negbin");
        } else if constexpr (std::is_same_v<T, CPGeoParams>) {
          validate_alpha_p(f.alpha, f.p, "cpgeo");
        } else if constexpr (std::is_same_v<T, PolyaAeppliParams>) {
          validate_alpha_p(f.alpha, f.p, "polya-aeppli");
        } else {
          if (!std::isfinite(f.alpha) || !(f.alpha > 0.0) ||
              !std::isfinite(f.beta) || !(f.beta > 0.0)) {
            throw DomainError("gamma: requires shape alpha > 0 and scale "
                              "beta > 0");
          }
        }
      },
      fam);
}

Moments moments(const FamilyParams& fam) {
  validate(fam);
  return std::visit(
      [](const auto& f) -> Moments {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, TwebleParams>) {
          if (is_poisson_limit(f)) {
            const double m = std::exp(-f.theta);
            return {m, m};
          }
          const double w = tweble_w(f);
          return {std::pow(w, f.alpha - 1.0), std::pow(w, f.alpha - 2.0)};
        } else if constexpr (std::is_same_v<T, NegBinParams>) {
          const double q = f.q();
          return {f.alpha * f.p / q, f.alpha * f.p / (q * q)};
        } else if constexpr (std::is_same_v<T, CPGeoParams>) {
          const double q = f.q();
          return {f.alpha * f.p / q,
                  f.alpha * f.p * (f.alpha + q) / (q * q)};
        } else if constexpr (std::is_same_v<T, PolyaAeppliParams>) {
          const double q = f.q();
          return {f.alpha / q, f.alpha * (1.0 + f.p) / (q * q)};
        } else {
          return {f.alpha * f.beta, f.alpha * f.beta * f.beta};
        }
      },
      fam);
}

double llt(const FamilyParams& fam, double lambda) {
  validate(fam);
  if (!std::isfinite(lambda)) throw DomainError("llt: lambda must be finite");
  return std::visit(
      [lambda](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, TwebleParams>) {
          if (is_poisson_limit(f)) {
            return std::exp(-f.theta) * (1.0 - std::exp(-lambda));
          }
          if (f.alpha == 0.0) {
            if (!(f.theta + lambda > 0.0)) {
              throw DomainError("llt: lambda outside domain (theta+lambda "
                                "must be > 0)");
            }
            return std::log1p(lambda / f.theta);
          }
          if (f.alpha == 2.0) {
            return -f.theta * lambda - 0.5 * lambda * lambda;
          }
          const double base = (f.theta + lambda) / (1.0 - f.alpha);
          if (!(base > 0.0)) {
            throw DomainError(
                "llt: lambda outside domain ((theta+lambda)/(1-alpha) must "
                "be > 0)");
          }
          const double w = tweble_w(f);
          return (1.0 - f.alpha) / f.alpha *
                 (std::pow(base, f.alpha) - std::pow(w, f.alpha));
        } else if constexpr (std::is_same_v<T, NegBinParams>) {
          const double pe = f.p * std::exp(-lambda);
          if (!(pe < 1.0)) {
            throw DomainError("llt: lambda outside domain (requires "
                              "p*exp(-lambda) < 1)");
          }
          return f.alpha * (std::log1p(-pe) - std::log(f.q()));
        } else if constexpr (std::is_same_v<T, CPGeoParams>) {
          const double inner = std::exp(-f.alpha * (1.0 - std::exp(-lambda)));
          const double pe = f.p * inner;
          if (!(pe < 1.0)) {
            throw DomainError("llt: lambda outside domain of the compound "
                              "Poisson-geometric transform");
          }
          return std::log1p(-pe) - std::log(f.q());
        } else if constexpr (std::is_same_v<T, PolyaAeppliParams>) {
          const double e = std::exp(-lambda);
          if (!(f.p * e < 1.0)) {
            throw DomainError("llt: lambda outside domain (requires "
                              "p*exp(-lambda) < 1)");
          }
          return f.alpha * (1.0 - e) / (1.0 - f.p * e);
        } else {
          if (!(1.0 + lambda * f.beta > 0.0)) {
            throw DomainError("llt: lambda outside domain (requires "
                              "1 + lambda*beta > 0)");
          }
          return f.alpha * std::log1p(lambda * f.beta);
        }
      },
      fam);
}

double pgf(const FamilyParams& fam, double z) {
  validate(fam);
  if (!(z >= 0.0 && z <= 1.0)) {
    throw DomainError("pgf: z must be in [0,1]");
  }
  return std::visit(
      [z](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, NegBinParams>) {
          return std::pow(f.q() / (1.0 - f.p * z), f.alpha);
        } else if constexpr (std::is_same_v<T, CPGeoParams>) {
          return f.q() / (1.0 - f.p * std::exp(-f.alpha * (1.0 - z)));
        } else if constexpr (std::is_same_v<T, PolyaAeppliParams>) {
          return std::exp(-f.alpha * (1.0 - z) / (1.0 - f.p * z));
        } else {
          throw UnsupportedError("pgf: defined for discrete families only");
        }
      },
      fam);
}

PowerSeries pgf_series(const FamilyParams& fam, std::size_t order) {
  validate(fam);
  if (order < 1) throw DomainError("pgf_series: order must be >= 1");
  return std::visit(
      [order](const auto& f) -> PowerSeries {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, NegBinParams>) {
          // C(k+alpha-1, k) q^alpha p^k with the stable ratio recursion
          // c_{k+1}/c_k = p (k+alpha)/(k+1).
          PowerSeries s(order);
          s[0] = std::pow(f.q(), f.alpha);
          for (std::size_t k = 0; k + 1 < order; ++k) {
            s[k + 1] = s[k] * f.p * (static_cast<double>(k) + f.alpha) /
                       (static_cast<double>(k) + 1.0);
          }
          return s;
        } else if constexpr (std::is_same_v<T, CPGeoParams>) {
          // q / (1 - p e^{-alpha(1-z)}) through the exp/div pipeline.
          const PowerSeries phi = poisson_pgf_series(f.alpha, order);
          const PowerSeries den =
              PowerSeries::constant(1.0, order) - f.p * phi;
          return PowerSeries::constant(f.q(), order) / den;
        } else if constexpr (std::is_same_v<T, PolyaAeppliParams>) {
          // exp{-alpha(1-z)/(1-pz)}; the exponent expands to
          // -alpha + alpha q sum_{k>=1} p^{k-1} z^k.
          PowerSeries a(order);
          a[0] = -f.alpha;
          double c = f.alpha * f.q();
          for (std::size_t k = 1; k < order; ++k) {
            a[k] = c;
            c *= f.p;
          }
          return exp(a);
        } else {
          throw UnsupportedError(
              "pgf_series: defined for discrete families only");
        }
      },
      fam);
}

double pmf(const FamilyParams& fam, long long k, std::size_t order) {
  validate(fam);
  if (k < 0) return 0.0;
  if (static_cast<std::size_t>(k) >= order) {
    throw DomainError("pmf: k must be < order");
  }
  return std::visit(
      [k, order](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, NegBinParams>) {
          const double lg = std::lgamma(static_cast<double>(k) + f.alpha) -
                            std::lgamma(f.alpha) -
                            std::lgamma(static_cast<double>(k) + 1.0);
          return clamp_pmf(std::exp(lg + f.alpha * std::log(f.q()) +
                                    static_cast<double>(k) * std::log(f.p)),
                           k);
        } else if constexpr (std::is_same_v<T, CPGeoParams>) {
          const PowerSeries s = pgf_series(FamilyParams(f), order);
          return clamp_pmf(s[static_cast<std::size_t>(k)], k);
        } else if constexpr (std::is_same_v<T, PolyaAeppliParams>) {
          if (k == 0) return std::exp(-f.alpha);
          // e^{-alpha} sum_{l=1..k} C(k-1,l-1) alpha^l/l! p^{k-l} q^l
          const double la = std::log(f.alpha);
          const double lp = std::log(f.p);
          const double lq = std::log(f.q());
          double acc = 0.0;
          for (long long l = 1; l <= k; ++l) {
            const double lchoose =
                std::lgamma(static_cast<double>(k)) -
                std::lgamma(static_cast<double>(l)) -
                std::lgamma(static_cast<double>(k - l) + 1.0);
            acc += std::exp(lchoose + static_cast<double>(l) * la -
                            std::lgamma(static_cast<double>(l) + 1.0) +
                            static_cast<double>(k - l) * lp +
                            static_cast<double>(l) * lq);
          }
          return clamp_pmf(std::exp(-f.alpha) * acc, k);
        } else {
          throw UnsupportedError("pmf: defined for discrete families only");
        }
      },
      fam);
}

double sample(const FamilyParams& fam, Philox& rng) {
  validate(fam);
  return std::visit(
      [&rng](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, TwebleParams>) {
          if (is_poisson_limit(f)) {
            return static_cast<double>(
                sample_poisson(rng, std::exp(-f.theta)));
          }
          if (f.alpha == 0.0) {
            return sample_exponential(rng, 1.0 / f.theta);
          }
          if (f.alpha < 0.0) {
            // Compound Poisson-gamma: rate (1-alpha)^{1-alpha} theta^alpha
            // / (-alpha), jump shape -alpha, jump scale 1/theta.
            const double rate = std::pow(1.0 - f.alpha, 1.0 - f.alpha) *
                                std::pow(f.theta, f.alpha) / (-f.alpha);
            const long long n = sample_poisson(rng, rate);
            if (n == 0) return 0.0;
            return sample_gamma(rng, static_cast<double>(n) * (-f.alpha),
                                1.0 / f.theta);
          }
          throw UnsupportedError(
              "sample: tempered-stable tweble (alpha in (0,1) or (1,2]) has "
              "no direct sampler; simulate the Ornstein-Uhlenbeck limit "
              "instead");
        } else if constexpr (std::is_same_v<T, NegBinParams>) {
          // Gamma-mixed Poisson: X | G ~ Poisson(G), G ~ Gamma(alpha, p/q).
          const double g = sample_gamma(rng, f.alpha, f.p / f.q());
          return static_cast<double>(sample_poisson(rng, g));
        } else if constexpr (std::is_same_v<T, CPGeoParams>) {
          // Sum of N iid Poisson(alpha) collapses to Poisson(alpha N).
          const long long n = sample_geometric_failures(rng, f.p);
          if (n == 0) return 0.0;
          return static_cast<double>(
              sample_poisson(rng, f.alpha * static_cast<double>(n)));
        } else if constexpr (std::is_same_v<T, PolyaAeppliParams>) {
          const long long m = sample_poisson(rng, f.alpha);
          long long total = 0;
          for (long long i = 0; i < m; ++i) {
            total += 1 + sample_geometric_failures(rng, f.p);
          }
          return static_cast<double>(total);
        } else {
          return sample_gamma(rng, f.alpha, f.beta);
        }
      },
      fam);
}

}  // namespace tlaw
