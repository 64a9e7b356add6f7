#include "tlaw/divisibility.hpp"

#include <cmath>
#include <limits>

#include "tlaw/errors.hpp"

namespace tlaw {

namespace {

void require_order(std::size_t order, std::size_t min_order,
                   const char* where) {
  if (order < min_order) {
    throw DomainError(std::string(where) + ": order must be >= " +
                      std::to_string(min_order));
  }
}

// exp(-alpha(1-z)) truncated.
PowerSeries poisson_series(double alpha, std::size_t order) {
  PowerSeries s(order);
  s[0] = std::exp(-alpha);
  for (std::size_t k = 0; k + 1 < order; ++k) {
    s[k + 1] = s[k] * alpha / static_cast<double>(k + 1);
  }
  return s;
}

SDCanonical finish_oracle(double rate, PowerSeries h, std::size_t order,
                          double tol) {
  SDCanonical out{rate, std::move(h), SDVerdict::SD, std::nullopt,
                  std::numeric_limits<double>::infinity(), order, tol};
  for (std::size_t k = 1; k < order; ++k) {
    const double c = out.h[k];
    if (c < out.min_coefficient) out.min_coefficient = c;
    if (c < -tol && !out.first_negative_index) {
      out.first_negative_index = k;
      out.verdict = SDVerdict::NotSD;
    }
  }
  return out;
}

}  // namespace

std::string verdict_name(SDVerdict v) {
  switch (v) {
    case SDVerdict::SD:
      return "SD";
    case SDVerdict::NotSD:
      return "NotSD";
    case SDVerdict::Inconclusive:
      return "Inconclusive";
  }
  return "unknown";
}

CompoundPoissonRep CompoundPoissonRep::normalized() const {
  const double atom = cluster[0];
  if (atom == 0.0) return *this;
  if (!(atom < 1.0)) {
    throw DomainError("normalized: cluster atom at zero must be < 1");
  }
  PowerSeries c(cluster.order());
  for (std::size_t k = 1; k < cluster.order(); ++k) {
    c[k] = cluster[k] / (1.0 - atom);
  }
  return {rate * (1.0 - atom), std::move(c)};
}

CompoundPoissonRep compound_poisson_rep(const FamilyParams& fam,
                                        std::size_t order) {
  validate(fam);
  require_order(order, 2, "compound_poisson_rep");
  if (!is_discrete(fam)) {
    throw UnsupportedError(
        "compound_poisson_rep: discrete families only (the continuous "
        "families go through tweble_sd_analysis / gamma_sd_phi0)");
  }
  return std::visit(
      [order](const auto& f) -> CompoundPoissonRep {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, NegBinParams>) {
          // Logarithmic-series clusters: rate -alpha log q,
          // cluster_k = p^k / (k log(1/q)).
          const double rate = -f.alpha * std::log(f.q());
          PowerSeries c(order);
          const double linv = 1.0 / std::log(1.0 / f.q());
          double pk = f.p;
          for (std::size_t k = 1; k < order; ++k) {
            c[k] = pk * linv / static_cast<double>(k);
            pk *= f.p;
          }
          return {rate, std::move(c)};
        } else if constexpr (std::is_same_v<T, CPGeoParams>) {
          // Clusters c(phi_tilde(z)) with c the logarithmic-series pgf;
          // computed as log(1 - p phi_tilde(z)) / log q. The cluster keeps
          // its atom at zero, c(e^{-alpha}); normalized() removes it.
          const double rate = -std::log(f.q());
          const PowerSeries phi = poisson_series(f.alpha, order);
          const PowerSeries s =
              PowerSeries::constant(1.0, order) - f.p * phi;
          const PowerSeries c = (1.0 / std::log(f.q())) * log(s);
          return {rate, c};
        } else {
          // Polya-Aeppli: Poisson(alpha) of geometric clusters
          // P(G=k) = q p^{k-1}.
          PowerSeries c(order);
          double coeff = f.q();
          for (std::size_t k = 1; k < order; ++k) {
            c[k] = coeff;
            coeff *= f.p;
          }
          return {f.alpha, std::move(c)};
        }
      },
      static_cast<const FamilyParams&>(fam));
}

PowerSeries sd_reconstruct(double rate, const PowerSeries& h, double phi0) {
  const std::size_t order = h.order();
  const PowerSeries one_minus_h = PowerSeries::constant(1.0, order) - h;
  PowerSeries one_minus_z(order);
  one_minus_z[0] = 1.0;
  if (order > 1) one_minus_z[1] = -1.0;
  const PowerSeries integrand = one_minus_h / one_minus_z;
  const PowerSeries integral = antiderivative(integrand);
  return phi0 * exp(rate * integral);
}

SDCanonical sd_canonical(const FamilyParams& fam, std::size_t order,
                         double tol) {
  validate(fam);
  require_order(order, 16, "sd_canonical");
  if (!(tol > 0.0)) throw DomainError("sd_canonical: tol must be > 0");
  if (!is_discrete(fam)) {
    throw UnsupportedError(
        "sd_canonical: discrete families only (the continuous families go "
        "through tweble_sd_analysis / gamma_sd_phi0)");
  }
  return std::visit(
      [order, tol](const auto& f) -> SDCanonical {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, NegBinParams>) {
          // r = alpha p, h(z) = qz/(1-pz): h_k = q p^{k-1}.
          PowerSeries h(order);
          double coeff = f.q();
          for (std::size_t k = 1; k < order; ++k) {
            h[k] = coeff;
            coeff *= f.p;
          }
          return finish_oracle(f.alpha * f.p, std::move(h), order, tol);
        } else if constexpr (std::is_same_v<T, CPGeoParams>) {
          // Forcing h(0) = 0 gives r = p alpha e^{-alpha}/(1 - p e^{-alpha})
          // and h = N(z) / (r (1 - p phi_tilde)) with
          // N(z) = r(1 - p phi_tilde) - p(1-z) phi_tilde'.
          const double b0 = std::exp(-f.alpha);
          const double rate =
              f.p * f.alpha * b0 / (1.0 - f.p * b0);
          const PowerSeries phi = poisson_series(f.alpha, order);
          const PowerSeries dphi = derivative(phi);
          PowerSeries one_minus_z(order);
          one_minus_z[0] = 1.0;
          if (order > 1) one_minus_z[1] = -1.0;
          const PowerSeries den =
              rate * (PowerSeries::constant(1.0, order) - f.p * phi);
          const PowerSeries num = den - (f.p * (one_minus_z * dphi));
          return finish_oracle(rate, num / den, order, tol);
        } else {
          // r = alpha q, h(z) = z(1-2p+p^2 z)/(1-pz)^2 by series division.
          PowerSeries num(order);
          num[1] = 1.0 - 2.0 * f.p;
          if (order > 2) num[2] = f.p * f.p;
          PowerSeries lin(order);
          lin[0] = 1.0;
          lin[1] = -f.p;
          const PowerSeries den = lin * lin;
          return finish_oracle(f.alpha * f.q(), num / den, order, tol);
        }
      },
      static_cast<const FamilyParams&>(fam));
}

ReferenceClaim reference_claim(const FamilyParams& fam,
                               const SDCanonical& oracle) {
  validate(fam);
  const bool oracle_sd = oracle.verdict == SDVerdict::SD;
  return std::visit(
      [oracle_sd](const auto& f) -> ReferenceClaim {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, NegBinParams>) {
          return {"negative binomial is SD for all alpha > 0, p in (0,1)",
                  true, oracle_sd == true};
        } else if constexpr (std::is_same_v<T, CPGeoParams>) {
          // Published sufficient condition p >= alpha/(1 - alpha e^{-alpha})
          // (nontrivial only when that threshold is below 1). Silent
          // elsewhere.
          const double pstar = f.alpha / (1.0 - f.alpha * std::exp(-f.alpha));
          ReferenceClaim claim;
          claim.description =
              "sufficient condition: SD if p >= alpha/(1 - alpha e^{-alpha})"
              " = " +
              std::to_string(pstar);
          if (pstar > 0.0 && pstar < 1.0 && f.p >= pstar) {
            claim.claims_sd = true;
            claim.agrees_with_oracle = oracle_sd;
          } else {
            claim.claims_sd = std::nullopt;
            claim.agrees_with_oracle = true;  // vacuous
          }
          return claim;
        } else if constexpr (std::is_same_v<T, PolyaAeppliParams>) {
          // Published statement: h absolutely monotone iff p > 1/2. The
          // coefficient oracle finds the opposite sign ([z]h = 1-2p), so
          // this claim is expected to disagree.
          ReferenceClaim claim;
          claim.description =
              "reported condition: canonical h absolutely monotone only "
              "when p > 1/2";
          claim.claims_sd = f.p > 0.5;
          claim.agrees_with_oracle = (*claim.claims_sd == oracle_sd);
          return claim;
        } else {
          throw UnsupportedError(
              "reference_claim: discrete families only");
        }
      },
      fam);
}

CompoundGeometricRep compound_geometric_rep(const NegBinParams& fam,
                                            std::size_t order) {
  validate(FamilyParams(fam));
  require_order(order, 2, "compound_geometric_rep");
  if (!(fam.alpha > 0.0 && fam.alpha < 1.0)) {
    throw DomainError(
        "compound_geometric_rep: requires 0 < alpha < 1 (the negative "
        "binomial is compound geometric only in that range)");
  }
  const double q = fam.q();
  const double pi = 1.0 - std::pow(q, fam.alpha);
  // inner(z) = (1 - (1-pz)^alpha)/(1 - q^alpha); coefficient n is
  // p^n alpha [1-alpha]_{n-1} / (n! (1-q^alpha)) with the rising factorial
  // [x]_n = x(x+1)...(x+n-1); the ratio recursion keeps it stable.
  PowerSeries inner(order);
  const double abar = 1.0 - fam.alpha;
  double term = fam.p * fam.alpha / pi;  // n = 1
  for (std::size_t n = 1; n < order; ++n) {
    inner[n] = term;
    term *= fam.p * (abar + static_cast<double>(n) - 1.0) /
            (static_cast<double>(n) + 1.0);
  }
  return {pi, std::move(inner)};
}

double tweble_l0(double alpha, double theta, double lambda) {
  return std::pow(1.0 - alpha, 1.0 - alpha) * lambda *
         std::pow(theta + lambda, alpha - 1.0);
}

double tweble_l0_prime(double alpha, double theta, double lambda) {
  return std::pow(1.0 - alpha, 1.0 - alpha) *
         std::pow(theta + lambda, alpha - 2.0) * (theta + lambda * alpha);
}

double tweble_levy_density(double alpha, double theta, double x) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("tweble_levy_density: requires alpha in (0,1)");
  }
  if (!(x > 0.0)) throw DomainError("tweble_levy_density: requires x > 0");
  return std::pow(x, -(alpha + 1.0)) * (alpha + theta * x) *
         std::exp(-theta * x) / std::tgamma(1.0 - alpha);
}

TwebleSDAnalysis tweble_sd_analysis(double alpha, double theta,
                                    const std::vector<double>& lambda_grid) {
  if (std::isinf(alpha) && alpha < 0.0) {
    throw UnsupportedError(
        "tweble_sd_analysis: the Poisson limit is outside this analysis "
        "(lattice laws need the thinning notion of self-decomposability)");
  }
  if (!(alpha < 1.0)) {
    throw UnsupportedError(
        "tweble_sd_analysis: alpha in [1,2] (tempered-stable regime) is not "
        "covered by this analysis");
  }
  validate(FamilyParams(TwebleParams{alpha, theta}));
  TwebleSDAnalysis out;
  out.l0_values.reserve(lambda_grid.size());
  for (const double lam : lambda_grid) {
    if (!(lam >= 0.0)) {
      throw DomainError("tweble_sd_analysis: lambda grid must be >= 0");
    }
    out.l0_values.emplace_back(lam, tweble_l0(alpha, theta, lam));
  }
  if (alpha < 0.0) {
    out.verdict = SDVerdict::NotSD;
    const double lambda_c = -theta / alpha;
    out.lambda_c = lambda_c;
    // L0'(lambda) < 0 exactly for lambda > lambda_c; witness one such point.
    double witness = 2.0 * lambda_c;
    while (!(tweble_l0_prime(alpha, theta, witness) < 0.0)) witness *= 2.0;
    out.witness_lambda = witness;
    return out;
  }
  out.verdict = SDVerdict::SD;
  if (alpha > 0.0) {
    // Tabulate the tempered jump density on a log grid.
    const int n = 200;
    const double x_lo = 1e-6 / theta;
    const double x_hi = 50.0 / theta;
    out.levy_density.reserve(n);
    for (int i = 0; i < n; ++i) {
      const double x =
          x_lo * std::pow(x_hi / x_lo, static_cast<double>(i) / (n - 1));
      out.levy_density.emplace_back(x, tweble_levy_density(alpha, theta, x));
    }
  }
  return out;
}

double gamma_sd_phi0(const GammaParams& fam, double lambda) {
  validate(FamilyParams(fam));
  if (!(lambda >= 0.0)) throw DomainError("gamma_sd_phi0: lambda must be >= 0");
  return std::exp(-fam.alpha * (1.0 - 1.0 / (1.0 + lambda * fam.beta)));
}

PowerSeries sd_thin_component_pgf(const FamilyParams& fam, double c,
                                  std::size_t order) {
  validate(fam);
  if (!is_discrete(fam)) {
    throw UnsupportedError("sd_thin_component_pgf: discrete families only");
  }
  if (!(c >= 0.0 && c < 1.0)) {
    throw DomainError("sd_thin_component_pgf: c must be in [0,1)");
  }
  const SDCanonical oracle = sd_canonical(fam, order);
  const PowerSeries phi = pgf_series(fam, order);
  const PowerSeries thinned = bernoulli_thin(phi, c);
  const PowerSeries ratio = phi / thinned;
  if (oracle.verdict != SDVerdict::SD) {
    std::size_t bad = oracle.first_negative_index.value_or(0);
    for (std::size_t k = 0; k < order; ++k) {
      if (ratio[k] < -1e-10) {
        bad = k;
        break;
      }
    }
    throw DomainError(
        "sd_thin_component_pgf: family is not SD; the component ratio has a "
        "negative coefficient near index " +
        std::to_string(bad));
  }
  return ratio;
}

}  // namespace tlaw
