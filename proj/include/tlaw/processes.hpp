#pragma once

#include <cstdint>
#include <vector>

#include "tlaw/power_series.hpp"

namespace tlaw {

// Simulation configuration. Reproducibility contract: identical config
// gives bit-identical terminal samples, for any thread count, because each
// path draws from its own counter-based stream keyed by
// (seed, stream_id, path index).
struct SimConfig {
  std::int64_t n_paths = 1;
  double horizon = 0.0;      // continuous-time processes
  std::int64_t n_steps = 1;  // discrete chain: recorded steps after burn-in
  std::int64_t burn_in = 0;  // discrete chain: steps discarded
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  int threads = 0;  // 0 = TLAW_THREADS env var, else hardware concurrency
};

struct SimResult {
  std::vector<double> terminal_samples;       // length n_paths
  std::vector<std::uint64_t> event_counts;    // per-path event tally
  SimConfig config;
};

// Markov chain with total disasters: X_{n+1} = X_n + Poisson(alpha) with
// probability p, else 0; X_0 = 0. Terminal value taken after
// burn_in + n_steps steps; the event count is the number of disasters. The
// stationary law is the compound Poisson-geometric family.
SimResult simulate_disaster_chain(double alpha, double p,
                                  const SimConfig& cfg);

// Pure-death branching with immigration: clusters of pgf h arrive at the
// epochs of a rate-r Poisson process on [0, t]; a member of a cluster
// arriving at time s survives to t with probability e^{-(t-s)},
// independently. Sampled exactly by thinned arrivals (Poisson count,
// uniform epochs, binomial survivors); the event count is the number of
// clusters. The t -> infinity law is the SD distribution with canonical
// pair (r, h).
SimResult simulate_death_immigration(double rate, const PowerSeries& cluster,
                                     const SimConfig& cfg);

// phi_t(z) = exp{-r int_0^t [1 - h(1 - e^{-s}(1-z))] ds} by adaptive
// quadrature; phi_t(0) is the extinction probability at t.
double transient_pgf_death_immigration(double rate, const PowerSeries& cluster,
                                       double t, double z);

// Ornstein-Uhlenbeck process dX = -X dt + dL with L a rate-alpha compound
// Poisson of Exp(beta) jumps, X_0 = 0, sampled exactly as
// X_t = sum_i Delta_i e^{-(t - s_i)}. Terminal law tends to Gamma(alpha,
// beta); the event count is the number of jumps (zero-jump paths sit at the
// e^{-alpha t} atom).
SimResult simulate_ou_compound_poisson(double alpha, double beta,
                                       const SimConfig& cfg);

// Closed transient transform Phi_t(lambda) =
// ((1+lambda beta)/(1+lambda beta e^{-t}))^{-alpha}.
double transient_plst_ou_gamma(double alpha, double beta, double t,
                               double lambda);

// Ornstein-Uhlenbeck limit construction of the tempered-stable TweBLE
// family (alpha in (0,1), theta/(1) > 0). The subordinator driver has jump
// density (1-alpha)^{1-alpha} x^{-(alpha+1)}(alpha+theta x)e^{-theta x}
// / Gamma(1-alpha) and is approximated by a compound Poisson keeping jumps
// above jump_cutoff; the discarded drift m(eps) = int_0^eps x pi(x) dx is
// reported, and a cutoff discarding more than 5% of the driver mean is a
// configuration error.
struct TwebleOuResult {
  SimResult sim;
  double arrival_rate;          // kept-jump intensity
  double discarded_mean_rate;   // m(eps), per unit time
  double discarded_fraction;    // m(eps) / (driver mean rate)
};

TwebleOuResult simulate_tweble_ou(double alpha, double theta,
                                  const SimConfig& cfg, double jump_cutoff);

// Driver mean rate and its small-jump part, exposed for bias accounting.
double tweble_ou_driver_mean_rate(double alpha, double theta);
double tweble_ou_discarded_mean_rate(double alpha, double theta, double eps);

}  // namespace tlaw
