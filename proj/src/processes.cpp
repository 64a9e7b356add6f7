#include "tlaw/processes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <thread>

#include "tlaw/errors.hpp"
#include "tlaw/rng.hpp"
#include "tlaw/special.hpp"

namespace tlaw {

namespace {

int resolve_threads(const SimConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("TLAW_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void check_paths(const SimConfig& cfg) {
  if (cfg.n_paths < 1) {
    throw ConfigError("simulate: n_paths must be >= 1");
  }
}

// Runs body(path, rng) for every path, partitioned over threads. Each path
// owns stream (seed, stream_id, path) and writes only its own slot, so the
// output does not depend on the partitioning.
void for_each_path(const SimConfig& cfg,
                   const std::function<void(std::int64_t, Philox&)>& body) {
  const int threads = resolve_threads(cfg);
  if (threads <= 1 || cfg.n_paths < 2 * threads) {
    for (std::int64_t i = 0; i < cfg.n_paths; ++i) {
      Philox rng(cfg.seed, cfg.stream_id, static_cast<std::uint64_t>(i));
      body(i, rng);
    }
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  const std::int64_t chunk = (cfg.n_paths + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::int64_t lo = t * chunk;
    const std::int64_t hi = std::min(cfg.n_paths, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &cfg, &body]() {
      for (std::int64_t i = lo; i < hi; ++i) {
        Philox rng(cfg.seed, cfg.stream_id, static_cast<std::uint64_t>(i));
        body(i, rng);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

SimResult simulate_disaster_chain(double alpha, double p,
                                  const SimConfig& cfg) {
  if (!(alpha > 0.0)) {
    throw DomainError("disaster chain: alpha must be > 0");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError(
        "disaster chain: p must be in (0,1); p = 0 or 1 degenerates the "
        "chain");
  }
  check_paths(cfg);
  if (cfg.burn_in < 0 || cfg.n_steps < 1) {
    throw ConfigError("disaster chain: burn_in >= 0 and n_steps >= 1");
  }
  const std::int64_t total_steps = cfg.burn_in + cfg.n_steps;
  SimResult out;
  out.config = cfg;
  out.terminal_samples.assign(static_cast<std::size_t>(cfg.n_paths), 0.0);
  out.event_counts.assign(static_cast<std::size_t>(cfg.n_paths), 0);
  const double exp_neg_alpha = std::exp(-alpha);
  for_each_path(cfg, [&](std::int64_t path, Philox& rng) {
    std::int64_t x = 0;
    std::uint64_t disasters = 0;
    for (std::int64_t step = 0; step < total_steps; ++step) {
      if (rng.uniform01() < p) {
        // Knuth draw inlined with the precomputed exp(-alpha).
        long long k = 0;
        double prod = rng.uniform_pos();
        while (prod > exp_neg_alpha) {
          prod *= rng.uniform_pos();
          ++k;
        }
        x += k;
      } else {
        x = 0;
        ++disasters;
      }
    }
    out.terminal_samples[static_cast<std::size_t>(path)] =
        static_cast<double>(x);
    out.event_counts[static_cast<std::size_t>(path)] = disasters;
  });
  return out;
}

SimResult simulate_death_immigration(double rate, const PowerSeries& cluster,
                                     const SimConfig& cfg) {
  if (!(rate > 0.0)) {
    throw DomainError("death-immigration: rate must be > 0");
  }
  if (cluster[0] != 0.0) {
    throw DomainError("death-immigration: cluster pgf must have h(0) = 0");
  }
  check_paths(cfg);
  if (!(cfg.horizon >= 0.0)) {
    throw ConfigError("death-immigration: horizon must be >= 0");
  }
  // Cumulative cluster-size table from the coefficients; the truncated tail
  // (< 1e-12 for any reasonable order) is folded into the top size.
  std::vector<double> cdf;
  cdf.reserve(cluster.order());
  double acc = 0.0;
  for (std::size_t k = 1; k < cluster.order(); ++k) {
    double c = cluster[k];
    if (c < 0.0) {
      if (c < -1e-12) {
        throw DomainError(
            "death-immigration: invalid cluster pgf, negative coefficient "
            "at index " +
            std::to_string(k));
      }
      c = 0.0;
    }
    acc += c;
    cdf.push_back(acc);
  }
  if (!(acc > 0.0)) {
    throw DomainError("death-immigration: cluster pgf has no mass");
  }
  const double total = acc;
  const double t = cfg.horizon;
  SimResult out;
  out.config = cfg;
  out.terminal_samples.assign(static_cast<std::size_t>(cfg.n_paths), 0.0);
  out.event_counts.assign(static_cast<std::size_t>(cfg.n_paths), 0);
  for_each_path(cfg, [&](std::int64_t path, Philox& rng) {
    const long long clusters = sample_poisson(rng, rate * t);
    long long alive = 0;
    for (long long i = 0; i < clusters; ++i) {
      const double s = t * rng.uniform01();
      const double survive = std::exp(-(t - s));
      const double u = total * rng.uniform01();
      std::size_t lo = 0, hi = cdf.size() - 1;
      while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (cdf[mid] > u) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
      }
      const long long size = static_cast<long long>(lo) + 1;
      alive += sample_binomial(rng, size, survive);
    }
    out.terminal_samples[static_cast<std::size_t>(path)] =
        static_cast<double>(alive);
    out.event_counts[static_cast<std::size_t>(path)] =
        static_cast<std::uint64_t>(clusters);
  });
  return out;
}

double transient_pgf_death_immigration(double rate, const PowerSeries& cluster,
                                       double t, double z) {
  if (!(rate > 0.0)) {
    throw DomainError("transient pgf: rate must be > 0");
  }
  if (!(t >= 0.0)) throw DomainError("transient pgf: t must be >= 0");
  if (!(z >= 0.0 && z <= 1.0)) {
    throw DomainError("transient pgf: z must be in [0,1]");
  }
  if (t == 0.0) return 1.0;
  const auto integrand = [&](double s) {
    const double u = 1.0 - std::exp(-s) * (1.0 - z);
    return 1.0 - evaluate(cluster, u);
  };
  const double integral = integrate(integrand, 0.0, t, 1e-12);
  return std::exp(-rate * integral);
}

SimResult simulate_ou_compound_poisson(double alpha, double beta,
                                       const SimConfig& cfg) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw DomainError("ou-gamma: requires alpha > 0 and beta > 0");
  }
  check_paths(cfg);
  if (!(cfg.horizon >= 0.0)) {
    throw ConfigError("ou-gamma: horizon must be >= 0");
  }
  const double t = cfg.horizon;
  SimResult out;
  out.config = cfg;
  out.terminal_samples.assign(static_cast<std::size_t>(cfg.n_paths), 0.0);
  out.event_counts.assign(static_cast<std::size_t>(cfg.n_paths), 0);
  for_each_path(cfg, [&](std::int64_t path, Philox& rng) {
    const long long jumps = sample_poisson(rng, alpha * t);
    double x = 0.0;
    for (long long i = 0; i < jumps; ++i) {
      const double s = t * rng.uniform01();
      x += sample_exponential(rng, beta) * std::exp(-(t - s));
    }
    out.terminal_samples[static_cast<std::size_t>(path)] = x;
    out.event_counts[static_cast<std::size_t>(path)] =
        static_cast<std::uint64_t>(jumps);
  });
  return out;
}

double transient_plst_ou_gamma(double alpha, double beta, double t,
                               double lambda) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw DomainError("ou-gamma transform: requires alpha > 0 and beta > 0");
  }
  if (!(t >= 0.0) || !(lambda >= 0.0)) {
    throw DomainError("ou-gamma transform: requires t >= 0 and lambda >= 0");
  }
  return std::pow((1.0 + lambda * beta) / (1.0 + lambda * beta * std::exp(-t)),
                  -alpha);
}

namespace {

// Small-jump mean int_0^eps x pi(x) dx via the regularized lower incomplete
// gamma; pi here includes the (1-alpha)^{1-alpha} driver normalization.
double discarded_mean_rate_impl(double alpha, double theta, double eps) {
  const double g1 = std::tgamma(1.0 - alpha);
  const double g2 = std::tgamma(2.0 - alpha);
  const double x = theta * eps;
  const double part =
      alpha * gamma_p(1.0 - alpha, x) * g1 + gamma_p(2.0 - alpha, x) * g2;
  return std::pow(1.0 - alpha, 1.0 - alpha) * std::pow(theta, alpha - 1.0) *
         part / g1;
}

}  // namespace

double tweble_ou_driver_mean_rate(double alpha, double theta) {
  return std::pow(1.0 - alpha, 1.0 - alpha) * std::pow(theta, alpha - 1.0);
}

double tweble_ou_discarded_mean_rate(double alpha, double theta, double eps) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(theta > 0.0) || !(eps > 0.0)) {
    throw DomainError(
        "tweble-ou: requires alpha in (0,1), theta > 0, eps > 0");
  }
  return discarded_mean_rate_impl(alpha, theta, eps);
}

TwebleOuResult simulate_tweble_ou(double alpha, double theta,
                                  const SimConfig& cfg, double jump_cutoff) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("tweble-ou: requires alpha in (0,1)");
  }
  if (!(theta > 0.0)) throw DomainError("tweble-ou: requires theta > 0");
  if (!(jump_cutoff > 0.0)) {
    throw ConfigError("tweble-ou: jump cutoff must be > 0");
  }
  check_paths(cfg);
  if (!(cfg.horizon >= 0.0)) {
    throw ConfigError("tweble-ou: horizon must be >= 0");
  }
  const double eps = jump_cutoff;
  const double mean_rate = tweble_ou_driver_mean_rate(alpha, theta);
  const double discarded = discarded_mean_rate_impl(alpha, theta, eps);
  const double fraction = discarded / mean_rate;
  if (fraction > 0.05) {
    throw ConfigError(
        "tweble-ou: jump cutoff discards " + std::to_string(fraction) +
        " of the driver mean (limit 0.05); lower the cutoff");
  }
  const double g1 = std::tgamma(1.0 - alpha);
  // Kept-jump intensity: (1-alpha)^{1-alpha} eps^{-alpha} e^{-theta eps}
  // / Gamma(1-alpha), the closed form of the tail integral of pi.
  const double arrival_rate = std::pow(1.0 - alpha, 1.0 - alpha) *
                              std::pow(eps, -alpha) *
                              std::exp(-theta * eps) / g1;
  // Mixture weights of the two density components on (eps, inf):
  //   A: alpha x^{-alpha-1} e^{-theta x}
  //   B: theta x^{-alpha} e^{-theta x}  (left-truncated gamma)
  const double upper_g = gamma_q(1.0 - alpha, theta * eps) * g1;
  const double w_b = std::pow(theta, alpha) * upper_g;
  const double w_a =
      std::max(0.0, std::pow(eps, -alpha) * std::exp(-theta * eps) - w_b);
  const double prob_a = w_a / (w_a + w_b);
  const double t = cfg.horizon;

  TwebleOuResult out;
  out.arrival_rate = arrival_rate;
  out.discarded_mean_rate = discarded;
  out.discarded_fraction = fraction;
  out.sim.config = cfg;
  out.sim.terminal_samples.assign(static_cast<std::size_t>(cfg.n_paths), 0.0);
  out.sim.event_counts.assign(static_cast<std::size_t>(cfg.n_paths), 0);

  const auto sample_jump = [alpha, theta, eps, prob_a](Philox& rng) {
    if (rng.uniform01() < prob_a) {
      // Pareto proposal x = eps u^{-1/alpha}, accept with e^{-theta x}.
      for (;;) {
        const double x = eps * std::pow(rng.uniform_pos(), -1.0 / alpha);
        if (rng.uniform01() <= std::exp(-theta * x)) return x;
      }
    }
    // Gamma(1-alpha, 1/theta) conditioned on exceeding eps.
    for (;;) {
      const double x = sample_gamma(rng, 1.0 - alpha, 1.0 / theta);
      if (x > eps) return x;
    }
  };

  for_each_path(cfg, [&](std::int64_t path, Philox& rng) {
    const long long jumps = sample_poisson(rng, arrival_rate * t);
    double x = 0.0;
    for (long long i = 0; i < jumps; ++i) {
      const double s = t * rng.uniform01();
      x += sample_jump(rng) * std::exp(-(t - s));
    }
    out.sim.terminal_samples[static_cast<std::size_t>(path)] = x;
    out.sim.event_counts[static_cast<std::size_t>(path)] =
        static_cast<std::uint64_t>(jumps);
  });
  return out;
}

}  // namespace tlaw
