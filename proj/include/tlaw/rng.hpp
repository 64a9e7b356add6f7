#pragma once

#include <array>
#include <cstdint>

namespace tlaw {

// Philox4x64-10 counter-based generator. A stream is keyed by
// (seed, stream_id) with a 64-bit sequence index (typically the path
// number) folded into the counter block, so any path's stream can be
// regenerated on its own, independent of evaluation order or thread layout.
class Philox {
 public:
  explicit Philox(std::uint64_t seed, std::uint64_t stream_id = 0,
                  std::uint64_t sequence = 0) noexcept;

  std::uint64_t next_u64() noexcept;
  // 53-bit uniform in [0, 1).
  double uniform01() noexcept;
  // 52-bit uniform in (0, 1), safe under log().
  double uniform_pos() noexcept;

  // UniformRandomBitGenerator interface.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~static_cast<result_type>(0); }
  result_type operator()() noexcept { return next_u64(); }

 private:
  void refill() noexcept;

  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> ctr_;
  std::array<std::uint64_t, 4> buf_;
  int idx_;
};

// Exact samplers used by the family and process simulators. They draw only
// from the caller's stream; no global state.
double sample_exponential(Philox& rng, double scale);
double sample_normal(Philox& rng);
long long sample_poisson(Philox& rng, double mean);
double sample_gamma(Philox& rng, double shape, double scale);
// P(N = k) = (1-p) p^k, k = 0, 1, 2, ...
long long sample_geometric_failures(Philox& rng, double p);
long long sample_binomial(Philox& rng, long long n, double prob);

}  // namespace tlaw
