#include "tlaw/rng.hpp"

#include <cmath>

#include "tlaw/errors.hpp"

namespace tlaw {

namespace {

constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) noexcept {
  const unsigned __int128 prod =
      static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
  hi = static_cast<std::uint64_t>(prod >> 64);
  lo = static_cast<std::uint64_t>(prod);
}

inline void philox_round(std::array<std::uint64_t, 4>& x,
                         const std::array<std::uint64_t, 2>& k) noexcept {
  std::uint64_t hi0, lo0, hi1, lo1;
  mulhilo(kPhiloxM0, x[0], hi0, lo0);
  mulhilo(kPhiloxM1, x[2], hi1, lo1);
  x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

}  // namespace

Philox::Philox(std::uint64_t seed, std::uint64_t stream_id,
               std::uint64_t sequence) noexcept
    : key_{seed, stream_id}, ctr_{0, 0, sequence, 0}, buf_{}, idx_(4) {}

void Philox::refill() noexcept {
  std::array<std::uint64_t, 4> x = ctr_;
  std::array<std::uint64_t, 2> k = key_;
  for (int round = 0; round < 9; ++round) {
    philox_round(x, k);
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  philox_round(x, k);
  buf_ = x;
  idx_ = 0;
  if (++ctr_[0] == 0) ++ctr_[1];  // 128-bit block counter, never wraps
}

std::uint64_t Philox::next_u64() noexcept {
  if (idx_ >= 4) refill();
  return buf_[static_cast<std::size_t>(idx_++)];
}

double Philox::uniform01() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1p-53;
}

double Philox::uniform_pos() noexcept {
  return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1p-52;
}

double sample_exponential(Philox& rng, double scale) {
  return -scale * std::log(rng.uniform_pos());
}

double sample_normal(Philox& rng) {
  const double u = rng.uniform_pos();
  const double v = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
}

namespace {

// Knuth's product method; l = exp(-mean).
long long poisson_knuth(Philox& rng, double l) {
  long long k = 0;
  double prod = rng.uniform_pos();
  while (prod > l) {
    prod *= rng.uniform_pos();
    ++k;
  }
  return k;
}

}  // namespace

long long sample_poisson(Philox& rng, double mean) {
  if (!(mean >= 0.0)) throw DomainError("sample_poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  // Split large means by Poisson additivity so exp(-mean) stays well away
  // from the underflow threshold.
  static const double kChunkL = std::exp(-30.0);
  long long total = 0;
  while (mean > 30.0) {
    total += poisson_knuth(rng, kChunkL);
    mean -= 30.0;
  }
  return total + poisson_knuth(rng, std::exp(-mean));
}

double sample_gamma(Philox& rng, double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw DomainError("sample_gamma: requires shape > 0 and scale > 0");
  }
  if (shape < 1.0) {
    // Boost to shape+1, then multiply by U^{1/shape}.
    const double g = sample_gamma(rng, shape + 1.0, 1.0);
    return scale * g * std::pow(rng.uniform_pos(), 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = sample_normal(rng);
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.uniform_pos();
    if (u < 1.0 - 0.0331 * x * x * x * x) return scale * d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return scale * d * v;
    }
  }
}

long long sample_geometric_failures(Philox& rng, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("sample_geometric_failures: p must be in (0,1)");
  }
  return static_cast<long long>(
      std::floor(std::log(rng.uniform_pos()) / std::log(p)));
}

long long sample_binomial(Philox& rng, long long n, double prob) {
  if (n < 0 || !(prob >= 0.0 && prob <= 1.0)) {
    throw DomainError("sample_binomial: requires n >= 0 and prob in [0,1]");
  }
  long long count = 0;
  for (long long i = 0; i < n; ++i) {
    if (rng.uniform01() < prob) ++count;
  }
  return count;
}

}  // namespace tlaw
