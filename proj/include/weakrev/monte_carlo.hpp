#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>

#include "weakrev/random.hpp"

namespace weakrev {

struct MonteCarloEstimate {
  double mean = 0.0;
  /// Sample standard deviation / √samples.
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Trials are grouped in fixed-size blocks; block b draws from its own stream
/// derived from (key, b), so results depend only on the caller's RandomSource
/// state and the trial count, never on how blocks are scheduled.
inline constexpr std::size_t kMonteCarloBlock = 4096;

/// Runs `trial(RandomSource&) -> double` `samples` times and returns the mean
/// and standard error. Consumes one draw from `rng` to key the block streams.
template <typename Trial>
MonteCarloEstimate monte_carlo(std::size_t samples, RandomSource& rng, Trial&& trial) {
  MonteCarloEstimate out;
  out.samples = samples;
  if (samples == 0) return out;
  const RandomSource keyed(rng.seed(), rng.next_u64());
  const std::size_t blocks = (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    RandomSource stream = keyed.derive(b);
    const std::size_t count = std::min(kMonteCarloBlock, samples - b * kMonteCarloBlock);
    double block_sum = 0.0;
    double block_sq = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double x = trial(stream);
      block_sum += x;
      block_sq += x * x;
    }
    sum += block_sum;
    sum_sq += block_sq;
  }
  const double n = static_cast<double>(samples);
  out.mean = sum / n;
  if (samples > 1) {
    const double var = std::max(0.0, (sum_sq - n * out.mean * out.mean) / (n - 1.0));
    out.std_error = std::sqrt(var / n);
  }
  return out;
}

}  // namespace weakrev
