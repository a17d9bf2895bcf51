#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace weakrev {

/// Reproducible random stream identified by (seed, stream_id).
///
/// Two sources built from the same pair produce bit-identical draw sequences.
/// Independent sub-streams are obtained with derive(), which never consumes
/// draws from the parent.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed = 0, std::uint64_t stream_id = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  /// Circular complex Gaussian with E|z|² = 1.
  std::complex<double> complex_normal();
  std::uint64_t next_u64() { return engine_(); }

  RandomSource derive(std::uint64_t index) const;

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace weakrev
