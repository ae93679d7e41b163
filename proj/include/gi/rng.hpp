#pragma once

#include <cstdint>
#include <random>

namespace gi {

std::uint64_t splitmix64(std::uint64_t& state);

/// Seedable, splittable random stream.
///
/// The engine is a 64-bit Mersenne Twister whose state is filled from a
/// SplitMix64 sequence started at the seed, so that neighbouring seeds give
/// unrelated streams. `split(k)` derives the k-th child stream from the
/// parent seed without consuming parent state; chains, replicas and the
/// separate phases of a run each take their own child.
///
/// Uniforms are built from the top 53 bits of one engine output. Normals come
/// from std::normal_distribution and are therefore reproducible for a given
/// standard library, not across standard libraries.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  Rng split(std::uint64_t stream) const;

  std::uint64_t seed() const { return seed_; }

  result_type operator()() { return engine_(); }
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal(double mean, double stddev) { return mean + stddev * normal_(engine_); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace gi
