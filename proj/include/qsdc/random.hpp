#pragma once

#include <cstdint>
#include <random>

namespace qsdc {

using Bit = std::uint8_t;

/// Independent stream families drawn from one master seed.
enum class StreamTag : std::uint64_t {
  Planning = 1,
  Episode = 2,
  Message = 3,
  Sampling = 4,
};

/// Seeded random source passed explicitly to every probabilistic operation.
///
/// Streams for distinct (master seed, tag, index) triples are derived with a
/// splitmix64 mixer, so episode i gets the same stream regardless of which
/// worker runs it or in what order.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream derive(std::uint64_t master_seed, StreamTag tag,
                             std::uint64_t index = 0);

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  Bit bit() { return static_cast<Bit>(engine_() >> 63); }

  /// Unbiased integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double p) { return p >= 1.0 || uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace qsdc
