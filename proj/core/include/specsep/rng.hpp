#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace specsep {

/// Portable normal-variate stream.
///
/// Engine: std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Uniforms take the top 53 bits of each draw; normals use the
/// Marsaglia polar method. Both transforms are implemented here because
/// the standard distributions are implementation-defined, so the same
/// seed yields the same stream on every platform.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream number `index` derived from a base seed, via a
  /// splitmix64 mix of (seed, index).
  static NormalStream substream(std::uint64_t seed, std::uint64_t index);

  double uniform();  // [0, 1)
  double normal();   // N(0, 1)

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace specsep
