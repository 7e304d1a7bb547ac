#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "specsep/kinetics.hpp"
#include "specsep/matrix.hpp"
#include "specsep/spectral.hpp"

namespace specsep {

struct Provenance {
  std::string scenario_id;
  double noise_delta = 0.0;
  std::uint64_t seed = 0;
  double pull = 0.0;
};

/// Time-resolved spectra: M(i, j) is the intensity at frequency i, time j.
struct MeasurementSet {
  FrequencyGrid frequencies;
  TimeGrid times;
  NonNegMatrix m;
  Provenance provenance;
};

/// Additive half-normal noise M + delta |N|, N ~ N(0, 1) i.i.d.
struct NoiseSpec {
  double delta = 0.0;
  std::uint64_t seed = 0;
};

/// Contraction of every band position towards its nearest focal point:
/// x0 -> x0 + pull (f - x0). pull = 0 leaves bands in place, pull = 1
/// collapses them onto the focal points.
struct InterferenceSpec {
  std::vector<double> focal_points;
  double pull = 0.0;
};

/// M = W H with W from the fingerprints and H from the network, no noise.
MeasurementSet synthesize(std::span<const Fingerprint> fingerprints, const ReactionNetwork& net,
                          const FrequencyGrid& frequencies, const TimeGrid& times);

std::vector<Fingerprint> apply_interference(std::span<const Fingerprint> fingerprints,
                                            const InterferenceSpec& spec);

/// Column j draws from NormalStream::substream(seed, j), so the result
/// does not depend on evaluation order.
MeasurementSet add_noise(const MeasurementSet& ms, const NoiseSpec& spec);

}  // namespace specsep
