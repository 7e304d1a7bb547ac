#include "specsep/datagen.hpp"

#include <cmath>

#include "specsep/error.hpp"
#include "specsep/rng.hpp"

namespace specsep {

MeasurementSet synthesize(std::span<const Fingerprint> fingerprints, const ReactionNetwork& net,
                          const FrequencyGrid& frequencies, const TimeGrid& times) {
  if (fingerprints.size() != net.species()) {
    throw DimensionError("synthesize: " + std::to_string(fingerprints.size()) + " fingerprints for a " +
                         std::to_string(net.species()) + "-species network");
  }
  const Matrix w = assemble_spectra(fingerprints, frequencies);
  const KineticsMatrix h = discretize_kinetics(net, times);
  Matrix m = w * h.h;
  // Rounding can leave -0.0 or tiny negatives only if inputs were negative; W, H >= 0 here.
  return MeasurementSet{frequencies, times, NonNegMatrix(std::move(m)), {}};
}

std::vector<Fingerprint> apply_interference(std::span<const Fingerprint> fingerprints,
                                            const InterferenceSpec& spec) {
  if (!(spec.pull >= 0.0 && spec.pull <= 1.0)) {
    throw ValidationError("interference pull must lie in [0, 1], got " + std::to_string(spec.pull));
  }
  std::vector<Fingerprint> out(fingerprints.begin(), fingerprints.end());
  if (spec.pull == 0.0) return out;
  if (spec.focal_points.empty()) throw ValidationError("interference needs at least one focal point");
  for (Fingerprint& w : out) {
    for (Peak& p : w.peaks) {
      double focal = spec.focal_points.front();
      for (double f : spec.focal_points) {
        if (std::abs(f - p.base) < std::abs(focal - p.base)) focal = f;
      }
      p.base = spec.pull == 1.0 ? focal : p.base + spec.pull * (focal - p.base);
    }
  }
  return out;
}

MeasurementSet add_noise(const MeasurementSet& ms, const NoiseSpec& spec) {
  if (!(spec.delta >= 0.0) || !std::isfinite(spec.delta)) {
    throw ValidationError("noise delta must be >= 0");
  }
  MeasurementSet out = ms;
  out.provenance.noise_delta = spec.delta;
  out.provenance.seed = spec.seed;
  if (spec.delta == 0.0) return out;

  Matrix m = ms.m.get();
  for (std::size_t j = 0; j < m.cols(); ++j) {
    NormalStream stream = NormalStream::substream(spec.seed, j);
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) += spec.delta * std::abs(stream.normal());
  }
  out.m = NonNegMatrix(std::move(m));
  return out;
}

}  // namespace specsep
