#include "specsep/pipeline.hpp"

#include "specsep/error.hpp"

namespace specsep {

AnalysisResult analyze_measurements(const MeasurementSet& ms, const AnalysisOptions& options) {
  FilterResult pre = preprocess(ms.m, options.threshold_multiplier, options.window);

  std::size_t species = 0;
  if (options.species) {
    if (*options.species == 0) throw ValidationError("analyze: species count must be >= 1");
    species = *options.species;
  } else {
    species = estimate_species_count(pre.m, options.drop_ratio);
    if (species == 0) throw ValidationError("analyze: measurement matrix is zero");
  }

  UnmixResult u = unmix(pre.m, species);
  SelectedIndices selected = std::move(u.selected);
  std::vector<double> frequencies;
  for (std::size_t& idx : selected.original_indices) {
    idx = pre.report.kept_row_map[idx];
    frequencies.push_back(ms.frequencies[idx]);
  }

  const NonNegMatrix full = smooth_time(ms.m, options.window);
  NonNegMatrix w = recover_spectra(full, u.h);
  const double denom = frobenius_norm(full.get());
  const double residual =
      denom > 0.0 ? frobenius_norm(full.get() - w.get() * u.h.get()) / denom : 0.0;
  return AnalysisResult{
      .preprocess = std::move(pre.report),
      .species = species,
      .species_estimated = !options.species.has_value(),
      .h = KineticsMatrix{u.h.get(), ms.times},
      .w = std::move(w),
      .selected = std::move(selected),
      .characteristic_frequencies = std::move(frequencies),
      .scaling = std::move(u.scaling),
      .relative_residual = residual,
      .warnings = std::move(u.warnings),
  };
}

}  // namespace specsep
