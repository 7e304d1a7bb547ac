#include "scenario.hpp"

#include <optional>

#include "io.hpp"
#include "specsep/error.hpp"

namespace specsep::cli {

using nlohmann::json;

namespace {

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(where + ": field '" + key + "' has the wrong type");
  }
}

template <typename T>
T field_or(const json& j, const char* key, T fallback, const std::string& where) {
  return j.contains(key) ? field<T>(j, key, where) : fallback;
}

PeakShape parse_shape(const std::string& s, const std::string& where) {
  if (s == "lorentzian") return PeakShape::Lorentzian;
  if (s == "gaussian") return PeakShape::Gaussian;
  throw ValidationError(where + ": unknown peak shape '" + s + "'");
}

const char* shape_name(PeakShape s) { return s == PeakShape::Gaussian ? "gaussian" : "lorentzian"; }

}  // namespace

ScenarioConfig scenario_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("scenario: top level must be an object");
  ScenarioConfig c;
  c.id = field_or<std::string>(j, "id", "scenario", "scenario");

  const json species = j.contains("species") ? j.at("species") : json();
  if (!species.is_array() || species.empty()) throw ValidationError("scenario: 'species' must be a non-empty array");
  for (std::size_t s = 0; s < species.size(); ++s) {
    const std::string where = "species[" + std::to_string(s) + "]";
    Fingerprint fp;
    fp.label = field_or<std::string>(species[s], "label", std::string(1, static_cast<char>('A' + s % 26)), where);
    const json peaks = species[s].contains("peaks") ? species[s].at("peaks") : json();
    if (!peaks.is_array() || peaks.empty()) throw ValidationError(where + ": 'peaks' must be a non-empty array");
    for (std::size_t p = 0; p < peaks.size(); ++p) {
      const std::string pw = where + ".peaks[" + std::to_string(p) + "]";
      fp.peaks.push_back(Peak{parse_shape(field_or<std::string>(peaks[p], "shape", "lorentzian", pw), pw),
                              field<double>(peaks[p], "base", pw), field<double>(peaks[p], "width", pw),
                              field<double>(peaks[p], "intensity", pw)});
    }
    c.fingerprints.push_back(std::move(fp));
  }

  if (!j.contains("rate_matrix")) throw ValidationError("scenario: missing field 'rate_matrix'");
  try {
    c.rate_matrix = matrix_from_json(j.at("rate_matrix"));
  } catch (const std::exception& e) {
    throw ValidationError(std::string("scenario: rate_matrix: ") + e.what());
  }
  c.h0 = field<Vector>(j, "h0", "scenario");

  const json fg = j.value("frequency_grid", json::object());
  c.f_lower = field_or<double>(fg, "lower", c.f_lower, "frequency_grid");
  c.f_upper = field_or<double>(fg, "upper", c.f_upper, "frequency_grid");
  c.f_count = field_or<std::size_t>(fg, "count", c.f_count, "frequency_grid");
  const json tg = j.value("time_grid", json::object());
  c.duration = field_or<double>(tg, "duration", c.duration, "time_grid");
  c.t_count = field_or<std::size_t>(tg, "count", c.t_count, "time_grid");

  const json noise = j.value("noise", json::object());
  c.noise.delta = field_or<double>(noise, "delta", 0.0, "noise");
  c.noise.seed = field_or<std::uint64_t>(noise, "seed", 0, "noise");

  const json inter = j.value("interference", json::object());
  c.interference.focal_points = field_or<std::vector<double>>(inter, "focal_points", {}, "interference");
  c.interference.pull = field_or<double>(inter, "pull", 0.0, "interference");

  const json an = j.value("analysis", json::object());
  c.analysis.window = field_or<std::size_t>(an, "window", c.analysis.window, "analysis");
  c.analysis.threshold_multiplier =
      field_or<double>(an, "threshold_mult", c.analysis.threshold_multiplier, "analysis");
  c.analysis.drop_ratio = field_or<double>(an, "drop_ratio", c.analysis.drop_ratio, "analysis");
  const json noisy = an.value("noisy", json::object());
  c.analysis.noisy_window = field_or<std::size_t>(noisy, "window", c.analysis.noisy_window, "analysis.noisy");
  c.analysis.noisy_threshold_multiplier =
      field_or<double>(noisy, "threshold_mult", c.analysis.noisy_threshold_multiplier, "analysis.noisy");

  // Structural validation through the domain constructors.
  const auto checked = [](const std::string& where, auto&& check) {
    try {
      check();
    } catch (const Error& e) {
      throw ValidationError("scenario: " + where + ": " + e.what());
    }
  };
  std::optional<FrequencyGrid> grid;
  checked("frequency_grid", [&] { grid = FrequencyGrid::uniform(c.f_lower, c.f_upper, c.f_count); });
  for (std::size_t s = 0; s < c.fingerprints.size(); ++s) {
    checked("species[" + std::to_string(s) + "]",
            [&] { validate_fingerprint(c.fingerprints[s], grid->lower(), grid->upper()); });
  }
  std::optional<RateMatrix> k;
  checked("rate_matrix", [&] { k = validate_rate_matrix(c.rate_matrix); });
  if (k->species() != c.fingerprints.size()) {
    throw ValidationError("scenario: rate_matrix is " + std::to_string(k->species()) + "x" +
                          std::to_string(k->species()) + " but " + std::to_string(c.fingerprints.size()) +
                          " species are listed");
  }
  checked("h0", [&] { ReactionNetwork(*k, c.h0); });
  checked("time_grid", [&] { TimeGrid::uniform(c.duration, c.t_count); });
  if (!(c.noise.delta >= 0.0)) throw ValidationError("scenario: noise: delta must be >= 0");
  if (!(c.interference.pull >= 0.0 && c.interference.pull <= 1.0)) {
    throw ValidationError("scenario: interference: pull must lie in [0, 1]");
  }
  for (double f : c.interference.focal_points) {
    if (f < c.f_lower || f > c.f_upper) {
      throw ValidationError("scenario: interference: focal point outside the frequency grid");
    }
  }
  if (c.interference.pull > 0.0 && c.interference.focal_points.empty()) {
    throw ValidationError("scenario: interference: pull > 0 needs focal points");
  }
  return c;
}

json fingerprints_to_json(const std::vector<Fingerprint>& fps) {
  json out = json::array();
  for (const auto& fp : fps) {
    json peaks = json::array();
    for (const auto& p : fp.peaks) {
      peaks.push_back({{"shape", shape_name(p.shape)}, {"base", p.base}, {"width", p.width}, {"intensity", p.intensity}});
    }
    out.push_back({{"label", fp.label}, {"peaks", peaks}});
  }
  return out;
}

json scenario_to_json(const ScenarioConfig& c) {
  return {
      {"id", c.id},
      {"species", fingerprints_to_json(c.fingerprints)},
      {"rate_matrix", matrix_to_json(c.rate_matrix)},
      {"h0", c.h0},
      {"frequency_grid", {{"lower", c.f_lower}, {"upper", c.f_upper}, {"count", c.f_count}}},
      {"time_grid", {{"duration", c.duration}, {"count", c.t_count}}},
      {"noise", {{"delta", c.noise.delta}, {"seed", c.noise.seed}}},
      {"interference", {{"focal_points", c.interference.focal_points}, {"pull", c.interference.pull}}},
      {"analysis",
       {{"window", c.analysis.window},
        {"threshold_mult", c.analysis.threshold_multiplier},
        {"drop_ratio", c.analysis.drop_ratio},
        {"noisy", {{"window", c.analysis.noisy_window}, {"threshold_mult", c.analysis.noisy_threshold_multiplier}}}}},
  };
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  try {
    return scenario_from_json(read_json(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::string config_hash(const ScenarioConfig& c) { return hex64(fnv1a(scenario_to_json(c).dump())); }

std::vector<std::string> species_labels(const ScenarioConfig& c) {
  std::vector<std::string> out;
  for (const auto& fp : c.fingerprints) out.push_back(fp.label);
  return out;
}

Synthesized synthesize_scenario(const ScenarioConfig& c) {
  const FrequencyGrid fgrid = FrequencyGrid::uniform(c.f_lower, c.f_upper, c.f_count);
  const TimeGrid tgrid = TimeGrid::uniform(c.duration, c.t_count);
  ReactionNetwork net(validate_rate_matrix(c.rate_matrix), c.h0);
  std::vector<Fingerprint> moved = apply_interference(c.fingerprints, c.interference);
  MeasurementSet clean = synthesize(moved, net, fgrid, tgrid);
  MeasurementSet noisy = add_noise(clean, c.noise);
  noisy.provenance.scenario_id = c.id;
  noisy.provenance.pull = c.interference.pull;
  Matrix w = assemble_spectra(moved, fgrid);
  KineticsMatrix h = discretize_kinetics(net, tgrid);
  return Synthesized{std::move(noisy), std::move(moved), std::move(w), std::move(h), std::move(net)};
}

}  // namespace specsep::cli
