#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "specsep/datagen.hpp"
#include "specsep/matrix.hpp"

namespace specsep::cli {

/// Labelled numeric table: a header row, then rows of "label,v1,...,vk".
struct Table {
  std::string corner;
  std::vector<std::string> column_labels;
  std::vector<std::string> row_labels;
  Matrix values;
};

/// 17 significant digits, so parsing the text gives back the same double.
std::string format_double(double v);
/// Shortest text that reads back to the same double.
std::string format_shortest(double v);
double parse_double(const std::string& text);

void write_table(const std::filesystem::path& path, const Table& table);
Table read_table(const std::filesystem::path& path);

/// Header row holds the times, first column the frequencies.
void write_measurements(const std::filesystem::path& path, const MeasurementSet& ms);
MeasurementSet read_measurements(const std::filesystem::path& path);

/// Species x times table with the times in the header.
void write_kinetics(const std::filesystem::path& path, const KineticsMatrix& h,
                    const std::vector<std::string>& labels);
KineticsMatrix read_kinetics(const std::filesystem::path& path);

/// Frequencies x species table with the frequencies in the first column.
void write_spectra(const std::filesystem::path& path, const Matrix& w, const FrequencyGrid& grid,
                   const std::vector<std::string>& labels);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t v);
std::string read_file(const std::filesystem::path& path);

}  // namespace specsep::cli
