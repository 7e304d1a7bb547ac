#include "io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "specsep/error.hpp"

namespace specsep::cli {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  const char* first = text.data() + b;
  if (first != text.data() + e && *first == '+') ++first;
  double v = 0.0;
  const auto res = std::from_chars(first, text.data() + e, v);
  if (res.ec != std::errc() || res.ptr != text.data() + e) {
    throw ValidationError("not a number: '" + text + "'");
  }
  return v;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::vector<std::string> number_labels(std::span<const double> v) {
  std::vector<std::string> out;
  for (double x : v) out.push_back(format_double(x));
  return out;
}

std::vector<double> parse_labels(const std::vector<std::string>& labels, const std::string& what,
                                 const fs::path& path) {
  std::vector<double> out;
  for (const auto& l : labels) {
    try {
      out.push_back(parse_double(l));
    } catch (const ValidationError&) {
      throw ValidationError(path.string() + ": " + what + " label '" + l + "' is not a number");
    }
  }
  return out;
}

}  // namespace

void write_table(const fs::path& path, const Table& table) {
  if (table.column_labels.size() != table.values.cols() || table.row_labels.size() != table.values.rows()) {
    throw DimensionError("write_table: label counts do not match the matrix");
  }
  std::ofstream out = open_out(path);
  out << table.corner;
  for (const auto& c : table.column_labels) out << ',' << c;
  out << '\n';
  for (std::size_t i = 0; i < table.values.rows(); ++i) {
    out << table.row_labels[i];
    for (double v : table.values.row(i)) out << ',' << format_double(v);
    out << '\n';
  }
  if (!out) throw Error("write failed for " + path.string());
}

Table read_table(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(path.string() + ": empty file");
  std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 2) throw ValidationError(path.string() + ": header needs at least one column");
  Table t;
  t.corner = header.front();
  t.column_labels.assign(header.begin() + 1, header.end());
  std::vector<Vector> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                            std::to_string(header.size()) + " fields, found " + std::to_string(cells.size()));
    }
    t.row_labels.push_back(cells.front());
    Vector r;
    for (std::size_t k = 1; k < cells.size(); ++k) {
      try {
        r.push_back(parse_double(cells[k]));
      } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw ValidationError(path.string() + ": no data rows");
  t.values = Matrix::from_rows(rows);
  return t;
}

void write_measurements(const fs::path& path, const MeasurementSet& ms) {
  write_table(path, Table{"frequency", number_labels(ms.times.points()), number_labels(ms.frequencies.points()),
                          ms.m.get()});
}

MeasurementSet read_measurements(const fs::path& path) {
  Table t = read_table(path);
  auto times = parse_labels(t.column_labels, "time", path);
  auto freqs = parse_labels(t.row_labels, "frequency", path);
  try {
    return MeasurementSet{FrequencyGrid(std::move(freqs)), TimeGrid(std::move(times)),
                          NonNegMatrix(std::move(t.values)), {}};
  } catch (const Error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_kinetics(const fs::path& path, const KineticsMatrix& h, const std::vector<std::string>& labels) {
  write_table(path, Table{"species", number_labels(h.grid.points()), labels, h.h});
}

KineticsMatrix read_kinetics(const fs::path& path) {
  Table t = read_table(path);
  auto times = parse_labels(t.column_labels, "time", path);
  try {
    return KineticsMatrix{std::move(t.values), TimeGrid(std::move(times))};
  } catch (const Error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_spectra(const fs::path& path, const Matrix& w, const FrequencyGrid& grid,
                   const std::vector<std::string>& labels) {
  write_table(path, Table{"frequency", labels, number_labels(grid.points()), w});
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("matrix must be a non-empty array of rows");
  std::vector<Vector> rows;
  for (const auto& r : j) rows.push_back(r.get<Vector>());
  return Matrix::from_rows(rows);
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

nlohmann::json read_json(const fs::path& path) {
  const std::string text = read_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace specsep::cli
