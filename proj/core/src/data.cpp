#include "cann/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cann {

namespace {

// Uniaxial tension benchmarks, natural rubber at 20 C and 50 C.
constexpr double kTreloar20Ut[][2] = {
    {1.00, 0.00}, {1.01, 0.00}, {1.13, 0.14}, {1.23, 0.24}, {1.41, 0.33},
    {1.61, 0.43}, {1.89, 0.52}, {2.17, 0.59}, {2.45, 0.68}, {3.06, 0.87},
    {3.62, 1.06}, {4.06, 1.24}, {4.82, 1.60}, {5.41, 1.95}, {5.79, 2.30},
    {6.23, 2.68}, {6.46, 3.03}, {6.67, 3.40}, {6.96, 3.78}, {7.14, 4.16},
    {7.25, 4.49}, {7.36, 4.86}, {7.49, 5.24}, {7.60, 5.60}, {7.69, 6.33}};

constexpr double kTreloar50Ut[][2] = {
    {1.00, 0.00}, {1.11, 0.17}, {1.23, 0.29}, {1.57, 0.54}, {2.12, 0.80},
    {2.73, 1.03}, {3.36, 1.30}, {3.95, 1.57}, {4.39, 1.79}, {5.29, 2.29},
    {6.11, 2.80}, {6.54, 3.75}, {6.95, 5.27}, {7.43, 7.73}, {7.76, 10.21}};

// Vulcanized rubber, gum and tread stock.
constexpr double kMooneyGumUt[][2] = {{1.00, 0.00}, {1.46, 0.31}, {2.30, 0.61}, {4.66, 1.23},
                                      {6.45, 1.84}, {6.77, 2.45}, {6.96, 3.06}};

constexpr double kMooneyTreadUt[][2] = {{1.00, 0.00}, {1.16, 0.31}, {1.50, 0.61}, {2.56, 1.23},
                                        {3.30, 1.84}, {3.53, 2.45}, {3.63, 3.06}, {3.71, 3.68}};

// Polymeric foam and rubber.
constexpr double kBlatzKoFoamUt[][2] = {
    {1.00, 0.00}, {1.05, 0.04}, {1.10, 0.06}, {1.15, 0.07}, {1.20, 0.09}, {1.30, 0.12},
    {1.40, 0.14}, {1.50, 0.16}, {1.60, 0.16}, {1.70, 0.17}, {1.80, 0.18}, {1.90, 0.19},
    {2.00, 0.20}, {2.10, 0.20}, {2.20, 0.21}, {2.30, 0.21}, {2.34, 0.21}};

constexpr double kBlatzKoRubberUt[][2] = {
    {1.00, 0.00}, {1.05, 0.03}, {1.10, 0.07}, {1.16, 0.10}, {1.22, 0.13},
    {1.27, 0.16}, {1.31, 0.18}, {1.37, 0.20}, {1.41, 0.22}, {1.47, 0.24},
    {1.52, 0.26}, {1.57, 0.27}, {1.62, 0.29}};

// Multi-mode companions: equibiaxial tension and pure shear columns.
constexpr double kTreloar20Et[][2] = {
    {1.00, 0.00}, {1.04, 0.09}, {1.08, 0.16}, {1.12, 0.24}, {1.15, 0.26}, {1.21, 0.33},
    {1.32, 0.44}, {1.43, 0.51}, {1.70, 0.66}, {1.95, 0.77}, {2.50, 0.97}, {3.04, 1.26},
    {3.44, 1.47}, {3.76, 1.73}, {4.03, 1.97}, {4.26, 2.23}, {4.45, 2.45}};

constexpr double kTreloar20Ps[][2] = {
    {1.00, 0.00}, {1.05, 0.06}, {1.13, 0.16}, {1.20, 0.24}, {1.33, 0.33}, {1.45, 0.42},
    {1.86, 0.59}, {2.40, 0.77}, {2.99, 0.95}, {3.50, 1.13}, {3.98, 1.29}, {4.39, 1.48},
    {4.72, 1.65}, {4.99, 1.82}};

constexpr double kTreloar50Et[][2] = {
    {1.00, 0.00}, {1.02, 0.15}, {1.08, 0.30}, {1.16, 0.48}, {1.37, 0.74},
    {1.57, 0.92}, {1.96, 1.17}, {2.46, 1.49}, {2.79, 1.78}, {3.14, 2.04},
    {3.45, 2.33}, {3.60, 2.53}, {3.86, 2.96}, {4.11, 3.24}, {4.60, 4.24},
    {5.06, 6.15}, {5.28, 6.99}, {5.42, 8.18}, {5.59, 9.87}, {5.67, 11.59}};

constexpr double kTreloar50Ps[][2] = {
    {1.00, 0.00}, {1.04, 0.17}, {1.23, 0.40}, {1.48, 0.63}, {2.52, 1.03}, {3.51, 1.49},
    {4.33, 1.90}, {5.07, 2.36}, {5.74, 2.74}, {6.24, 3.22}, {6.36, 3.63}, {6.65, 4.49},
    {6.91, 5.34}, {7.06, 6.23}, {7.26, 7.00}, {7.42, 7.89}, {7.56, 9.18}, {7.83, 10.90}};

template <std::size_t N>
void append_mode(std::vector<Sample>& out, DeformationMode mode, const double (&rows)[N][2]) {
  for (const auto& row : rows) out.push_back({mode, row[0], row[1]});
}

template <std::size_t N>
Dataset single_mode(const char* source, const double (&rows)[N][2]) {
  Dataset d;
  d.source = source;
  append_mode(d.samples, DeformationMode::UniaxialTension, rows);
  return d;
}

std::string shortest_repr(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

DeformationMode parse_mode(const std::string& tag, std::size_t line) {
  if (tag == "UT") return DeformationMode::UniaxialTension;
  if (tag == "ET") return DeformationMode::EquibiaxialTension;
  if (tag == "PS") return DeformationMode::PureShear;
  throw ParseError(line, "unknown mode tag '" + tag + "' (expected UT, ET or PS)");
}

double parse_number(const std::string& text, std::size_t line, const char* what) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ParseError(line, std::string("malformed ") + what + " '" + text + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line, std::string("non-finite ") + what + " '" + text + "'");
  }
  return value;
}

}  // namespace

std::vector<DeformationMode> Dataset::modes() const {
  std::vector<DeformationMode> out;
  for (DeformationMode m : {DeformationMode::UniaxialTension, DeformationMode::EquibiaxialTension,
                            DeformationMode::PureShear}) {
    if (std::any_of(samples.begin(), samples.end(),
                    [m](const Sample& s) { return s.mode == m; })) {
      out.push_back(m);
    }
  }
  return out;
}

std::vector<Sample> Dataset::mode_samples(DeformationMode mode) const {
  std::vector<Sample> out;
  for (const Sample& s : samples)
    if (s.mode == mode) out.push_back(s);
  return out;
}

double convert_unit(double value, StressUnit from_unit) {
  switch (from_unit) {
    case StressUnit::kgf_per_cm2: return value * 0.0980665;
    case StressUnit::psi: return value * 0.00689476;
    case StressUnit::kgf_per_8mm2: return value * (9.80665 / 8.0);
    case StressUnit::MPa: return value;
  }
  return value;
}

Dataset parse_csv(std::istream& in, const std::string& source_label) {
  Dataset d;
  d.source = source_label;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "mode,lambda,stress_mpa") {
        throw ParseError(lineno, "expected header 'mode,lambda,stress_mpa', got '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string mode_tag, lambda_text, stress_text, extra;
    if (!std::getline(row, mode_tag, ',') || !std::getline(row, lambda_text, ',') ||
        !std::getline(row, stress_text, ',')) {
      throw ParseError(lineno, "expected 3 comma-separated fields, got '" + line + "'");
    }
    if (std::getline(row, extra, ',')) {
      throw ParseError(lineno, "trailing fields after stress in '" + line + "'");
    }
    Sample s;
    s.mode = parse_mode(mode_tag, lineno);
    s.lambda = parse_number(lambda_text, lineno, "lambda");
    s.stress_mpa = parse_number(stress_text, lineno, "stress");
    if (!(s.lambda > 0.0)) {
      throw ParseError(lineno, "lambda must be positive, got " + lambda_text);
    }
    d.samples.push_back(s);
  }
  if (!header_seen) throw std::runtime_error(source_label + ": missing CSV header");
  if (d.samples.empty()) throw std::runtime_error(source_label + ": dataset has no samples");
  return d;
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file '" + path + "'");
  return parse_csv(in, path);
}

std::string to_csv(const Dataset& dataset) {
  std::string out = "mode,lambda,stress_mpa\n";
  for (const Sample& s : dataset.samples) {
    out += to_string(s.mode);
    out += ',';
    out += shortest_repr(s.lambda);
    out += ',';
    out += shortest_repr(s.stress_mpa);
    out += '\n';
  }
  return out;
}

void save_csv(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write dataset file '" + path + "'");
  out << to_csv(dataset);
}

const std::vector<std::string>& builtin_dataset_names() {
  static const std::vector<std::string> names = {
      "treloar20_ut",   "treloar50_ut",     "mooney_gum_ut",  "mooney_tread_ut",
      "blatzko_foam_ut", "blatzko_rubber_ut", "treloar20_multi", "treloar50_multi"};
  return names;
}

Dataset builtin_dataset(const std::string& name) {
  if (name == "treloar20_ut") return single_mode("treloar20_ut", kTreloar20Ut);
  if (name == "treloar50_ut") return single_mode("treloar50_ut", kTreloar50Ut);
  if (name == "mooney_gum_ut") return single_mode("mooney_gum_ut", kMooneyGumUt);
  if (name == "mooney_tread_ut") return single_mode("mooney_tread_ut", kMooneyTreadUt);
  if (name == "blatzko_foam_ut") return single_mode("blatzko_foam_ut", kBlatzKoFoamUt);
  if (name == "blatzko_rubber_ut") return single_mode("blatzko_rubber_ut", kBlatzKoRubberUt);
  if (name == "treloar20_multi") {
    Dataset d;
    d.source = "treloar20_multi";
    append_mode(d.samples, DeformationMode::UniaxialTension, kTreloar20Ut);
    append_mode(d.samples, DeformationMode::EquibiaxialTension, kTreloar20Et);
    append_mode(d.samples, DeformationMode::PureShear, kTreloar20Ps);
    return d;
  }
  if (name == "treloar50_multi") {
    Dataset d;
    d.source = "treloar50_multi";
    append_mode(d.samples, DeformationMode::UniaxialTension, kTreloar50Ut);
    append_mode(d.samples, DeformationMode::EquibiaxialTension, kTreloar50Et);
    append_mode(d.samples, DeformationMode::PureShear, kTreloar50Ps);
    return d;
  }
  std::string msg = "unknown builtin dataset '" + name + "'; valid names:";
  for (const auto& n : builtin_dataset_names()) msg += " " + n;
  throw std::invalid_argument(msg);
}

}  // namespace cann
