#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "cann/kinematics.hpp"

namespace cann {

/// One labeled stress-stretch measurement.
struct Sample {
  DeformationMode mode;
  double lambda;      // dimensionless
  double stress_mpa;  // nominal stress, MPa
};

/// Labeled stress-stretch samples with provenance.
struct Dataset {
  std::vector<Sample> samples;
  std::string source;

  bool empty() const { return samples.empty(); }
  std::size_t size() const { return samples.size(); }
  /// Modes present, in UT/ET/PS order.
  std::vector<DeformationMode> modes() const;
  /// Samples restricted to one mode, row order preserved.
  std::vector<Sample> mode_samples(DeformationMode mode) const;
};

/// Error raised by CSV parsing; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Supported source units of the historical tables.
enum class StressUnit { kgf_per_cm2, psi, kgf_per_8mm2, MPa };

/// Converts a stress value to MPa.
double convert_unit(double value, StressUnit from_unit);

/// Reads the documented CSV schema: header `mode,lambda,stress_mpa`,
/// mode in {UT, ET, PS}, '#' comment lines ignored. Throws ParseError with
/// the offending line, or std::runtime_error for an empty dataset.
Dataset load_csv(const std::string& path);
Dataset parse_csv(std::istream& in, const std::string& source_label);

/// Writes the same schema; loading the output reproduces the dataset exactly.
void save_csv(const Dataset& dataset, const std::string& path);
std::string to_csv(const Dataset& dataset);

/// Names of the embedded benchmark tables.
const std::vector<std::string>& builtin_dataset_names();

/// Returns an embedded table by name; throws std::invalid_argument listing
/// the valid names for an unknown one.
Dataset builtin_dataset(const std::string& name);

}  // namespace cann
