#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cann/data.hpp"
#include "cann/energy.hpp"
#include "cann/optimizer.hpp"

namespace cann {

/// Classical hyperelastic families expressible by the eight-term network.
struct NeoHooke {
  double mu;  // MPa
};
struct BlatzKo {
  double mu;  // MPa
};
struct MooneyRivlin {
  double mu1;  // MPa
  double mu2;  // MPa
};
struct Yeoh2 {
  double a1;  // MPa
  double a2;  // MPa; the cubic coefficient is fixed to zero
};
struct Demiray {
  double a;  // MPa
  double b;  // dimensionless
};

using NamedModel = std::variant<NeoHooke, BlatzKo, MooneyRivlin, Yeoh2, Demiray>;

const char* family_name(const NamedModel& model);

/// One physical parameter with its unit ("MPa" or "-").
struct PhysicalParam {
  double value;
  std::string unit;
};

/// Interpretation of a trained weight vector.
struct DiscoveredModel {
  std::vector<TermId> active_terms;
  std::map<std::string, PhysicalParam> physical_params;
  std::string model_name;  // family name, or "generalized"
  std::optional<std::string> nearest_family;  // set when model_name == "generalized"
  int sparsity = 0;  // number of inactive terms
  double threshold = 0.0;  // activity threshold actually applied
};

/// Default activity threshold: 1e-3 times the largest effective term
/// magnitude (zero for an all-zero weight vector).
double default_threshold(const CannWeights& w);

/// Reports terms with effective magnitude above the threshold as active,
/// extracts physical parameters for them, and names the classical family
/// when the active set matches one exactly. Throws std::invalid_argument for
/// a non-positive threshold.
DiscoveredModel classify(const CannWeights& w, double threshold);

/// classify with the default relative threshold.
DiscoveredModel classify(const CannWeights& w);

/// Weights reproducing a classical model exactly. Throws
/// std::invalid_argument for non-positive parameters.
CannWeights recover_named_model(const NamedModel& model);

/// Per-term stress decomposition of one dataset row.
struct CurvePoint {
  DeformationMode mode;
  double lambda;
  double p_data;                          // MPa
  double p_model;                         // MPa
  std::array<double, kNumTerms> p_terms;  // MPa, sums to p_model
};

/// Serializable training report: discovered model, physical parameters,
/// loss summary, configuration, final weights, and the per-term stress
/// decomposition on the data grid.
struct Report {
  std::string dataset;
  DiscoveredModel model;
  CannWeights weights;
  double initial_loss = 0.0;  // epoch-1 MSE, MPa^2
  double final_loss = 0.0;    // last-epoch MSE, MPa^2
  int epochs = 0;
  double final_gradient_norm = 0.0;
  AdamConfig config;
  std::vector<CurvePoint> curves;
};

/// Builds the report for a finished training run.
Report report(const TrainingRecord& record, const Dataset& dataset,
              std::optional<double> threshold = {});

/// Deterministic JSON serialization; numbers carry 17 significant digits.
std::string to_json(const Report& report);

/// Parses to_json output (curve points included).
Report report_from_json(const std::string& text);

}  // namespace cann
