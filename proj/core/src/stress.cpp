#include "cann/stress.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cann {

namespace {

// Same saturation rule as the energy evaluation.
double guarded_exp(double arg) {
  if (arg > 700.0) return std::numeric_limits<double>::infinity();
  return std::exp(arg);
}

// P1 = a * dpsi/dI1 + b * dpsi/dI2 for every mode; a and b carry the
// geometry factors of the mode formulas.
struct ModeFactors {
  double a;
  double b;
};

ModeFactors p1_factors(DeformationMode mode, double lambda) {
  const double l2 = lambda * lambda;
  switch (mode) {
    case DeformationMode::UniaxialTension: {
      const double g = 2.0 * (lambda - 1.0 / l2);
      return {g, g / lambda};
    }
    case DeformationMode::EquibiaxialTension: {
      const double g = 2.0 * (lambda - 1.0 / (l2 * l2 * lambda));
      return {g, g * l2};
    }
    case DeformationMode::PureShear: {
      const double g = 2.0 * (lambda - 1.0 / (l2 * lambda));
      return {g, g};
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

StressResult nominal_stress(const CannWeights& w, DeformationMode mode, double lambda) {
  const InvariantState inv = invariants(mode, lambda);
  const EnergyDerivatives d = energy_derivatives(w, inv.i1, inv.i2);
  const ModeFactors f = p1_factors(mode, lambda);
  const double l2 = lambda * lambda;

  StressResult out;
  out.p1 = f.a * d.dpsi_di1 + f.b * d.dpsi_di2;
  switch (mode) {
    case DeformationMode::UniaxialTension:
      out.pressure = (2.0 / lambda) * d.dpsi_di1 + 2.0 * (lambda + 1.0 / l2) * d.dpsi_di2;
      break;
    case DeformationMode::EquibiaxialTension:
      out.p2 = out.p1;
      out.pressure = (2.0 / (l2 * l2)) * d.dpsi_di1 + (4.0 / l2) * d.dpsi_di2;
      break;
    case DeformationMode::PureShear:
      out.p2 = 2.0 * (d.dpsi_di1 + l2 * d.dpsi_di2) * (1.0 - 1.0 / l2);
      out.pressure = (2.0 / l2) * d.dpsi_di1 + 2.0 * (1.0 + 1.0 / l2) * d.dpsi_di2;
      break;
  }
  return out;
}

std::array<double, kNumWeights> stress_weight_gradient(const CannWeights& w, DeformationMode mode,
                                                       double lambda) {
  const InvariantState inv = invariants(mode, lambda);
  const ModeFactors f = p1_factors(mode, lambda);
  const double x1 = inv.i1 - 3.0;
  const double x2 = inv.i2 - 3.0;
  const double el1 = guarded_exp(w.exp_lin_i1.inner * x1);
  const double eq1 = guarded_exp(w.exp_quad_i1.inner * x1 * x1);
  const double el2 = guarded_exp(w.exp_lin_i2.inner * x2);
  const double eq2 = guarded_exp(w.exp_quad_i2.inner * x2 * x2);

  // d(dpsi/dI1)/dw and d(dpsi/dI2)/dw, combined with the mode factors.
  return {
      f.a,                                                                       // lin_i1
      f.a * w.exp_lin_i1.outer * (1.0 + w.exp_lin_i1.inner * x1) * el1,          // eli1 inner
      f.a * w.exp_lin_i1.inner * el1,                                            // eli1 outer
      f.a * 2.0 * x1,                                                            // quad_i1
      f.a * 2.0 * x1 * w.exp_quad_i1.outer * (1.0 + w.exp_quad_i1.inner * x1 * x1) * eq1,
      f.a * 2.0 * x1 * w.exp_quad_i1.inner * eq1,
      f.b,                                                                       // lin_i2
      f.b * w.exp_lin_i2.outer * (1.0 + w.exp_lin_i2.inner * x2) * el2,
      f.b * w.exp_lin_i2.inner * el2,
      f.b * 2.0 * x2,                                                            // quad_i2
      f.b * 2.0 * x2 * w.exp_quad_i2.outer * (1.0 + w.exp_quad_i2.inner * x2 * x2) * eq2,
      f.b * 2.0 * x2 * w.exp_quad_i2.inner * eq2,
  };
}

std::vector<StressResult> predict_curve(const CannWeights& w, DeformationMode mode,
                                        const std::vector<double>& lambdas) {
  std::vector<StressResult> out;
  out.reserve(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    try {
      out.push_back(nominal_stress(w, mode, lambdas[i]));
    } catch (const std::domain_error& e) {
      throw std::domain_error("at index " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

std::array<double, kNumTerms> term_stresses(const CannWeights& w, DeformationMode mode,
                                            double lambda) {
  std::array<double, kNumTerms> out{};
  for (int t = 0; t < kNumTerms; ++t) {
    out[t] = nominal_stress(w.single_term(static_cast<TermId>(t)), mode, lambda).p1;
  }
  return out;
}

}  // namespace cann
