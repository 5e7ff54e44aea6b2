#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cann/energy.hpp"
#include "cann/kinematics.hpp"

namespace cann {

/// Nominal stresses of one homogeneous state. p2 is populated for ET
/// (p2 == p1 bitwise) and PS; pressure is the hydrostatic reaction
/// eliminated by the transverse zero-stress condition.
struct StressResult {
  double p1 = 0.0;               // MPa
  std::optional<double> p2;      // MPa
  double pressure = 0.0;         // MPa
};

/// Analytic nominal stress for the mode at stretch lambda.
/// UT: P1 = 2[psi1 + psi2/l][l - 1/l^2]
/// ET: P1 = P2 = 2[psi1 + l^2 psi2][l - 1/l^5]
/// PS: P1 = 2[psi1 + psi2][l - 1/l^3], P2 = 2[psi1 + l^2 psi2][1 - 1/l^2]
StressResult nominal_stress(const CannWeights& w, DeformationMode mode, double lambda);

/// Exact dP1/dw in canonical weight order (chain rule through the mode's
/// stress formula).
std::array<double, kNumWeights> stress_weight_gradient(const CannWeights& w, DeformationMode mode,
                                                       double lambda);

/// Element-wise nominal_stress; throws the underlying domain error annotated
/// with the offending index.
std::vector<StressResult> predict_curve(const CannWeights& w, DeformationMode mode,
                                        const std::vector<double>& lambdas);

/// P1 contribution of each of the eight terms; the sum equals the full P1.
std::array<double, kNumTerms> term_stresses(const CannWeights& w, DeformationMode mode,
                                            double lambda);

}  // namespace cann
