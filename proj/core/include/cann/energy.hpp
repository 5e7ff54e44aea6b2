#pragma once

#include <array>
#include <string>

namespace cann {

/// The four custom activation shapes of the energy network.
enum class Activation { Linear, Quadratic, ExpLinear, ExpQuadratic };

/// Identifiers of the eight additive energy terms, in the order they appear
/// in the energy expression (I1 block first, then I2 block).
enum class TermId {
  LinI1 = 0,
  ExpLinI1,
  QuadI1,
  ExpQuadI1,
  LinI2,
  ExpLinI2,
  QuadI2,
  ExpQuadI2,
};

inline constexpr int kNumTerms = 8;
inline constexpr int kNumWeights = 12;

const char* to_string(TermId term);

/// Inner/outer pair of an exponential term: outer * [exp(inner * x) - 1].
struct ExpPair {
  double inner = 0.0;  // dimensionless coefficient inside the exponential
  double outer = 0.0;  // MPa-scaled amplitude
};

/// The twelve trainable parameters of the eight-term energy. Linear and
/// quadratic rows keep only the combined product weight; exponential rows
/// keep both factors since the inner one is not redundant.
struct CannWeights {
  double lin_i1 = 0.0;
  double quad_i1 = 0.0;
  double lin_i2 = 0.0;
  double quad_i2 = 0.0;
  ExpPair exp_lin_i1;
  ExpPair exp_quad_i1;
  ExpPair exp_lin_i2;
  ExpPair exp_quad_i2;

  /// Canonical flat layout:
  /// [lin_i1, exp_lin_i1.inner, exp_lin_i1.outer, quad_i1,
  ///  exp_quad_i1.inner, exp_quad_i1.outer, lin_i2, exp_lin_i2.inner,
  ///  exp_lin_i2.outer, quad_i2, exp_quad_i2.inner, exp_quad_i2.outer]
  std::array<double, kNumWeights> to_array() const;
  static CannWeights from_array(const std::array<double, kNumWeights>& a);

  /// Effective magnitude of one term: the combined weight for linear and
  /// quadratic terms, inner*outer for exponential terms (the contribution
  /// slope at the reference state).
  double term_magnitude(TermId term) const;

  /// Copy with every term except `term` zeroed.
  CannWeights single_term(TermId term) const;

  bool all_nonnegative() const;
  bool all_finite() const;
};

/// Energy and its invariant derivatives at one deformation state.
struct EnergyDerivatives {
  double psi;       // MPa
  double dpsi_di1;  // MPa
  double dpsi_di2;  // MPa
};

/// Activation evaluation; inner_weight is ignored for Linear/Quadratic.
/// Exponential arguments beyond 700 saturate to +infinity so that a
/// diverging training step is caught by the loss guard instead of
/// propagating NaN.
double activation(Activation kind, double inner_weight, double x);

/// Eight-term free energy psi(I1, I2), zero at the reference state (3, 3).
double energy(const CannWeights& w, double i1, double i2);

/// psi together with dpsi/dI1 and dpsi/dI2.
EnergyDerivatives energy_derivatives(const CannWeights& w, double i1, double i2);

/// Exact partial derivatives of psi with respect to the twelve parameters,
/// in canonical array order.
std::array<double, kNumWeights> energy_weight_gradient(const CannWeights& w, double i1, double i2);

}  // namespace cann
