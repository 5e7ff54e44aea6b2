#include "cann/energy.hpp"

#include <cmath>
#include <limits>

namespace cann {

namespace {

constexpr double kExpArgLimit = 700.0;

// exp(arg) with the documented saturation guard.
double guarded_exp(double arg) {
  if (arg > kExpArgLimit) return std::numeric_limits<double>::infinity();
  return std::exp(arg);
}

}  // namespace

const char* to_string(TermId term) {
  switch (term) {
    case TermId::LinI1: return "lin_i1";
    case TermId::ExpLinI1: return "exp_lin_i1";
    case TermId::QuadI1: return "quad_i1";
    case TermId::ExpQuadI1: return "exp_quad_i1";
    case TermId::LinI2: return "lin_i2";
    case TermId::ExpLinI2: return "exp_lin_i2";
    case TermId::QuadI2: return "quad_i2";
    case TermId::ExpQuadI2: return "exp_quad_i2";
  }
  return "?";
}

std::array<double, kNumWeights> CannWeights::to_array() const {
  return {lin_i1,  exp_lin_i1.inner,  exp_lin_i1.outer,  quad_i1,
          exp_quad_i1.inner, exp_quad_i1.outer, lin_i2,  exp_lin_i2.inner,
          exp_lin_i2.outer,  quad_i2, exp_quad_i2.inner, exp_quad_i2.outer};
}

CannWeights CannWeights::from_array(const std::array<double, kNumWeights>& a) {
  CannWeights w;
  w.lin_i1 = a[0];
  w.exp_lin_i1 = {a[1], a[2]};
  w.quad_i1 = a[3];
  w.exp_quad_i1 = {a[4], a[5]};
  w.lin_i2 = a[6];
  w.exp_lin_i2 = {a[7], a[8]};
  w.quad_i2 = a[9];
  w.exp_quad_i2 = {a[10], a[11]};
  return w;
}

double CannWeights::term_magnitude(TermId term) const {
  switch (term) {
    case TermId::LinI1: return lin_i1;
    case TermId::ExpLinI1: return exp_lin_i1.inner * exp_lin_i1.outer;
    case TermId::QuadI1: return quad_i1;
    case TermId::ExpQuadI1: return exp_quad_i1.inner * exp_quad_i1.outer;
    case TermId::LinI2: return lin_i2;
    case TermId::ExpLinI2: return exp_lin_i2.inner * exp_lin_i2.outer;
    case TermId::QuadI2: return quad_i2;
    case TermId::ExpQuadI2: return exp_quad_i2.inner * exp_quad_i2.outer;
  }
  return 0.0;
}

CannWeights CannWeights::single_term(TermId term) const {
  CannWeights w;
  switch (term) {
    case TermId::LinI1: w.lin_i1 = lin_i1; break;
    case TermId::ExpLinI1: w.exp_lin_i1 = exp_lin_i1; break;
    case TermId::QuadI1: w.quad_i1 = quad_i1; break;
    case TermId::ExpQuadI1: w.exp_quad_i1 = exp_quad_i1; break;
    case TermId::LinI2: w.lin_i2 = lin_i2; break;
    case TermId::ExpLinI2: w.exp_lin_i2 = exp_lin_i2; break;
    case TermId::QuadI2: w.quad_i2 = quad_i2; break;
    case TermId::ExpQuadI2: w.exp_quad_i2 = exp_quad_i2; break;
  }
  return w;
}

bool CannWeights::all_nonnegative() const {
  for (double v : to_array())
    if (v < 0.0) return false;
  return true;
}

bool CannWeights::all_finite() const {
  for (double v : to_array())
    if (!std::isfinite(v)) return false;
  return true;
}

double activation(Activation kind, double inner_weight, double x) {
  switch (kind) {
    case Activation::Linear: return x;
    case Activation::Quadratic: return x * x;
    case Activation::ExpLinear: return guarded_exp(inner_weight * x) - 1.0;
    case Activation::ExpQuadratic: return guarded_exp(inner_weight * x * x) - 1.0;
  }
  return 0.0;
}

double energy(const CannWeights& w, double i1, double i2) {
  // The two invariant blocks are summed separately so that the additive
  // decoupling psi(i1, i2) = psi1(i1) + psi2(i2) holds to the last bit.
  const double x1 = i1 - 3.0;
  const double x2 = i2 - 3.0;
  const double block1 =
      w.lin_i1 * x1 + w.exp_lin_i1.outer * (guarded_exp(w.exp_lin_i1.inner * x1) - 1.0) +
      w.quad_i1 * x1 * x1 +
      w.exp_quad_i1.outer * (guarded_exp(w.exp_quad_i1.inner * x1 * x1) - 1.0);
  const double block2 =
      w.lin_i2 * x2 + w.exp_lin_i2.outer * (guarded_exp(w.exp_lin_i2.inner * x2) - 1.0) +
      w.quad_i2 * x2 * x2 +
      w.exp_quad_i2.outer * (guarded_exp(w.exp_quad_i2.inner * x2 * x2) - 1.0);
  return block1 + block2;
}

EnergyDerivatives energy_derivatives(const CannWeights& w, double i1, double i2) {
  const double x1 = i1 - 3.0;
  const double x2 = i2 - 3.0;
  const double el1 = guarded_exp(w.exp_lin_i1.inner * x1);
  const double eq1 = guarded_exp(w.exp_quad_i1.inner * x1 * x1);
  const double el2 = guarded_exp(w.exp_lin_i2.inner * x2);
  const double eq2 = guarded_exp(w.exp_quad_i2.inner * x2 * x2);

  EnergyDerivatives out;
  const double block1 = w.lin_i1 * x1 + w.exp_lin_i1.outer * (el1 - 1.0) +
                        w.quad_i1 * x1 * x1 + w.exp_quad_i1.outer * (eq1 - 1.0);
  const double block2 = w.lin_i2 * x2 + w.exp_lin_i2.outer * (el2 - 1.0) +
                        w.quad_i2 * x2 * x2 + w.exp_quad_i2.outer * (eq2 - 1.0);
  out.psi = block1 + block2;
  out.dpsi_di1 = w.lin_i1 + w.exp_lin_i1.outer * w.exp_lin_i1.inner * el1 +
                 2.0 * x1 * (w.quad_i1 + w.exp_quad_i1.outer * w.exp_quad_i1.inner * eq1);
  out.dpsi_di2 = w.lin_i2 + w.exp_lin_i2.outer * w.exp_lin_i2.inner * el2 +
                 2.0 * x2 * (w.quad_i2 + w.exp_quad_i2.outer * w.exp_quad_i2.inner * eq2);
  return out;
}

std::array<double, kNumWeights> energy_weight_gradient(const CannWeights& w, double i1, double i2) {
  const double x1 = i1 - 3.0;
  const double x2 = i2 - 3.0;
  const double el1 = guarded_exp(w.exp_lin_i1.inner * x1);
  const double eq1 = guarded_exp(w.exp_quad_i1.inner * x1 * x1);
  const double el2 = guarded_exp(w.exp_lin_i2.inner * x2);
  const double eq2 = guarded_exp(w.exp_quad_i2.inner * x2 * x2);

  return {
      x1,                                   // lin_i1
      w.exp_lin_i1.outer * x1 * el1,        // exp_lin_i1.inner
      el1 - 1.0,                            // exp_lin_i1.outer
      x1 * x1,                              // quad_i1
      w.exp_quad_i1.outer * x1 * x1 * eq1,  // exp_quad_i1.inner
      eq1 - 1.0,                            // exp_quad_i1.outer
      x2,                                   // lin_i2
      w.exp_lin_i2.outer * x2 * el2,        // exp_lin_i2.inner
      el2 - 1.0,                            // exp_lin_i2.outer
      x2 * x2,                              // quad_i2
      w.exp_quad_i2.outer * x2 * x2 * eq2,  // exp_quad_i2.inner
      eq2 - 1.0,                            // exp_quad_i2.outer
  };
}

}  // namespace cann
