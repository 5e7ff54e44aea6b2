#include "cann/kinematics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cann {

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("stretch must be positive and finite, got " + std::to_string(lambda));
  }
}

}  // namespace

const char* to_string(DeformationMode mode) {
  switch (mode) {
    case DeformationMode::UniaxialTension: return "UT";
    case DeformationMode::EquibiaxialTension: return "ET";
    case DeformationMode::PureShear: return "PS";
  }
  return "?";
}

DiagonalDeformation deformation_gradient(DeformationMode mode, double lambda) {
  check_lambda(lambda);
  switch (mode) {
    case DeformationMode::UniaxialTension: {
      const double t = 1.0 / std::sqrt(lambda);
      return {lambda, t, t};
    }
    case DeformationMode::EquibiaxialTension:
      return {lambda, lambda, 1.0 / (lambda * lambda)};
    case DeformationMode::PureShear:
      return {lambda, 1.0, 1.0 / lambda};
  }
  throw std::logic_error("unreachable");
}

InvariantState invariants(DeformationMode mode, double lambda) {
  check_lambda(lambda);
  const double l2 = lambda * lambda;
  switch (mode) {
    case DeformationMode::UniaxialTension:
      return {l2 + 2.0 / lambda,
              2.0 * lambda + 1.0 / l2,
              2.0 * (lambda - 1.0 / l2),
              2.0 * (1.0 - 1.0 / (l2 * lambda))};
    case DeformationMode::EquibiaxialTension:
      return {2.0 * l2 + 1.0 / (l2 * l2),
              l2 * l2 + 2.0 / l2,
              2.0 * (lambda - 1.0 / (l2 * l2 * lambda)),
              2.0 * (l2 * lambda - 1.0 / (l2 * lambda))};
    case DeformationMode::PureShear: {
      const double i1 = l2 + 1.0 + 1.0 / l2;
      const double d = 2.0 * (lambda - 1.0 / (l2 * lambda));
      return {i1, i1, d, d};
    }
  }
  throw std::logic_error("unreachable");
}

GeneralInvariants general_invariants(const DiagonalDeformation& f,
                                     std::optional<std::array<double, 3>> fiber_direction) {
  check_lambda(f.lambda1);
  check_lambda(f.lambda2);
  check_lambda(f.lambda3);

  const double a = f.lambda1 * f.lambda1;
  const double b = f.lambda2 * f.lambda2;
  const double c = f.lambda3 * f.lambda3;

  GeneralInvariants out;
  out.i1 = a + b + c;
  out.i2 = a * b + b * c + c * a;
  out.i3 = a * b * c;
  out.jdet = f.lambda1 * f.lambda2 * f.lambda3;
  out.ibar1 = out.i1 / std::cbrt(out.jdet * out.jdet);
  out.ibar2 = out.i2 / std::cbrt(out.jdet * out.jdet * out.jdet * out.jdet);

  if (fiber_direction) {
    const auto& n = *fiber_direction;
    const double len2 = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
    if (std::abs(len2 - 1.0) > 1e-12) {
      throw std::domain_error("fiber direction must have unit length");
    }
    out.i4 = n[0] * n[0] * a + n[1] * n[1] * b + n[2] * n[2] * c;
  }
  return out;
}

}  // namespace cann
