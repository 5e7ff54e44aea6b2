#pragma once

#include <optional>
#include <array>

namespace cann {

/// Homogeneous test modes for incompressible specimens.
enum class DeformationMode { UniaxialTension, EquibiaxialTension, PureShear };

const char* to_string(DeformationMode mode);

/// Principal stretches of a diagonal deformation gradient.
struct DiagonalDeformation {
  double lambda1;
  double lambda2;
  double lambda3;
};

/// First and second invariants along a mode path, with their stretch
/// derivatives. The derivatives are taken per loading axis with the
/// transverse stretches held (for UT and PS this coincides with the
/// derivative along the path; for ET both in-plane axes carry the same
/// partial, which is half the path total).
struct InvariantState {
  double i1;
  double i2;
  double di1_dlambda;
  double di2_dlambda;
};

/// Invariants of a general diagonal deformation. i4 is present only when a
/// fiber direction was supplied.
struct GeneralInvariants {
  double i1;
  double i2;
  double i3;
  double ibar1;
  double ibar2;
  double jdet;
  std::optional<double> i4;
};

/// Principal stretches for the mode at stretch lambda:
/// UT (l, 1/sqrt(l), 1/sqrt(l)), ET (l, l, 1/l^2), PS (l, 1, 1/l).
DiagonalDeformation deformation_gradient(DeformationMode mode, double lambda);

/// Mode invariants and their stretch derivatives. Throws std::domain_error
/// for non-positive or non-finite lambda.
InvariantState invariants(DeformationMode mode, double lambda);

/// Invariants of an arbitrary diagonal deformation expressed through its
/// principal stretches. The optional fiber direction is given in the frame
/// of the principal axes and must have unit length (within 1e-12).
GeneralInvariants general_invariants(const DiagonalDeformation& f,
                                     std::optional<std::array<double, 3>> fiber_direction = {});

}  // namespace cann
