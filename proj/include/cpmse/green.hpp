#pragma once

#include "cpmse/types.hpp"

namespace cpmse {

/// Homogeneous medium, relative permittivity and permeability.
struct Medium {
  double epsilon = 1.0;
  double mu = 1.0;

  double index() const;
  void validate() const;
};

/// Imaginary-frequency dyadic Green tensor blocks of a homogeneous medium in
/// closed form. With x = n kappa |R|, g = exp(-x) / (4 pi |R|):
///
///   EE = mu  g [a(x) I + b(x) R^R^],   a = 1 + 1/x + 1/x^2
///   HH = eps g [a(x) I + b(x) R^R^],   b = -(1 + 3/x + 3/x^2)
///   EH = -HE = n g (1 + 1/x) [R^]x
///
/// These blocks are homogeneous of degree one under (kappa, r) -> (l kappa, r / l).
struct GreenBlocks {
  Mat3 EE, EH, HE, HH;
  double kappa = 0.0;
  Vec3 separation = Vec3::Zero();
};

GreenBlocks green_blocks(const Medium& medium, double kappa, const Vec3& r, const Vec3& r_prime);

/// Scale turning GreenBlocks into the field propagators entering the surface
/// operators: EE/HH carry -kappa, EH/HE carry +kappa. Fixed once against the
/// planar Lifshitz amplitudes.
inline constexpr double kSameFieldScale = -1.0;
inline constexpr double kMixedFieldScale = 1.0;

/// Regular remainders of the closed forms,
///   tail_a(z) = exp(-z)(1 + z + z^2) - 1
///   tail_b(z) = exp(-z)(1 + z + z^2/3) - 1
///   tail_c(z) = exp(-z)(1 + z) - 1,
/// accurate to rounding for all z >= 0 (the leading 1 is what cancels
/// between interior and exterior media). In terms of the closed forms,
/// x^2 g a = (1 + tail_a) / (4 pi |R|) and x^2 g b = -3 (1 + tail_b) / (4 pi |R|).
double tail_a(double z);
double tail_b(double z);
double tail_c(double z);

/// Cross-product matrix, [v]x w == v x w.
Mat3 cross_matrix(const Vec3& v);

}  // namespace cpmse
