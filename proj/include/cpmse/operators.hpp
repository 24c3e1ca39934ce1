#pragma once

#include "cpmse/geometry.hpp"
#include "cpmse/green.hpp"

namespace cpmse {

/// Interior (body) and exterior (particle side) media.
struct MediaPair {
  Medium interior;
  Medium exterior;
};

/// Diagonal weights over the (E, H) field index for the interior and exterior
/// representations. The default is the Mueller choice C_i = diag(eps1, mu1),
/// C_e = diag(eps0, mu0), for which K is only weakly singular on smooth surfaces.
struct CoefficientChoice {
  double interior_e = 1.0;
  double interior_h = 1.0;
  double exterior_e = 1.0;
  double exterior_h = 1.0;

  static CoefficientChoice muller(const MediaPair& media);
  void validate() const;
};

/// Tangential reduction of K between two surface points. Rows and columns use
/// the ordered basis (E t_perp, E t_z, H t_perp, H t_z).
using KernelBlock = Mat4;

/// Tangential rows of M(u, r0) acting on an electric source at r0.
using BulkSurfaceBlock = Mat43;

/// K(u, u') = 2 P (C_i + C_e)^-1 n(u) x [C_i G_1 - C_e G_0], P = [[0, -1], [1, 0]],
/// reduced to tangential components at u (rows) and u' (columns).
KernelBlock kernel_K(const SurfaceSample& u, const SurfaceSample& u_prime, double kappa,
                     const MediaPair& media, const CoefficientChoice& coeffs);

/// M(u, r) = -2 P (C_i + C_e)^-1 C_e n(u) x G_0(u, r), electric source column.
BulkSurfaceBlock kernel_M(const SurfaceSample& u, const Vec3& r0, double kappa, const MediaPair& media,
                          const CoefficientChoice& coeffs);

/// Electric row of G_0(r0, u) with columns projected on the tangent frame at u,
/// ordered as the KernelBlock basis.
Mat34 green_row_E(const Vec3& r0, const SurfaceSample& u, double kappa, const Medium& exterior);

/// Unreduced 6x6 K assembled directly from green_blocks of both media.
/// Rows/columns are (E xyz, H xyz). Cancels the static parts numerically, so
/// it is only reliable away from coincidence.
Eigen::Matrix<double, 6, 6> kernel_K_full(const SurfaceSample& u, const SurfaceSample& u_prime, double kappa,
                                          const MediaPair& media, const CoefficientChoice& coeffs);

}  // namespace cpmse
