#pragma once

#include "cpmse/geometry.hpp"
#include "cpmse/quadrature.hpp"

namespace cpmse {

/// Amplitude of a perfectly conducting plate, U = -(3 / 8 pi) / d^4. Shared by
/// the planar limit of the PEC wedge and the eps1 -> infinity plate.
inline constexpr double kUpsilonPecPlate = 3.0 / (8.0 * kPi);

inline constexpr double kWallCutoff = 1e-6;

/// Exact amplitude of a sharp PEC wedge for a particle at distance d from the
/// apex and polar angle phi from the symmetry axis, U = -Upsilon / d^4:
///   Upsilon = [135 p^4 / s^4 - 90 (p^2 - 1) p^2 / s^2 - p^4 - 10 p^2 + 11] / (360 pi)
/// with p = pi / (pi + 2 theta), s = sin(p (theta - phi + pi / 2)).
/// Returns +infinity within `wall_cutoff` radians of a face.
double pec_wedge_upsilon(double theta, double phi, double wall_cutoff = kWallCutoff);

struct PlateAmplitude {
  double epsilon1 = 1.0;
  double upsilon = 0.0;
  double quadrature_error = 0.0;
  IntegrationStatus status = IntegrationStatus::Converged;
};

/// Lifshitz amplitude of a dielectric half-space (eps0 = mu0 = mu1 = 1),
/// nested adaptive quadrature over (kappa, k) at d = 1. Only spec.rel_tol is
/// used. Results are cached per (eps1, rel_tol); safe to call concurrently.
IntegrationSpec plate_spec();  ///< rel_tol 1e-9
PlateAmplitude plate_upsilon(double epsilon1, const IntegrationSpec& spec = plate_spec());

/// Proximity estimate: the plate at the shortest distance, Upsilon_plate (d / d_perp)^4.
double pfa_upsilon(const WedgeConfig& cfg, double epsilon1);

/// Sharp PEC wedge seen from the sharp-frame coordinates (d_s, phi_s), scaled
/// by Upsilon_plate(eps1) / Upsilon_pec_plate and expressed per d^-4.
double reduced_pec_upsilon(const WedgeConfig& cfg, double epsilon1);

/// Same with a precomputed plate amplitude.
double reduced_pec_upsilon_from_plate(const WedgeConfig& cfg, double plate_amplitude);

}  // namespace cpmse
