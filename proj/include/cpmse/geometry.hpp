#pragma once

#include "cpmse/types.hpp"

namespace cpmse {

/// Smoothed wedge and particle placement.
///
/// Cross-section lies in the x-y plane with the edge along z. The apex of the
/// rounded tip sits at the origin, the symmetry axis points along +x into the
/// vacuum and the body fills the region behind the surface. The particle is at
/// d (cos phi, sin phi, 0), i.e. (d, phi) are measured from the smooth tip.
struct WedgeConfig {
  double theta = 0.0;  ///< half-angle offset, convex for theta > 0
  double R = 0.0;      ///< signed radius of the rounded edge
  double d = 1.0;      ///< particle distance from the smooth tip
  double phi = 0.0;    ///< particle polar angle from the symmetry axis
};

/// Throws ConfigError on range violations. A sharp wedge (R == 0 with
/// theta != 0) is accepted only when `allow_sharp` is set.
void validate(const WedgeConfig& cfg, bool allow_sharp = false);

Vec3 particle_position(const WedgeConfig& cfg);

struct ChartPoint {
  double t = 0.0;  ///< arc length across the edge
  double z = 0.0;  ///< coordinate along the edge
};

/// A point on a parametrized surface together with its local frame.
/// normal == tangent_perp x tangent_z and points out of the body.
struct SurfaceSample {
  Vec3 position = Vec3::Zero();
  Vec3 normal = Vec3::UnitX();
  Vec3 tangent_perp = Vec3::UnitY();
  Vec3 tangent_z = Vec3::UnitZ();
  ChartPoint chart;
  double jacobian = 1.0;
};

SurfaceSample surface_point(const WedgeConfig& cfg, double t, double z);

/// Arc length at which the rounded tip joins the upper face (|R theta|).
double arc_half_length(const WedgeConfig& cfg);

/// Shortest distance from the particle to the wedge surface.
double d_perp(const WedgeConfig& cfg);

/// Branch switch angle between the arc and face expressions of d_perp.
double d_perp_switch_angle(const WedgeConfig& cfg);

/// Chart coordinate t of the surface point nearest to the particle.
double nearest_chart_t(const WedgeConfig& cfg);

/// Particle coordinates relative to the apex of the sharp wedge that shares
/// the planar faces with the smoothed one.
struct SharpFrameCoords {
  double d_s = 0.0;
  double phi_s = 0.0;
  double delta = 0.0;  ///< sharp apex sits at (delta, 0, 0)
  double d_perp = 0.0;
};

SharpFrameCoords sharp_frame(const WedgeConfig& cfg);

/// Closed test surface. Chart is (azimuth, polar) around `center`.
struct SphereFixture {
  double radius = 1.0;
  Vec3 center = Vec3(2.5, 0.0, 0.0);
};

SurfaceSample sphere_point(const SphereFixture& sphere, double azimuth, double polar);

}  // namespace cpmse
