#include "cpmse/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cpmse {

namespace {

std::string describe(const WedgeConfig& c) {
  std::ostringstream os;
  os << "(theta=" << c.theta << ", R=" << c.R << ", d=" << c.d << ", phi=" << c.phi << ")";
  return os.str();
}

// Position on the arc/face parametrization, without z.
struct CrossSection {
  double x, y, psi;  // psi is the normal angle
};

CrossSection cross_section(const WedgeConfig& c, double t) {
  const double te = arc_half_length(c);
  if (std::abs(t) <= te && c.R != 0.0) {
    const double psi = t / c.R;
    return {-c.R + c.R * std::cos(psi), c.R * std::sin(psi), psi};
  }
  // Face: continue tangentially from the arc end (or the apex for R == 0).
  const double sgn = t >= 0.0 ? 1.0 : -1.0;
  const double psi = sgn * c.theta;
  const double end_psi = psi;
  const double ex = -c.R + c.R * std::cos(end_psi);
  const double ey = c.R * std::sin(end_psi);
  const double s = t - sgn * te;
  return {ex - s * std::sin(psi), ey + s * std::cos(psi), psi};
}

}  // namespace

void validate(const WedgeConfig& c, bool allow_sharp) {
  if (!std::isfinite(c.theta) || !std::isfinite(c.R) || !std::isfinite(c.d) || !std::isfinite(c.phi))
    throw ConfigError("wedge parameters must be finite " + describe(c));
  if (!(c.theta > -kPi / 2 && c.theta <= kPi / 2))
    throw ConfigError("theta outside (-pi/2, pi/2] " + describe(c));
  if (c.theta != 0.0) {
    if (c.R == 0.0 && !allow_sharp)
      throw ConfigError("a sharp edge (R = 0) cannot be integrated " + describe(c));
    if (c.R != 0.0 && (c.R > 0.0) != (c.theta > 0.0))
      throw ConfigError("R must carry the sign of theta " + describe(c));
  }
  if (!(c.d > 0.0)) throw ConfigError("d must be positive " + describe(c));
  if (!(c.phi >= 0.0 && c.phi < kPi / 2 + c.theta))
    throw ConfigError("phi outside [0, pi/2 + theta) " + describe(c));
  if (!(d_perp(c) > 0.0)) throw ConfigError("particle is not outside the body " + describe(c));
}

Vec3 particle_position(const WedgeConfig& c) {
  return {c.d * std::cos(c.phi), c.d * std::sin(c.phi), 0.0};
}

double arc_half_length(const WedgeConfig& c) { return std::abs(c.R * c.theta); }

SurfaceSample surface_point(const WedgeConfig& c, double t, double z) {
  const CrossSection cs = cross_section(c, t);
  SurfaceSample s;
  const double cp = std::cos(cs.psi);
  const double sp = std::sin(cs.psi);
  s.position = {cs.x, cs.y, z};
  s.normal = {cp, sp, 0.0};
  s.tangent_perp = {-sp, cp, 0.0};
  s.tangent_z = Vec3::UnitZ();
  s.chart = {t, z};
  s.jacobian = 1.0;
  return s;
}

double d_perp_switch_angle(const WedgeConfig& c) {
  return c.theta + std::asin(std::clamp(c.R / c.d * std::sin(c.theta), -1.0, 1.0));
}

double d_perp(const WedgeConfig& c) {
  if (c.phi < d_perp_switch_angle(c)) {
    // Distance to the arc center; a concave arc is seen from inside its circle.
    const double rho = std::sqrt(c.d * c.d + c.R * c.R + 2.0 * c.d * c.R * std::cos(c.phi));
    return (c.R < 0.0 ? -rho : rho) - c.R;
  }
  return c.d * std::cos(c.theta - c.phi) + c.R * (std::cos(c.theta) - 1.0);
}

double nearest_chart_t(const WedgeConfig& c) {
  const Vec3 r0 = particle_position(c);
  const double te = arc_half_length(c);
  double best_t = 0.0;
  double best = (surface_point(c, 0.0, 0.0).position - r0).norm();
  auto consider = [&](double t) {
    const double dist = (surface_point(c, t, 0.0).position - r0).norm();
    if (dist < best) {
      best = dist;
      best_t = t;
    }
  };
  if (c.R != 0.0) {
    // Arc foot: direction from the arc center to the particle.
    const double sg = c.R > 0.0 ? 1.0 : -1.0;
    const double psi = std::atan2(sg * r0.y(), sg * (r0.x() + c.R));
    consider(std::clamp(c.R * psi, -te, te));
    consider(te);
    consider(-te);
  }
  for (double sgn : {1.0, -1.0}) {
    const SurfaceSample end = surface_point(c, sgn * te, 0.0);
    const double along = (r0 - end.position).dot(end.tangent_perp);
    const double t = sgn * te + along;
    if (sgn * t >= te) consider(t);
  }
  return best_t;
}

SharpFrameCoords sharp_frame(const WedgeConfig& c) {
  SharpFrameCoords s;
  const double k = 1.0 / std::cos(c.theta) - 1.0;
  s.delta = c.R * k;
  s.d_s = std::sqrt(c.d * c.d - 2.0 * c.d * c.R * std::cos(c.phi) * k + c.R * c.R * k * k);
  s.phi_s = std::atan2(c.d * std::sin(c.phi), c.R + c.d * std::cos(c.phi) - c.R / std::cos(c.theta));
  s.d_perp = d_perp(c);
  if (c.R == 0.0) {
    s.d_s = c.d;
    s.phi_s = c.phi;
  }
  return s;
}

SurfaceSample sphere_point(const SphereFixture& sp, double azimuth, double polar) {
  if (!(sp.radius > 0.0)) throw ConfigError("sphere radius must be positive");
  const double ca = std::cos(azimuth), sa = std::sin(azimuth);
  const double cp = std::cos(polar), spol = std::sin(polar);
  SurfaceSample s;
  s.normal = {spol * ca, spol * sa, cp};
  s.position = sp.center + sp.radius * s.normal;
  s.tangent_perp = {cp * ca, cp * sa, -spol};
  s.tangent_z = {-sa, ca, 0.0};
  s.chart = {azimuth, polar};
  s.jacobian = sp.radius * sp.radius * spol;
  return s;
}

}  // namespace cpmse
