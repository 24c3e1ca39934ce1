#pragma once

#include <array>
#include <memory>
#include <span>

#include "cpmse/geometry.hpp"
#include "cpmse/quadrature.hpp"

namespace cpmse {

inline constexpr int kMaxOrder = 5;

/// Unit-cube dimension of an order-L scattering path: kappa plus one chart
/// pair per surface point.
constexpr int path_dimension(int order) { return 3 + 2 * order; }

/// One quadrature node of a scattering path r0 -> u_0 -> ... -> u_L -> r0.
struct PathPoint {
  double kappa = 0.0;
  double weight = 0.0;  ///< product of all jacobians, 0 outside a truncated chart
  int count = 0;
  std::array<SurfaceSample, kMaxOrder + 1> samples;

  std::span<const SurfaceSample> points() const { return {samples.data(), static_cast<std::size_t>(count)}; }
};

/// Change of variables from the unit cube to (kappa, u_0, ..., u_L).
class ChartMap {
 public:
  virtual ~ChartMap() = default;
  virtual int order() const = 0;
  int dimension() const { return path_dimension(order()); }
  virtual const Vec3& particle() const = 0;
  virtual void map(std::span<const double> x, PathPoint& out) const = 0;
};

/// Tunable scales of the wedge map, in units of d_perp. The defaults are what
/// the test suite runs with.
struct ChartScales {
  double base = 1.0;   ///< radial scale of u_0 around the nearest surface point
  double step = 1.0;   ///< radial scale of the difference vectors
  double tau = 2.0;    ///< kappa * path-length scale, multiplied by (order + 1)
};

/// Wedge map. Coordinates:
///   x_0        kappa = tau / Lambda, tau = c s / (1 - s), Lambda the path length
///   x_1, x_2   u_0 in chart polar coordinates around the nearest surface point,
///              rho = a sqrt(s / (1 - s)), flat in rho drho / (rho^2 + a^2)^2
///   x_{2i+1}, x_{2i+2}
///              u_i = u_{i-1} - rho (cos alpha, sin alpha), rho = a s / (1 - s);
///              the polar jacobian rho cancels the 1/|u - u'| kernel divergence
std::unique_ptr<ChartMap> surface_chart_map(const WedgeConfig& cfg, int order, const IntegrationSpec& spec,
                                            ChartScales scales = {});

/// Sphere fixture map: every surface point is sampled independently on the
/// (azimuth, polar) chart; kappa as for the wedge.
std::unique_ptr<ChartMap> sphere_chart_map(const SphereFixture& sphere, const Vec3& r0, int order,
                                           ChartScales scales = {});

}  // namespace cpmse
