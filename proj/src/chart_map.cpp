#include "cpmse/chart_map.hpp"

#include <cmath>

namespace cpmse {

namespace {

void check_order(int order) {
  if (order < 0 || order > kMaxOrder) throw ConfigError("scattering order must be in [0, " + std::to_string(kMaxOrder) + "]");
}

struct TauNode {
  double tau, weight;
};

TauNode tau_node(double s, double scale) {
  const double q = 1.0 - s;
  return {scale * s / q, scale / (q * q)};
}

double path_length(const Vec3& r0, std::span<const SurfaceSample> pts) {
  double len = (r0 - pts.front().position).norm() + (pts.back().position - r0).norm();
  for (std::size_t i = 1; i < pts.size(); ++i) len += (pts[i - 1].position - pts[i].position).norm();
  return len;
}

class WedgeMap final : public ChartMap {
 public:
  WedgeMap(const WedgeConfig& cfg, int order, const IntegrationSpec& spec, ChartScales scales)
      : cfg_(cfg), order_(order), r0_(particle_position(cfg)), anchor_(nearest_chart_t(cfg)) {
    validate(cfg_);
    check_order(order);
    const double dp = d_perp(cfg_);
    base_ = scales.base * dp;
    step_ = scales.step * dp;
    tau_ = scales.tau * (order + 1);
    truncated_ = spec.compactification == Compactification::Truncated;
    t_max_ = spec.truncation.t_max * cfg_.d;
    z_max_ = spec.truncation.z_max * cfg_.d;
  }

  int order() const override { return order_; }
  const Vec3& particle() const override { return r0_; }

  void map(std::span<const double> x, PathPoint& out) const override {
    const TauNode tn = tau_node(x[0], tau_);
    double weight = tn.weight;

    const double s = x[1];
    const double rho0 = base_ * std::sqrt(s / (1.0 - s));
    const double beta = 2.0 * kPi * x[2];
    double t = anchor_ + rho0 * std::cos(beta);
    double z = rho0 * std::sin(beta);
    weight *= kPi * base_ * base_ / ((1.0 - s) * (1.0 - s));
    bool inside = !truncated_ || (std::abs(t) <= t_max_ && std::abs(z) <= z_max_);
    out.samples[0] = surface_point(cfg_, t, z);

    for (int i = 1; i <= order_; ++i) {
      const double si = x[static_cast<std::size_t>(2 * i + 1)];
      const double rho = step_ * si / (1.0 - si);
      const double alpha = 2.0 * kPi * x[static_cast<std::size_t>(2 * i + 2)];
      t -= rho * std::cos(alpha);
      z -= rho * std::sin(alpha);
      weight *= 2.0 * kPi * rho * step_ / ((1.0 - si) * (1.0 - si));
      inside = inside && (!truncated_ || (std::abs(t) <= t_max_ && std::abs(z) <= z_max_));
      out.samples[static_cast<std::size_t>(i)] = surface_point(cfg_, t, z);
    }
    out.count = order_ + 1;
    const double len = path_length(r0_, out.points());
    out.kappa = tn.tau / len;
    out.weight = inside ? weight / len : 0.0;
  }

 private:
  WedgeConfig cfg_;
  int order_;
  Vec3 r0_;
  double anchor_;
  double base_ = 1.0, step_ = 1.0, tau_ = 1.0;
  bool truncated_ = false;
  double t_max_ = 0.0, z_max_ = 0.0;
};

class SphereMap final : public ChartMap {
 public:
  SphereMap(const SphereFixture& sphere, const Vec3& r0, int order, ChartScales scales)
      : sphere_(sphere), order_(order), r0_(r0), tau_(scales.tau * (order + 1)) {
    check_order(order);
    if (!(sphere.radius > 0.0)) throw ConfigError("sphere radius must be positive");
    if ((r0 - sphere.center).norm() <= sphere.radius) throw ConfigError("particle must lie outside the sphere");
  }

  int order() const override { return order_; }
  const Vec3& particle() const override { return r0_; }

  void map(std::span<const double> x, PathPoint& out) const override {
    const TauNode tn = tau_node(x[0], tau_);
    double weight = tn.weight;
    for (int i = 0; i <= order_; ++i) {
      const double azimuth = 2.0 * kPi * x[static_cast<std::size_t>(2 * i + 1)];
      const double polar = kPi * x[static_cast<std::size_t>(2 * i + 2)];
      out.samples[static_cast<std::size_t>(i)] = sphere_point(sphere_, azimuth, polar);
      weight *= 2.0 * kPi * kPi * out.samples[static_cast<std::size_t>(i)].jacobian;
    }
    out.count = order_ + 1;
    bool distinct = true;
    for (int i = 1; i <= order_; ++i) {
      if (out.samples[static_cast<std::size_t>(i)].position == out.samples[static_cast<std::size_t>(i - 1)].position)
        distinct = false;
    }
    const double len = path_length(r0_, out.points());
    out.kappa = tn.tau / len;
    out.weight = distinct ? weight / len : 0.0;
  }

 private:
  SphereFixture sphere_;
  int order_;
  Vec3 r0_;
  double tau_;
};

}  // namespace

std::unique_ptr<ChartMap> surface_chart_map(const WedgeConfig& cfg, int order, const IntegrationSpec& spec,
                                            ChartScales scales) {
  return std::make_unique<WedgeMap>(cfg, order, spec, scales);
}

std::unique_ptr<ChartMap> sphere_chart_map(const SphereFixture& sphere, const Vec3& r0, int order,
                                           ChartScales scales) {
  return std::make_unique<SphereMap>(sphere, r0, order, scales);
}

}  // namespace cpmse
