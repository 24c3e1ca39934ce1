#include "cpmse/mse.hpp"

#include <algorithm>
#include <cmath>

namespace cpmse {

double integrand_order0(const SurfaceSample& u, const Vec3& r0, double kappa, const MediaPair& media,
                        const CoefficientChoice& coeffs) {
  const Mat34 g = green_row_E(r0, u, kappa, media.exterior);
  const Mat43 m = kernel_M(u, r0, kappa, media, coeffs);
  return (g * m).trace();
}

double integrand_orderL(std::span<const SurfaceSample> samples, const Vec3& r0, double kappa,
                        const MediaPair& media, const CoefficientChoice& coeffs) {
  if (samples.empty()) throw ConfigError("integrand needs at least one surface point");
  Mat43 chain = kernel_M(samples.back(), r0, kappa, media, coeffs);
  for (std::size_t i = samples.size() - 1; i > 0; --i) {
    chain = kernel_K(samples[i - 1], samples[i], kappa, media, coeffs) * chain;
  }
  const Mat34 g = green_row_E(r0, samples.front(), kappa, media.exterior);
  return (g * chain).trace();
}

OrderEstimate delta_U(const ChartMap& map, const MediaPair& media, IntegrationSpec spec,
                      const CoefficientChoice& coeffs) {
  media.interior.validate();
  media.exterior.validate();
  coeffs.validate();
  spec.dimension = map.dimension();
  const Vec3 r0 = map.particle();

  // Index-matched media with equal weights make K vanish identically.
  const bool null_chain = map.order() > 0 && media.interior.epsilon == media.exterior.epsilon &&
                          media.interior.mu == media.exterior.mu && coeffs.interior_e == coeffs.exterior_e &&
                          coeffs.interior_h == coeffs.exterior_h;
  OrderEstimate out;
  out.order = map.order();
  if (null_chain) return out;

  const Integrand f = [&](std::span<const double> x) {
    PathPoint p;
    map.map(x, p);
    if (p.weight == 0.0) return 0.0;
    const double tr = integrand_orderL(p.points(), r0, p.kappa, media, coeffs);
    return -2.0 * p.kappa * p.weight * tr;
  };
  const IntegralEstimate est = integrate(f, spec);
  out.value = est.value;
  out.abs_error = est.abs_error;
  out.evals = est.evals;
  out.status = est.status;
  out.magnitude = est.magnitude;
  return out;
}

OrderEstimate delta_U(int order, const WedgeConfig& cfg, const MediaPair& media, const IntegrationSpec& spec,
                      const CoefficientChoice& coeffs, ChartScales scales) {
  const auto map = surface_chart_map(cfg, order, spec, scales);
  return delta_U(*map, media, spec, coeffs);
}

OrderEstimate delta_U(int order, const SphereFixture& sphere, const Vec3& r0, const MediaPair& media,
                      const IntegrationSpec& spec, const CoefficientChoice& coeffs, ChartScales scales) {
  const auto map = sphere_chart_map(sphere, r0, order, scales);
  return delta_U(*map, media, spec, coeffs);
}

bool PotentialResult::tolerance_met() const {
  for (auto s : status)
    if (s != IntegrationStatus::Converged) return false;
  return true;
}

PotentialResult compute_potential(const WedgeConfig& cfg, const MediaPair& media, const MseOptions& options,
                                  const CoefficientChoice& coeffs) {
  validate(cfg);
  if (options.max_order < 2 || options.max_order > kMaxOrder)
    throw ConfigError("max_order must be in [2, " + std::to_string(kMaxOrder) + "]");

  PotentialResult res;
  res.config = cfg;
  res.media = media;
  res.options = options;
  double sum = 0.0;
  double rss = 0.0;
  for (int l = 0; l <= options.max_order; ++l) {
    IntegrationSpec spec = options.integration;
    spec.dimension = path_dimension(l);
    if (options.per_order_default_tolerance) spec.rel_tol = default_rel_tol(spec.dimension);
    spec.seed = options.integration.seed + static_cast<std::uint64_t>(l);
    const OrderEstimate e = delta_U(l, cfg, media, spec, coeffs, options.scales);
    sum += e.value;
    rss += e.abs_error * e.abs_error;
    res.delta_U.push_back(e.value);
    res.partial_sums.push_back(sum);
    res.errors.push_back(e.abs_error);
    res.status.push_back(e.status);
    res.evals.push_back(e.evals);
  }
  res.total_error = std::sqrt(rss);
  const double eps1 = media.interior.epsilon / media.exterior.epsilon;
  res.acceleration = accelerate(res.partial_sums, eps1, options.policy_threshold);
  res.shanks_estimate = res.acceleration.final_estimate;
  res.shanks_error = propagate_error(res.partial_sums, res.errors, eps1, options.policy_threshold);
  res.upsilon = upsilon(res.shanks_estimate, cfg.d);
  // Never quote less than the raw per-order uncertainty.
  res.upsilon_error = std::max(res.shanks_error, res.total_error) * std::pow(cfg.d, 4);
  return res;
}

PotentialResult compute_potential(const WedgeConfig& cfg, const MediaPair& media, const MseOptions& options) {
  return compute_potential(cfg, media, options, CoefficientChoice::muller(media));
}

double upsilon(double potential, double d) { return -potential * std::pow(d, 4); }

double upsilon(const PotentialResult& result, double d) { return upsilon(result.shanks_estimate, d); }

}  // namespace cpmse
