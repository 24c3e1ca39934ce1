#include "cpmse/reference.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cpmse {

double pec_wedge_upsilon(double theta, double phi, double wall_cutoff) {
  if (!(theta > -kPi / 2 && theta <= kPi / 2)) throw ConfigError("wedge angle theta must lie in (-pi/2, pi/2]");
  const double opening = kPi / 2 + theta;
  const double aphi = std::abs(phi);
  if (aphi >= opening) throw ConfigError("particle angle must satisfy |phi| < pi/2 + theta");
  if (opening - aphi < wall_cutoff) return std::numeric_limits<double>::infinity();

  const double p = kPi / (kPi + 2.0 * theta);
  const double p2 = p * p;
  const double s2 = std::pow(std::sin(p * (theta - phi + kPi / 2)), 2);
  return (135.0 * p2 * p2 / (s2 * s2) - 90.0 * (p2 - 1.0) * p2 / s2 - p2 * p2 - 10.0 * p2 + 11.0) / (360.0 * kPi);
}

IntegrationSpec plate_spec() {
  IntegrationSpec s;
  s.dimension = 2;
  s.rel_tol = 1e-9;
  return s;
}

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
constexpr unsigned kMaxDepth = 15;

PlateAmplitude integrate_plate(double eps1, double rel_tol) {
  double inner_err_max = 0.0;
  auto inner = [&](double kappa) {
    auto f = [&](double k) {
      const double s0 = std::sqrt(kappa * kappa + k * k);
      const double s1 = std::sqrt(eps1 * kappa * kappa + k * k);
      const double r_tm = (eps1 * s0 - s1) / (eps1 * s0 + s1);
      const double r_te = (s0 - s1) / (s0 + s1);
      return k / s0 * ((kappa * kappa + 2.0 * k * k) * r_tm - kappa * kappa * r_te) * std::exp(-2.0 * s0);
    };
    double err = 0.0;
    const double v = GK::integrate(f, 0.0, std::numeric_limits<double>::infinity(), kMaxDepth, rel_tol * 0.1, &err);
    inner_err_max = std::max(inner_err_max, err);
    return v;
  };
  double err = 0.0;
  const double v = GK::integrate(inner, 0.0, std::numeric_limits<double>::infinity(), kMaxDepth, rel_tol, &err);
  PlateAmplitude out;
  out.epsilon1 = eps1;
  out.upsilon = v / (2.0 * kPi);
  out.quadrature_error = (err + inner_err_max) / (2.0 * kPi);
  out.status = out.quadrature_error <= 10.0 * rel_tol * std::abs(out.upsilon) ? IntegrationStatus::Converged
                                                                             : IntegrationStatus::ToleranceMiss;
  return out;
}

}  // namespace

PlateAmplitude plate_upsilon(double epsilon1, const IntegrationSpec& spec) {
  if (!(epsilon1 >= 1.0) || !std::isfinite(epsilon1)) throw ConfigError("plate permittivity must be finite and >= 1");
  if (!(spec.rel_tol > 0.0)) throw ConfigError("plate tolerance must be positive");
  if (epsilon1 == 1.0) return {1.0, 0.0, 0.0, IntegrationStatus::Converged};

  static std::shared_mutex mutex;
  static std::map<std::pair<double, double>, PlateAmplitude> cache;
  const auto key = std::make_pair(epsilon1, spec.rel_tol);
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const PlateAmplitude a = integrate_plate(epsilon1, spec.rel_tol);
  std::unique_lock lock(mutex);
  return cache.emplace(key, a).first->second;
}

double pfa_upsilon(const WedgeConfig& cfg, double epsilon1) {
  validate(cfg, true);
  return plate_upsilon(epsilon1).upsilon * std::pow(cfg.d / d_perp(cfg), 4);
}

double reduced_pec_upsilon_from_plate(const WedgeConfig& cfg, double plate_amplitude) {
  validate(cfg, true);
  const SharpFrameCoords s = sharp_frame(cfg);
  return plate_amplitude / kUpsilonPecPlate * pec_wedge_upsilon(cfg.theta, s.phi_s) * std::pow(cfg.d / s.d_s, 4);
}

double reduced_pec_upsilon(const WedgeConfig& cfg, double epsilon1) {
  return reduced_pec_upsilon_from_plate(cfg, plate_upsilon(epsilon1).upsilon);
}

}  // namespace cpmse
