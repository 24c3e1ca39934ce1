#include <algorithm>
#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "app.hpp"
#include "cpmse/reference.hpp"

namespace cpmse::app {

namespace {

using Check = ValidationReport::Check;

Check make(std::string name, double value, double tol, std::string detail = {}) {
  return {std::move(name), value <= tol, value, tol, std::move(detail)};
}

bool fault(const ValidationOptions& o, const char* what) { return o.inject_fault && *o.inject_fault == what; }

// Smooth wedge used by the geometric checks; falls back to the standard convex
// case when the configured geometry is sharp or planar.
WedgeConfig probe_wedge(const RunConfig& cfg) {
  WedgeConfig w = cfg.wedge(cfg.phi.front());
  if (w.theta == 0.0 || w.R == 0.0) w = {0.75, 0.1, 1.0, 0.0};
  return w;
}

Check frame_check(const WedgeConfig& w, const ValidationOptions& o) {
  double worst = 0.0;
  for (double t = -3.0; t <= 3.0; t += 0.01) {
    SurfaceSample s = surface_point(w, t, 0.3 * t);
    if (fault(o, "frame")) s.tangent_perp = (s.tangent_perp + 1e-6 * s.normal).eval();
    worst = std::max({worst, std::abs(s.tangent_perp.norm() - 1.0), std::abs(s.tangent_z.norm() - 1.0),
                      std::abs(s.tangent_perp.dot(s.tangent_z)), (s.tangent_perp.cross(s.tangent_z) - s.normal).norm()});
  }
  return make("frame_orthonormality", worst, 1e-12);
}

Check continuity_check(const WedgeConfig& w) {
  const double te = arc_half_length(w);
  double worst = 0.0;
  for (double sgn : {-1.0, 1.0}) {
    const double h = 1e-11;
    const Vec3 a = surface_point(w, sgn * (te - h), 0.0).normal;
    const Vec3 b = surface_point(w, sgn * (te + h), 0.0).normal;
    worst = std::max(worst, (a - b).norm());
  }
  return make("normal_continuity", worst, 1e-10);
}

Check d_perp_check(const WedgeConfig& base) {
  double worst = 0.0;
  for (double phi = 0.0; phi < kPi / 2 + base.theta - 0.05; phi += 0.1) {
    WedgeConfig w = base;
    w.phi = phi;
    if (d_perp(w) <= 0.0) continue;
    const Vec3 r0 = particle_position(w);
    double best = std::numeric_limits<double>::infinity();
    for (double t = -4.0; t <= 4.0; t += 1e-4) best = std::min(best, (surface_point(w, t, 0.0).position - r0).norm());
    worst = std::max(worst, std::abs(best - d_perp(w)));
  }
  return make("d_perp_brute_force", worst, 1e-6);
}

Check kernel_null_check(const WedgeConfig& w, const ValidationOptions& o) {
  const MediaPair media{{2.5, 1.0}, {2.5, 1.0}};
  CoefficientChoice c = CoefficientChoice::muller(media);
  if (fault(o, "null")) c.interior_e *= 1.0 + 1e-9;
  double worst = 0.0;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const auto a = surface_point(w, u(rng), u(rng));
    const auto b = surface_point(w, u(rng), u(rng));
    worst = std::max(worst, kernel_K(a, b, 2.1 + u(rng), media, c).cwiseAbs().maxCoeff());
  }
  return make("matched_media_kernel_null", worst, 0.0);
}

Check kernel_route_check(const WedgeConfig& w) {
  const MediaPair media{{10.0, 1.0}, {1.0, 1.0}};
  const auto c = CoefficientChoice::muller(media);
  double worst = 0.0;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const auto a = surface_point(w, u(rng), u(rng));
    const auto b = surface_point(w, u(rng), u(rng));
    const double kappa = 2.0 + u(rng);
    const Mat4 k = kernel_K(a, b, kappa, media, c);
    const auto full = kernel_K_full(a, b, kappa, media, c);
    Mat4 proj;
    for (int r = 0; r < 4; ++r)
      for (int s = 0; s < 4; ++s) {
        const Vec3& tr = r % 2 == 0 ? a.tangent_perp : a.tangent_z;
        const Vec3& ts = s % 2 == 0 ? b.tangent_perp : b.tangent_z;
        proj(r, s) = tr.dot(full.block<3, 3>(3 * (r / 2), 3 * (s / 2)) * ts);
      }
    worst = std::max(worst, (k - proj).cwiseAbs().maxCoeff() / std::max(1e-300, proj.cwiseAbs().maxCoeff()));
  }
  return make("kernel_closed_form_vs_blocks", worst, 1e-8);
}

Check shanks_check(const ValidationOptions& o) {
  double worst = 0.0;
  for (double a : {1.0, -0.3, 0.07, 25.0})
    for (double q : {0.5, -0.5, 0.1, 0.9, -0.8}) {
      double u0 = a, u1 = a * (1 + q), u2 = a * (1 + q + q * q);
      if (fault(o, "shanks")) u2 *= 1.0 + 1e-6;
      const double limit = a / (1 - q);
      worst = std::max(worst, std::abs(shanks(u0, u1, u2).value - limit) / std::abs(limit));
    }
  return make("shanks_geometric_exact", worst, 1e-12);
}

Check pec_continuity_check() {
  double worst = 0.0;
  for (double phi : {0.0, 0.3, 0.9, 1.3}) {
    const double plate = kUpsilonPecPlate / std::pow(std::cos(phi), 4);
    worst = std::max({worst, std::abs(pec_wedge_upsilon(1e-10, phi) - plate) / plate,
                      std::abs(pec_wedge_upsilon(-1e-10, phi) - plate) / plate});
  }
  return make("pec_wedge_planar_continuity", worst, 1e-8);
}

Check anchor_check() {
  const double v = plate_upsilon(1e8).upsilon;
  return make("plate_pec_anchor", std::abs(v / kUpsilonPecPlate - 1.0), 1e-3);
}

Check sphere_null_check(const RunConfig& cfg) {
  const MediaPair media{{1.0, 1.0}, {1.0, 1.0}};
  IntegrationSpec spec = cfg.mse.integration;
  spec.rel_tol = 1e-2;
  spec.max_evals = std::int64_t{1} << 18;
  const SphereFixture sphere;
  const auto e = delta_U(0, sphere, Vec3::Zero(), media, spec, CoefficientChoice::muller(media));
  // With matched media the integrand cancels pointwise up to rounding; allow
  // 1% of the integral of |f| on top of that.
  return make("sphere_extinction_null", std::abs(e.value), std::max(1e-2 * e.magnitude, 1e-14),
              "value " + std::to_string(e.value) + " +- " + std::to_string(e.abs_error));
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string ValidationReport::to_json() const {
  nlohmann::ordered_json j;
  j["passed"] = passed();
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e{{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"tolerance", c.tolerance}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    arr.push_back(e);
  }
  return j.dump(2);
}

ValidationReport run_validate(const RunConfig& cfg, const ValidationOptions& options) {
  if (options.inject_fault && *options.inject_fault != "frame" && *options.inject_fault != "shanks" &&
      *options.inject_fault != "null")
    throw ConfigError("unknown fault '" + *options.inject_fault + "' (frame | shanks | null)");
  const WedgeConfig w = probe_wedge(cfg);
  validate(w);
  ValidationReport rep;
  rep.checks.push_back(frame_check(w, options));
  rep.checks.push_back(continuity_check(w));
  rep.checks.push_back(d_perp_check(w));
  rep.checks.push_back(kernel_null_check(w, options));
  rep.checks.push_back(kernel_route_check(w));
  rep.checks.push_back(shanks_check(options));
  rep.checks.push_back(pec_continuity_check());
  rep.checks.push_back(anchor_check());
  if (options.include_integrals) rep.checks.push_back(sphere_null_check(cfg));
  return rep;
}

}  // namespace cpmse::app
