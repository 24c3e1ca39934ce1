#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cpmse/accel.hpp"
#include "cpmse/chart_map.hpp"
#include "cpmse/operators.hpp"
#include "cpmse/quadrature.hpp"

namespace cpmse {

/// Sum over p in {E, H} of tr[G_0^(Ep)(r0, u) M^(pE)(u, r0)].
double integrand_order0(const SurfaceSample& u, const Vec3& r0, double kappa, const MediaPair& media,
                        const CoefficientChoice& coeffs);

/// tr[G_0^(E.)(r0, u_0) K(u_0, u_1) ... K(u_{L-1}, u_L) M(u_L, r0)] for
/// L = samples.size() - 1, contracted over the tangential basis.
double integrand_orderL(std::span<const SurfaceSample> samples, const Vec3& r0, double kappa,
                        const MediaPair& media, const CoefficientChoice& coeffs);

/// Contribution of the K^L term to the potential, in units where
/// hbar c alpha = 1: delta U_L = -2 int dkappa kappa (surface integrals).
struct OrderEstimate {
  int order = 0;
  double value = 0.0;
  double abs_error = 0.0;
  std::int64_t evals = 0;
  IntegrationStatus status = IntegrationStatus::Converged;
  double magnitude = 0.0;
};

/// Integrates one order through an arbitrary chart map; spec.dimension is
/// overwritten with the map's dimension.
OrderEstimate delta_U(const ChartMap& map, const MediaPair& media, IntegrationSpec spec,
                      const CoefficientChoice& coeffs);

OrderEstimate delta_U(int order, const WedgeConfig& cfg, const MediaPair& media, const IntegrationSpec& spec,
                      const CoefficientChoice& coeffs, ChartScales scales = {});

OrderEstimate delta_U(int order, const SphereFixture& sphere, const Vec3& r0, const MediaPair& media,
                      const IntegrationSpec& spec, const CoefficientChoice& coeffs, ChartScales scales = {});

struct MseOptions {
  int max_order = 2;
  IntegrationSpec integration;           ///< dimension is set per order
  bool per_order_default_tolerance = true;  ///< use default_rel_tol(dim) instead of integration.rel_tol
  double policy_threshold = kEvenOddThreshold;
  ChartScales scales;
};

struct PotentialResult {
  std::vector<double> delta_U;
  std::vector<double> partial_sums;
  std::vector<double> errors;
  std::vector<IntegrationStatus> status;
  std::vector<std::int64_t> evals;
  AccelerationReport acceleration;
  double shanks_estimate = 0.0;  ///< accelerated potential U
  double shanks_error = 0.0;
  double total_error = 0.0;  ///< root-sum-square of the per-order errors
  double upsilon = 0.0;      ///< -U d^4 of the accelerated estimate
  double upsilon_error = 0.0;  ///< max(shanks_error, total_error) d^4

  // configuration echo
  WedgeConfig config;
  MediaPair media;
  MseOptions options;

  bool tolerance_met() const;
};

/// delta U_0 .. delta U_max_order for the wedge and their acceleration.
/// Needs max_order >= 2.
PotentialResult compute_potential(const WedgeConfig& cfg, const MediaPair& media, const MseOptions& options,
                                  const CoefficientChoice& coeffs);
PotentialResult compute_potential(const WedgeConfig& cfg, const MediaPair& media, const MseOptions& options);

/// Dimensionless amplitude -U d^4.
double upsilon(double potential, double d);
double upsilon(const PotentialResult& result, double d);

}  // namespace cpmse
