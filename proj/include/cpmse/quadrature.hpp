#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>

namespace cpmse {

/// How the unbounded surface chart is mapped onto the unit cube.
enum class Compactification {
  Rational,   ///< radial maps over the whole chart, no cut-off
  Truncated,  ///< same maps, integrand zeroed outside |t| <= T_max, |z| <= Z_max
};

Compactification parse_compactification(const std::string& name);
std::string to_string(Compactification c);

struct Truncation {
  double t_max = 12.0;  ///< in units of d
  double z_max = 12.0;
};

struct IntegrationSpec {
  int dimension = 3;
  double rel_tol = 5e-3;
  double abs_tol = 0.0;
  std::int64_t max_evals = std::int64_t{1} << 24;
  std::uint64_t seed = 20240601;
  int replicates = 16;
  Truncation truncation;
  Compactification compactification = Compactification::Rational;
  int threads = 1;

  void validate() const;
};

/// Default relative tolerance for an integral of the given dimension.
double default_rel_tol(int dimension);

enum class IntegrationStatus { Converged, ToleranceMiss };

std::string to_string(IntegrationStatus s);

struct IntegralEstimate {
  double value = 0.0;
  double abs_error = 0.0;
  std::int64_t evals = 0;
  IntegrationStatus status = IntegrationStatus::Converged;
  double magnitude = 0.0;  ///< integral of |f|, scale for null checks
};

using Integrand = std::function<double(std::span<const double>)>;

/// Randomized quasi-Monte Carlo over the open unit cube.
///
/// Each of `spec.replicates` independent digital shifts of a Sobol sequence
/// gives one estimate; the mean is reported with the standard error across
/// replicates. Points are added in doubling rounds until the error drops below
/// max(rel_tol |value|, abs_tol) or the budget is spent. Summation runs over
/// fixed-size blocks in a fixed order, so the result does not depend on the
/// thread count. `f` must be safe to call concurrently.
IntegralEstimate integrate(const Integrand& f, const IntegrationSpec& spec);

}  // namespace cpmse
