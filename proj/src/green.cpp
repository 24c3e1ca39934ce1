#include "cpmse/green.hpp"

#include <array>
#include <cmath>

namespace cpmse {

namespace {

constexpr int kSeriesTerms = 22;

// Taylor coefficients of exp(-z) * (p0 + p1 z + p2 z^2) - 1.
constexpr std::array<double, kSeriesTerms> series(double p0, double p1, double p2) {
  std::array<double, kSeriesTerms> e{};
  double f = 1.0;
  for (int k = 0; k < kSeriesTerms; ++k) {
    if (k > 0) f /= k;
    e[k] = (k % 2 == 0 ? 1.0 : -1.0) * f;
  }
  std::array<double, kSeriesTerms> c{};
  for (int k = 0; k < kSeriesTerms; ++k) {
    c[k] = p0 * e[k] + (k >= 1 ? p1 * e[k - 1] : 0.0) + (k >= 2 ? p2 * e[k - 2] : 0.0);
  }
  c[0] -= 1.0;
  return c;
}

constexpr auto kSeriesA = series(1.0, 1.0, 1.0);
constexpr auto kSeriesB = series(1.0, 1.0, 1.0 / 3.0);
constexpr auto kSeriesC = series(1.0, 1.0, 0.0);

double horner(const std::array<double, kSeriesTerms>& c, double z) {
  double acc = 0.0;
  for (int k = kSeriesTerms - 1; k >= 0; --k) acc = acc * z + c[k];
  return acc;
}

constexpr double kSeriesCutoff = 1.0;

}  // namespace

double Medium::index() const { return std::sqrt(epsilon * mu); }

void Medium::validate() const {
  if (!(epsilon > 0.0) || !(mu > 0.0) || !std::isfinite(epsilon) || !std::isfinite(mu))
    throw ConfigError("medium requires epsilon > 0 and mu > 0");
}

double tail_a(double z) {
  if (z < kSeriesCutoff) return horner(kSeriesA, z);
  return std::exp(-z) * (1.0 + z + z * z) - 1.0;
}

double tail_b(double z) {
  if (z < kSeriesCutoff) return horner(kSeriesB, z);
  return std::exp(-z) * (1.0 + z + z * z / 3.0) - 1.0;
}

double tail_c(double z) {
  if (z < kSeriesCutoff) return horner(kSeriesC, z);
  return std::exp(-z) * (1.0 + z) - 1.0;
}

Mat3 cross_matrix(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return m;
}

GreenBlocks green_blocks(const Medium& medium, double kappa, const Vec3& r, const Vec3& r_prime) {
  if (!(kappa > 0.0)) throw ConfigError("green_blocks requires kappa > 0");
  const Vec3 sep = r - r_prime;
  const double dist = sep.norm();
  if (!(dist > 0.0)) throw SingularEvaluation("green_blocks at coincident points");

  const Vec3 unit = sep / dist;
  const double n = medium.index();
  const double x = n * kappa * dist;
  const double g = std::exp(-x) / (4.0 * kPi * dist);
  const double a = 1.0 + 1.0 / x + 1.0 / (x * x);
  const double b = -(1.0 + 3.0 / x + 3.0 / (x * x));
  const Mat3 dyad = a * Mat3::Identity() + b * unit * unit.transpose();

  GreenBlocks out;
  out.kappa = kappa;
  out.separation = sep;
  out.EE = medium.mu * g * dyad;
  out.HH = medium.epsilon * g * dyad;
  out.EH = n * g * (1.0 + 1.0 / x) * cross_matrix(unit);
  out.HE = -out.EH;
  return out;
}

}  // namespace cpmse
