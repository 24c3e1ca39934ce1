#include <doctest.h>

#include <cmath>
#include <cstring>

#include "cpmse/mse.hpp"
#include "cpmse/reference.hpp"
#include "plate_fourier.hpp"

using namespace cpmse;

namespace {

const WedgeConfig kPlate{0.0, 0.0, 1.0, 0.0};
MediaPair vacuum_over(double eps1) { return {{eps1, 1.0}, {1.0, 1.0}}; }

OrderEstimate plate_order(double eps1, int order, double tol = 5e-3) {
  IntegrationSpec s;
  s.rel_tol = tol;
  const auto media = vacuum_over(eps1);
  return delta_U(order, kPlate, media, s, CoefficientChoice::muller(media));
}

}  // namespace

TEST_CASE("upsilon") {
  CHECK(upsilon(-0.375, 1.0) == doctest::Approx(0.375));
  CHECK(upsilon(-0.0783 / 16.0, 2.0) == doctest::Approx(0.0783));
}

TEST_CASE("Fourier oracle sums to the Lifshitz amplitude") {
  // The spectral series converges quickly for small contrast.
  const auto orders = oracle::plate_fourier_orders(1.5, 30);
  double sum = 0.0;
  for (double v : orders) sum += v;
  CHECK(sum == doctest::Approx(plate_upsilon(1.5).upsilon).epsilon(1e-4));
}

TEST_CASE("plate orders reproduce the spectral oracle") {
  for (double eps1 : {3.0, 10.0, 100.0}) {
    const auto ref = oracle::plate_fourier_orders(eps1, 2);
    for (int l = 0; l <= 2; ++l) {
      const OrderEstimate e = plate_order(eps1, l);
      CAPTURE(eps1);
      CAPTURE(l);
      CHECK(e.status == IntegrationStatus::Converged);
      CHECK(std::abs(-e.value - ref[static_cast<std::size_t>(l)]) <= 4.0 * e.abs_error + 1e-4 * std::abs(ref[l]));
    }
  }
}

TEST_CASE("frozen spectral orders (eps1 = 10)") {
  // delta Upsilon_0..2 from the Fourier representation.
  const auto ref = oracle::plate_fourier_orders(10.0, 2);
  CHECK(ref[0] == doctest::Approx(0.0488316).epsilon(1e-5));
  CHECK(ref[1] == doctest::Approx(0.0194419).epsilon(1e-4));
  CHECK(ref[2] == doctest::Approx(0.00677938).epsilon(1e-4));
}

TEST_CASE("plate eps1 = 10 end to end") {
  MseOptions o;
  const PotentialResult r = compute_potential(kPlate, vacuum_over(10.0), o);
  CHECK(r.upsilon == doctest::Approx(0.0786).epsilon(0.02));
  CHECK(r.tolerance_met());
  for (std::size_t l = 0; l < r.delta_U.size(); ++l) {
    double s = 0.0;
    for (std::size_t n = 0; n <= l; ++n) s += r.delta_U[n];
    CHECK(r.partial_sums[l] == s);
  }
  double rss = 0.0;
  for (double e : r.errors) rss += e * e;
  CHECK(r.upsilon_error >= std::sqrt(rss));
  CHECK(r.shanks_estimate < 0.0);
  CHECK(r.config.d == 1.0);
  CHECK(r.media.interior.epsilon == 10.0);
}

TEST_CASE("matched media nulls") {
  SUBCASE("K orders vanish exactly") {
    const auto media = vacuum_over(1.0);
    IntegrationSpec s;
    for (int l = 1; l <= 3; ++l) {
      const auto e = delta_U(l, WedgeConfig{0.75, 0.1, 1.0, 0.2}, media, s, CoefficientChoice::muller(media));
      CHECK(e.value == 0.0);
      CHECK(e.abs_error == 0.0);
    }
  }
  SUBCASE("sphere extinction") {
    const MediaPair media{{1.0, 1.0}, {1.0, 1.0}};
    IntegrationSpec s;
    s.max_evals = 1 << 18;
    const auto e = delta_U(0, SphereFixture{}, Vec3::Zero(), media, s, CoefficientChoice::muller(media));
    CHECK(std::abs(e.value) <= 1e-14);
    // A genuine contrast gives a clearly nonzero result on the same fixture.
    const MediaPair contrast{{4.0, 1.0}, {1.0, 1.0}};
    s.rel_tol = 1e-2;
    const auto c = delta_U(0, SphereFixture{}, Vec3::Zero(), contrast, s, CoefficientChoice::muller(contrast));
    CHECK(std::abs(c.value) > 10.0 * c.abs_error);
    CHECK(c.value < 0.0);
  }
}

TEST_CASE("odd orders are suppressed at large contrast") {
  const double r3 = std::abs(plate_order(3.0, 1).value / plate_order(3.0, 2).value);
  const double r100 = std::abs(plate_order(100.0, 1).value / plate_order(100.0, 2).value);
  CHECK(r100 < r3 / 10.0);
}

TEST_CASE("scale invariance") {
  MseOptions o;
  const auto media = vacuum_over(10.0);
  const auto a = compute_potential({0.75, 0.1, 1.0, 0.3}, media, o);
  const auto b = compute_potential({0.75, 0.2, 2.0, 0.3}, media, o);
  CHECK(std::abs(a.upsilon - b.upsilon) <= 2.0 * std::hypot(a.upsilon_error, b.upsilon_error) + 2e-3 * a.upsilon);
  CHECK(b.shanks_estimate == doctest::Approx(a.shanks_estimate / 16.0).epsilon(0.02));
}

TEST_CASE("potential is attractive and grows towards the face") {
  MseOptions o;
  const auto media = vacuum_over(10.0);
  double prev = 0.0;
  for (double phi : {0.0, 0.5, 1.0, 1.5}) {
    const auto r = compute_potential({0.75, 0.1, 1.0, phi}, media, o);
    CHECK(r.shanks_estimate < 0.0);
    CHECK(r.upsilon > prev);
    prev = r.upsilon;
  }
}

TEST_CASE("truncation doubling is stable") {
  const auto media = vacuum_over(10.0);
  for (int l : {0, 1}) {
    IntegrationSpec s;
    s.rel_tol = 2e-3;
    const auto full = delta_U(l, kPlate, media, s, CoefficientChoice::muller(media));
    s.compactification = Compactification::Truncated;
    s.truncation = {12.0, 12.0};
    const auto t12 = delta_U(l, kPlate, media, s, CoefficientChoice::muller(media));
    s.truncation = {24.0, 24.0};
    const auto t24 = delta_U(l, kPlate, media, s, CoefficientChoice::muller(media));
    const double tol = 4.0 * std::hypot(t12.abs_error, t24.abs_error);
    CHECK(std::abs(t12.value - t24.value) <= tol + 2e-3 * std::abs(t24.value));
    CHECK(std::abs(full.value - t24.value) <= 4.0 * std::hypot(full.abs_error, t24.abs_error) + 2e-3 * std::abs(t24.value));
  }
}

TEST_CASE("bit-identical reruns") {
  MseOptions o;
  const auto media = vacuum_over(3.0);
  const WedgeConfig w{-0.75, -0.1, 1.0, 0.2};
  const auto a = compute_potential(w, media, o);
  const auto b = compute_potential(w, media, o);
  o.integration.threads = 2;
  const auto c = compute_potential(w, media, o);
  REQUIRE(a.delta_U.size() == b.delta_U.size());
  CHECK(std::memcmp(a.delta_U.data(), b.delta_U.data(), a.delta_U.size() * sizeof(double)) == 0);
  CHECK(std::memcmp(a.delta_U.data(), c.delta_U.data(), a.delta_U.size() * sizeof(double)) == 0);
  CHECK(std::memcmp(&a.upsilon, &c.upsilon, sizeof(double)) == 0);
}

TEST_CASE("tolerance misses are propagated") {
  MseOptions o;
  o.per_order_default_tolerance = false;
  o.integration.rel_tol = 1e-7;
  o.integration.max_evals = 1 << 16;
  const auto r = compute_potential(kPlate, vacuum_over(10.0), o);
  CHECK_FALSE(r.tolerance_met());
  CHECK(r.status.back() == IntegrationStatus::ToleranceMiss);
}

TEST_CASE("order limits") {
  MseOptions o;
  o.max_order = 1;
  CHECK_THROWS_AS(compute_potential(kPlate, vacuum_over(10.0), o), ConfigError);
  o.max_order = kMaxOrder + 1;
  CHECK_THROWS_AS(compute_potential(kPlate, vacuum_over(10.0), o), ConfigError);
  o.max_order = 2;
  CHECK_THROWS_AS(compute_potential({0.75, 0.0, 1.0, 0.0}, vacuum_over(10.0), o), ConfigError);
}
