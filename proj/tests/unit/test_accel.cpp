#include <doctest.h>

#include <cmath>
#include <random>

#include "cpmse/accel.hpp"
#include "cpmse/types.hpp"

using namespace cpmse;

TEST_CASE("shanks examples") {
  CHECK(shanks(1.0, 1.5, 1.75).value == doctest::Approx(2.0).epsilon(1e-15));
  const auto deg = shanks(5.0, 5.0, 5.0);
  CHECK(deg.status == ShanksStatus::Degenerate);
  CHECK(deg.value == 5.0);
  const double a = 0.07, q = 0.1;
  CHECK(shanks(0.0, a, a * (1 + q)).value == doctest::Approx(a / (1 - q)).epsilon(1e-14));
}

TEST_CASE("shanks is exact on geometric partial sums") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = 10.0 * u(rng), q = 0.95 * u(rng), limit = 3.0 * u(rng);
    if (std::abs(q) < 1e-3 || std::abs(a) < 1e-3) continue;
    // U_l = U + alpha q^l
    const double s = shanks(limit + a, limit + a * q, limit + a * q * q).value;
    CHECK(s == doctest::Approx(limit).epsilon(1e-12).scale(std::abs(a)));
  }
}

TEST_CASE("shanks commutes with affine maps") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng), y = u(rng), z = u(rng), c = 5.0 * u(rng), b = 5.0 * u(rng);
    if (std::abs(c) < 1e-2 || std::abs(z - 2 * y + x) < 1e-3) continue;
    const double lhs = shanks(c * x + b, c * y + b, c * z + b).value;
    const double rhs = c * shanks(x, y, z).value + b;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(std::abs(c) + std::abs(b) + 1.0));
  }
}

TEST_CASE("plain policy") {
  // Plate, eps1 = 10, orders 0..2 in amplitude units.
  const std::vector<double> u{0.0488316, 0.0682735, 0.0750529};
  const auto rep = accelerate(u, 10.0);
  CHECK(rep.policy == AccelPolicy::Plain);
  CHECK(rep.final_estimate == doctest::Approx(0.0786).epsilon(2e-3));
  CHECK(rep.spread == doctest::Approx(std::abs(rep.final_estimate - u[2])));
  CHECK_FALSE(rep.fallback);

  const std::vector<double> g{1.0, 1.5, 1.75};
  const auto exact = accelerate(g, 3.0);
  CHECK(exact.final_estimate == doctest::Approx(2.0));
  // Exact geometric triple: the extrapolated limit is exact; with four sums the spread vanishes.
  const auto four = accelerate(std::vector<double>{1.0, 1.5, 1.75, 1.875}, 3.0);
  CHECK(four.spread == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("even/odd policy") {
  SUBCASE("fallback with three sums") {
    const auto rep = accelerate(std::vector<double>{0.0585, 0.0718, 0.0909}, 100.0);
    CHECK(rep.policy == AccelPolicy::Plain);
    CHECK(rep.fallback);
    CHECK_FALSE(rep.note.empty());
  }
  SUBCASE("two interleaved geometric series are recovered") {
    // even terms a q^k, odd terms b r^k
    const double a = 0.06, q = 0.3, b = 0.013, r = 0.2;
    std::vector<double> partial;
    double sum = 0.0;
    for (int l = 0; l < 6; ++l) {
      sum += (l % 2 == 0) ? a * std::pow(q, l / 2) : b * std::pow(r, l / 2);
      partial.push_back(sum);
    }
    const auto rep = accelerate(partial, 100.0);
    CHECK(rep.policy == AccelPolicy::EvenOdd);
    CHECK(rep.final_estimate == doctest::Approx(a / (1 - q) + b / (1 - r)).epsilon(1e-12));
    CHECK(rep.note.empty());
    // Below the threshold the same sums use the plain policy.
    CHECK(accelerate(partial, 10.0).policy == AccelPolicy::Plain);
  }
  SUBCASE("five sums: odd branch enters as its partial sum") {
    const std::vector<double> partial{1.0, 1.1, 1.4, 1.41, 1.49};
    const auto rep = accelerate(partial, 100.0);
    CHECK(rep.policy == AccelPolicy::EvenOdd);
    CHECK(rep.final_estimate == doctest::Approx(shanks(1.0, 1.3, 1.38).value + 0.11));
    CHECK_FALSE(rep.note.empty());
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(accelerate(std::vector<double>{1.0, 2.0}, 3.0), ConfigError);
  CHECK(to_string(AccelPolicy::EvenOdd) == "even_odd");
}

TEST_CASE("error propagation") {
  const std::vector<double> u{0.0488316, 0.0682735, 0.0750529};
  const std::vector<double> err{1e-5, 1e-5, 1e-5};
  const double e = propagate_error(u, err, 10.0);
  CHECK(e > 1e-5);  // a shift of delta U_0 moves the limit one to one
  CHECK(e < 1e-3);
  // Deterministic and independent of the order in which it is called.
  CHECK(propagate_error(u, err, 10.0) == e);
}
