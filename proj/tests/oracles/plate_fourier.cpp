#include "plate_fourier.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

namespace oracle {

namespace {

using cd = std::complex<double>;
using CMat3 = Eigen::Matrix<cd, 3, 3>;
using CMat6 = Eigen::Matrix<cd, 6, 6>;
using CVec3 = Eigen::Matrix<cd, 3, 1>;
constexpr double kPi = 3.14159265358979323846;

CMat3 crossmat(const CVec3& a) {
  CMat3 m;
  m << 0.0, -a(2), a(1), a(2), 0.0, -a(0), -a(1), a(0), 0.0;
  return m;
}

struct Rule {
  std::vector<double> x, w;
};

// Gauss-Legendre on [0, 1].
Rule legendre_rule(int n) {
  const auto zeros = boost::math::legendre_p_zeros<double>(n);
  Rule r;
  for (double z : zeros) {
    const double dp = boost::math::legendre_p_prime(n, z);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    for (double s : {z, -z}) {
      if (s == -z && z == 0.0) continue;
      r.x.push_back(0.5 * (s + 1.0));
      r.w.push_back(0.5 * w);
    }
  }
  return r;
}

// Trace of G K^l M for l = 0..L at one (kappa, k); plane x = 0, particle at (1, 0, 0),
// in-plane wavevector along y.
std::vector<double> traces(double kap, double k, double eps1, int L) {
  const double q0 = std::sqrt(k * k + kap * kap);
  const double q1 = std::sqrt(k * k + eps1 * kap * kap);
  const cd I(0.0, 1.0);
  const CMat3 nx = crossmat(CVec3(1.0, 0.0, 0.0));
  const double e = std::exp(-q0) / (2.0 * q0);

  const CVec3 v(-q0, I * k, 0.0);  // gradient, particle <- surface
  const CVec3 w(q0, I * k, 0.0);   // gradient, surface <- particle
  const CMat3 gee_ru = -kap * (CMat3::Identity() - v * v.transpose() / (kap * kap)) * e;
  const CMat3 geh_ru = -crossmat(v * e);
  const CMat3 gee_ur = -kap * (CMat3::Identity() - w * w.transpose() / (kap * kap)) * e;
  const CMat3 ghe_ur = crossmat(w * e);

  Eigen::Matrix<cd, 6, 3> M;
  M.topRows<3>() = nx * ghe_ur;
  M.bottomRows<3>() = -(2.0 / (eps1 + 1.0)) * nx * gee_ur;

  auto dmat = [&](double eps, double q) {
    const CVec3 kv(0.0, k, 0.0);
    CMat3 D = (eps * CMat3::Identity() + kv * kv.transpose() / (kap * kap)) / (2.0 * q);
    CMat3 P = CMat3::Zero();
    P(1, 1) = P(2, 2) = 1.0;
    return CMat3(P * D * P);
  };
  const CMat3 dd = dmat(eps1, q1) - dmat(1.0, q0);
  CMat6 K = CMat6::Zero();
  K.block<3, 3>(0, 3) = kap * nx * dd;
  K.block<3, 3>(3, 0) = -(2.0 * kap / (eps1 + 1.0)) * nx * dd;

  Eigen::Matrix<cd, 3, 6> G;
  G << gee_ru, geh_ru;

  std::vector<double> out;
  Eigen::Matrix<cd, 6, 3> X = M;
  for (int l = 0; l <= L; ++l) {
    out.push_back((G * X).trace().real());
    X = K * X;
  }
  return out;
}

}  // namespace

std::vector<double> plate_fourier_orders(double eps1, int L, int nodes) {
  const Rule r = legendre_rule(nodes);
  std::vector<double> total(static_cast<std::size_t>(L + 1), 0.0);
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    const double s = r.x[i];
    const double kap = s / (1.0 - s), wkap = r.w[i] / ((1.0 - s) * (1.0 - s));
    for (std::size_t j = 0; j < r.x.size(); ++j) {
      const double t = r.x[j];
      const double k = t / (1.0 - t), wk = r.w[j] / ((1.0 - t) * (1.0 - t));
      const auto tr = traces(kap, k, eps1, L);
      for (int l = 0; l <= L; ++l)
        total[static_cast<std::size_t>(l)] += wkap * wk * (-2.0 * kap * tr[static_cast<std::size_t>(l)] * k / (2.0 * kPi));
    }
  }
  for (double& v : total) v = -v;
  return total;
}

double plate_polar(double eps1) {
  auto f = [eps1](double t) {
    const double c2 = std::cos(t) * std::cos(t), s2 = 1.0 - c2;
    const double w = std::sqrt(eps1 * c2 + s2);
    const double rtm = (eps1 - w) / (eps1 + w), rte = (1.0 - w) / (1.0 + w);
    return std::sin(t) * ((1.0 + s2) * rtm - c2 * rte);
  };
  return 3.0 / (16.0 * kPi) *
         boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, kPi / 2, 15, 1e-13);
}

}  // namespace oracle
