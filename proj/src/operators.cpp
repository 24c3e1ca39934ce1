#include "cpmse/operators.hpp"

#include <cmath>

namespace cpmse {

namespace {

// Rows of t_j(u)^T [n(u)]x, i.e. t_perp x n = -t_z and t_z x n = t_perp.
struct RotatedFrame {
  Vec3 perp, z;
  explicit RotatedFrame(const SurfaceSample& u) : perp(-u.tangent_z), z(u.tangent_perp) {}
  const Vec3& operator[](int j) const { return j == 0 ? perp : z; }
};

const Vec3& tangent(const SurfaceSample& u, int j) { return j == 0 ? u.tangent_perp : u.tangent_z; }

struct Separation {
  Vec3 unit;
  double dist;
};

Separation separation(const Vec3& obs, const Vec3& src, const char* what) {
  const Vec3 sep = obs - src;
  const double dist = sep.norm();
  if (!(dist > 0.0)) throw SingularEvaluation(what);
  return {sep / dist, dist};
}

void check_kappa(double kappa) {
  if (!(kappa > 0.0)) throw ConfigError("kernels require kappa > 0");
}

}  // namespace

CoefficientChoice CoefficientChoice::muller(const MediaPair& media) {
  return {media.interior.epsilon, media.interior.mu, media.exterior.epsilon, media.exterior.mu};
}

void CoefficientChoice::validate() const {
  if (interior_e == 0.0 || interior_h == 0.0 || exterior_e == 0.0 || exterior_h == 0.0)
    throw ConfigError("coefficient matrices must be invertible");
  if (interior_e + exterior_e == 0.0 || interior_h + exterior_h == 0.0)
    throw ConfigError("C_i + C_e must be invertible");
}

KernelBlock kernel_K(const SurfaceSample& u, const SurfaceSample& up, double kappa, const MediaPair& media,
                     const CoefficientChoice& c) {
  check_kappa(kappa);
  const auto [unit, dist] = separation(u.position, up.position, "kernel_K at coincident points");
  const double y = kappa * dist;
  const double pre = kappa / (4.0 * kPi * dist);
  const double z1 = media.interior.index() * y;
  const double z0 = media.exterior.index() * y;
  const double fa1 = tail_a(z1), fb1 = tail_b(z1), fc1 = tail_c(z1);
  const double fa0 = tail_a(z0), fb0 = tail_b(z0), fc0 = tail_c(z0);

  const double we1 = c.interior_e / media.interior.epsilon, we0 = c.exterior_e / media.exterior.epsilon;
  const double wh1 = c.interior_h / media.interior.mu, wh0 = c.exterior_h / media.exterior.mu;
  // Static parts kept separate so that they cancel exactly for matched weights.
  const double alpha_e = (we1 - we0) + we1 * fa1 - we0 * fa0;
  const double beta_e = 3.0 * ((we1 - we0) + we1 * fb1 - we0 * fb0);
  const double gamma_e = (c.interior_e - c.exterior_e) + c.interior_e * fc1 - c.exterior_e * fc0;
  const double alpha_h = (wh1 - wh0) + wh1 * fa1 - wh0 * fa0;
  const double beta_h = 3.0 * ((wh1 - wh0) + wh1 * fb1 - wh0 * fb0);
  const double gamma_h = (c.interior_h - c.exterior_h) + c.interior_h * fc1 - c.exterior_h * fc0;

  const double se = 2.0 / (c.interior_e + c.exterior_e);
  const double sh = 2.0 / (c.interior_h + c.exterior_h);
  const double dyad_scale = pre / (y * y);
  const double curl_scale = pre / y;

  const RotatedFrame rot(u);
  KernelBlock k;
  for (int j = 0; j < 2; ++j) {
    const double a = rot[j].dot(unit);
    for (int jp = 0; jp < 2; ++jp) {
      const Vec3& t = tangent(up, jp);
      const double cc = rot[j].dot(t);
      const double ab = a * unit.dot(t);
      const double e = rot[j].dot(unit.cross(t));
      k(j, jp) = sh * curl_scale * gamma_h * e;
      k(j, 2 + jp) = sh * dyad_scale * (alpha_h * cc - beta_h * ab);
      k(2 + j, jp) = -se * dyad_scale * (alpha_e * cc - beta_e * ab);
      k(2 + j, 2 + jp) = se * curl_scale * gamma_e * e;
    }
  }
  return k;
}

BulkSurfaceBlock kernel_M(const SurfaceSample& u, const Vec3& r0, double kappa, const MediaPair& media,
                          const CoefficientChoice& c) {
  check_kappa(kappa);
  const auto [unit, dist] = separation(u.position, r0, "kernel_M with the particle on the surface");
  const Medium& ext = media.exterior;
  const double y = kappa * dist;
  const double pre = kappa / (4.0 * kPi * dist);
  const double z0 = ext.index() * y;
  const double same_a = 1.0 + tail_a(z0);
  const double same_b = 3.0 * (1.0 + tail_b(z0));
  const double mixed = 1.0 + tail_c(z0);

  const double wh = 2.0 * c.exterior_h / (c.interior_h + c.exterior_h);
  const double we = 2.0 * c.exterior_e / (c.interior_e + c.exterior_e);
  const double curl = -wh * pre / y * mixed;
  const double dyad = we * pre / (ext.epsilon * y * y);

  const RotatedFrame rot(u);
  BulkSurfaceBlock m;
  for (int j = 0; j < 2; ++j) {
    m.row(j) = curl * rot[j].cross(unit).transpose();
    m.row(2 + j) = dyad * (same_a * rot[j] - same_b * rot[j].dot(unit) * unit).transpose();
  }
  return m;
}

Mat34 green_row_E(const Vec3& r0, const SurfaceSample& u, double kappa, const Medium& ext) {
  check_kappa(kappa);
  const auto [unit, dist] = separation(r0, u.position, "green_row_E with the particle on the surface");
  const double y = kappa * dist;
  const double pre = kappa / (4.0 * kPi * dist);
  const double z0 = ext.index() * y;
  const double same_a = 1.0 + tail_a(z0);
  const double same_b = 3.0 * (1.0 + tail_b(z0));
  const double mixed = 1.0 + tail_c(z0);
  const double dyad = -pre / (ext.epsilon * y * y);
  const double curl = pre / y * mixed;

  Mat34 g;
  for (int j = 0; j < 2; ++j) {
    const Vec3& t = tangent(u, j);
    g.col(j) = dyad * (same_a * t - same_b * unit.dot(t) * unit);
    g.col(2 + j) = curl * unit.cross(t);
  }
  return g;
}

Eigen::Matrix<double, 6, 6> kernel_K_full(const SurfaceSample& u, const SurfaceSample& up, double kappa,
                                          const MediaPair& media, const CoefficientChoice& c) {
  const GreenBlocks g1 = green_blocks(media.interior, kappa, u.position, up.position);
  const GreenBlocks g0 = green_blocks(media.exterior, kappa, u.position, up.position);
  const double same = kSameFieldScale * kappa;
  const double mixed = kMixedFieldScale * kappa;

  const Mat3 e_row_e = same * (c.interior_e * g1.EE - c.exterior_e * g0.EE);
  const Mat3 e_row_h = mixed * (c.interior_e * g1.EH - c.exterior_e * g0.EH);
  const Mat3 h_row_e = mixed * (c.interior_h * g1.HE - c.exterior_h * g0.HE);
  const Mat3 h_row_h = same * (c.interior_h * g1.HH - c.exterior_h * g0.HH);

  const Mat3 nx = cross_matrix(u.normal);
  const double se = 2.0 / (c.interior_e + c.exterior_e);
  const double sh = 2.0 / (c.interior_h + c.exterior_h);
  Eigen::Matrix<double, 6, 6> k;
  k.block<3, 3>(0, 0) = -sh * nx * h_row_e;
  k.block<3, 3>(0, 3) = -sh * nx * h_row_h;
  k.block<3, 3>(3, 0) = se * nx * e_row_e;
  k.block<3, 3>(3, 3) = se * nx * e_row_h;
  return k;
}

}  // namespace cpmse
