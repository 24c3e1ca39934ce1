#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cpmse {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat43 = Eigen::Matrix<double, 4, 3>;
using Mat34 = Eigen::Matrix<double, 3, 4>;

inline constexpr double kPi = 3.14159265358979323846;

/// Out-of-range geometry, media or integration parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A propagator was requested at coincident points.
class SingularEvaluation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace cpmse
