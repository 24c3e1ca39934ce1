#pragma once

#include <span>
#include <string>
#include <vector>

namespace cpmse {

enum class ShanksStatus { Ok, Degenerate };

struct ShanksValue {
  double value = 0.0;
  ShanksStatus status = ShanksStatus::Ok;
};

/// One Shanks step on three consecutive partial sums,
///   S = (u_next u_prev - u^2) / (u_next - 2 u + u_prev).
/// Exact for partial sums of a geometric series. When the second difference
/// is below 1e-12 of the largest input the sequence is taken as converged and
/// u_next is returned with a Degenerate status.
ShanksValue shanks(double u_prev, double u, double u_next);

inline constexpr double kDegenerateTolerance = 1e-12;

enum class AccelPolicy { Plain, EvenOdd };

std::string to_string(AccelPolicy p);

struct AccelerationReport {
  std::vector<double> input_sums;
  std::vector<double> shanks;  ///< S(U_1), S(U_2), ... of the full sequence
  AccelPolicy policy = AccelPolicy::Plain;
  double final_estimate = 0.0;
  double spread = 0.0;  ///< extrapolation-error proxy
  bool fallback = false;
  std::string note;
};

inline constexpr double kEvenOddThreshold = 50.0;
inline constexpr int kEvenOddMinSums = 5;

/// Accelerates the partial sums U_0, U_1, ... of a scattering expansion.
///
/// Plain policy: final estimate S(U_1) from (U_0, U_1, U_2). The spread is
/// |S(U_l) - S(U_{l-1})| for the two highest available l, or |S(U_1) - U_2|
/// with only three sums.
///
/// Even/odd policy (epsilon1 >= threshold and at least five sums): the even
/// and odd order contributions are summed separately, each branch is Shanks
/// transformed on its highest three partial sums and the branch limits are
/// added. A branch with fewer than three sums contributes its last partial
/// sum. With too few sums the plain policy is used and `fallback` is set.
///
/// Throws ConfigError for fewer than three partial sums.
AccelerationReport accelerate(std::span<const double> partials, double epsilon1,
                              double policy_threshold = kEvenOddThreshold);

/// First-order error of the accelerated estimate for independent per-order
/// errors (central differences of the acceleration map).
double propagate_error(std::span<const double> partials, std::span<const double> order_errors, double epsilon1,
                       double policy_threshold = kEvenOddThreshold);

}  // namespace cpmse
