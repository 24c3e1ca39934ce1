#include "cpmse/accel.hpp"

#include <algorithm>
#include <cmath>

#include "cpmse/types.hpp"

namespace cpmse {

namespace {

struct Branch {
  double estimate = 0.0;
  double spread = 0.0;
  bool transformed = false;
};

Branch accelerate_branch(const std::vector<double>& sums) {
  Branch b;
  const std::size_t n = sums.size();
  if (n >= 3) {
    b.estimate = shanks(sums[n - 3], sums[n - 2], sums[n - 1]).value;
    b.spread = std::abs(b.estimate - sums[n - 1]);
    b.transformed = true;
  } else if (n > 0) {
    b.estimate = sums[n - 1];
    b.spread = n >= 2 ? std::abs(sums[n - 1] - sums[n - 2]) : std::abs(sums[0]);
  }
  return b;
}

}  // namespace

ShanksValue shanks(double u_prev, double u, double u_next) {
  const double denom = u_next - 2.0 * u + u_prev;
  const double scale = std::max({std::abs(u_prev), std::abs(u), std::abs(u_next)});
  if (std::abs(denom) <= kDegenerateTolerance * scale) return {u_next, ShanksStatus::Degenerate};
  // Same algebra as (u_next u_prev - u^2) / denom, arranged to avoid cancellation.
  const double d_next = u_next - u;
  return {u_next - d_next * d_next / denom, ShanksStatus::Ok};
}

std::string to_string(AccelPolicy p) { return p == AccelPolicy::Plain ? "plain" : "even_odd"; }

AccelerationReport accelerate(std::span<const double> partials, double epsilon1, double policy_threshold) {
  if (partials.size() < 3) throw ConfigError("acceleration needs at least three partial sums");
  AccelerationReport rep;
  rep.input_sums.assign(partials.begin(), partials.end());
  for (std::size_t l = 1; l + 1 < partials.size(); ++l)
    rep.shanks.push_back(shanks(partials[l - 1], partials[l], partials[l + 1]).value);

  const bool wants_split = epsilon1 >= policy_threshold;
  if (wants_split && partials.size() >= static_cast<std::size_t>(kEvenOddMinSums)) {
    std::vector<double> even, odd;
    double prev = 0.0;
    for (std::size_t l = 0; l < partials.size(); ++l) {
      const double term = partials[l] - prev;
      prev = partials[l];
      auto& branch = (l % 2 == 0) ? even : odd;
      branch.push_back((branch.empty() ? 0.0 : branch.back()) + term);
    }
    const Branch be = accelerate_branch(even);
    const Branch bo = accelerate_branch(odd);
    rep.policy = AccelPolicy::EvenOdd;
    rep.final_estimate = be.estimate + bo.estimate;
    rep.spread = be.spread + bo.spread;
    if (!bo.transformed) rep.note = "odd branch has fewer than three sums; its partial sum is used";
    return rep;
  }

  rep.policy = AccelPolicy::Plain;
  rep.final_estimate = rep.shanks.front();
  if (rep.shanks.size() >= 2)
    rep.spread = std::abs(rep.shanks.back() - rep.shanks[rep.shanks.size() - 2]);
  else
    rep.spread = std::abs(rep.shanks.front() - partials[2]);
  if (wants_split) {
    rep.fallback = true;
    rep.note = "even/odd split needs orders through 4; plain S(U_1) used";
  }
  return rep;
}

double propagate_error(std::span<const double> partials, std::span<const double> order_errors, double epsilon1,
                       double policy_threshold) {
  std::vector<double> p(partials.begin(), partials.end());
  double var = 0.0;
  for (std::size_t l = 0; l < order_errors.size() && l < p.size(); ++l) {
    const double h = order_errors[l];
    if (h == 0.0) continue;
    // Shifting delta U_l moves every partial sum from l on.
    auto shifted = [&](double by) {
      std::vector<double> q = p;
      for (std::size_t k = l; k < q.size(); ++k) q[k] += by;
      return accelerate(q, epsilon1, policy_threshold).final_estimate;
    };
    const double deriv = (shifted(h) - shifted(-h)) / 2.0;
    var += deriv * deriv;
  }
  return std::sqrt(var);
}

}  // namespace cpmse
