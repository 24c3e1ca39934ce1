#include "cpmse/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include <boost/random/sobol.hpp>

#include "cpmse/types.hpp"

namespace cpmse {

namespace {

constexpr std::int64_t kBlock = 2048;
constexpr std::int64_t kFirstRound = 4096;
constexpr int kMaxDimension = 64;

struct BlockSums {
  double sum = 0.0;
  double abs_sum = 0.0;
};

BlockSums eval_block(const Integrand& f, int dim, std::uint64_t start, std::int64_t count,
                     std::span<const std::uint64_t> shift) {
  boost::random::sobol gen(static_cast<std::size_t>(dim));
  gen.seed(start);
  std::vector<double> x(static_cast<std::size_t>(dim));
  BlockSums s;
  for (std::int64_t i = 0; i < count; ++i) {
    for (int k = 0; k < dim; ++k) {
      const std::uint64_t v = static_cast<std::uint64_t>(gen()) ^ shift[static_cast<std::size_t>(k)];
      x[static_cast<std::size_t>(k)] = (static_cast<double>(v >> 11) + 0.5) * 0x1.0p-53;
    }
    const double fx = f(x);
    s.sum += fx;
    s.abs_sum += std::abs(fx);
  }
  return s;
}

}  // namespace

Compactification parse_compactification(const std::string& name) {
  if (name == "rational") return Compactification::Rational;
  if (name == "truncated") return Compactification::Truncated;
  throw ConfigError("unknown compactification '" + name + "' (rational | truncated)");
}

std::string to_string(Compactification c) {
  return c == Compactification::Rational ? "rational" : "truncated";
}

std::string to_string(IntegrationStatus s) {
  return s == IntegrationStatus::Converged ? "ok" : "tolerance_miss";
}

double default_rel_tol(int dimension) { return dimension <= 5 ? 5e-3 : 1e-2; }

void IntegrationSpec::validate() const {
  if (dimension < 1 || dimension > kMaxDimension) throw ConfigError("integration dimension out of range");
  if (!(rel_tol > 0.0)) throw ConfigError("rel_tol must be positive");
  if (abs_tol < 0.0) throw ConfigError("abs_tol must be non-negative");
  if (max_evals <= 0) throw ConfigError("max_evals must be positive");
  if (replicates < 2) throw ConfigError("at least two replicates are needed for an error estimate");
  if (!(truncation.t_max > 0.0) || !(truncation.z_max > 0.0)) throw ConfigError("truncation must be positive");
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

IntegralEstimate integrate(const Integrand& f, const IntegrationSpec& spec) {
  spec.validate();
  const int dim = spec.dimension;
  const int reps = spec.replicates;

  std::mt19937_64 rng(spec.seed);
  std::vector<std::vector<std::uint64_t>> shifts(static_cast<std::size_t>(reps));
  for (auto& s : shifts) {
    s.resize(static_cast<std::size_t>(dim));
    for (auto& v : s) v = rng();
  }

  std::vector<double> rep_sum(static_cast<std::size_t>(reps), 0.0);
  double abs_total = 0.0;
  std::int64_t per_rep = 0;
  IntegralEstimate est;

  std::int64_t round = std::min<std::int64_t>(kFirstRound, std::max<std::int64_t>(spec.max_evals / reps, 1));
  while (true) {
    // Work items: (replicate, block) pairs of the current round.
    const std::int64_t nblocks = (round + kBlock - 1) / kBlock;
    const std::int64_t items = nblocks * reps;
    std::vector<BlockSums> results(static_cast<std::size_t>(items));
    auto work = [&](std::int64_t first, std::int64_t stride) {
      for (std::int64_t it = first; it < items; it += stride) {
        const std::int64_t rep = it / nblocks;
        const std::int64_t blk = it % nblocks;
        const std::int64_t start = per_rep + blk * kBlock;
        const std::int64_t count = std::min(kBlock, per_rep + round - start);
        results[static_cast<std::size_t>(it)] =
            eval_block(f, dim, static_cast<std::uint64_t>(start), count, shifts[static_cast<std::size_t>(rep)]);
      }
    };
    const int nthreads = static_cast<int>(std::min<std::int64_t>(spec.threads, items));
    if (nthreads <= 1) {
      work(0, 1);
    } else {
      std::vector<std::jthread> pool;
      for (int t = 0; t < nthreads; ++t) pool.emplace_back(work, t, nthreads);
    }
    for (std::int64_t it = 0; it < items; ++it) {
      rep_sum[static_cast<std::size_t>(it / nblocks)] += results[static_cast<std::size_t>(it)].sum;
      abs_total += results[static_cast<std::size_t>(it)].abs_sum;
    }
    per_rep += round;

    double mean = 0.0;
    for (double s : rep_sum) mean += s / static_cast<double>(per_rep);
    mean /= reps;
    double var = 0.0;
    for (double s : rep_sum) {
      const double dv = s / static_cast<double>(per_rep) - mean;
      var += dv * dv;
    }
    var /= (reps - 1);

    est.value = mean;
    est.abs_error = std::sqrt(var / reps);
    est.evals = per_rep * reps;
    est.magnitude = abs_total / static_cast<double>(est.evals);
    const double target = std::max(spec.rel_tol * std::abs(mean), spec.abs_tol);
    if (est.abs_error <= target) {
      est.status = IntegrationStatus::Converged;
      break;
    }
    // Next round doubles the points per replicate.
    if (est.evals + per_rep * reps > spec.max_evals) {
      est.status = IntegrationStatus::ToleranceMiss;
      break;
    }
    round = per_rep;
  }
  return est;
}

}  // namespace cpmse
