#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "app.hpp"
#include "cpmse/reference.hpp"

namespace cpmse::app {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9e", v);
  return buf;
}

// Runs body(i) for i < n on up to `threads` workers; results are written by
// index so emission order never depends on completion order.
template <class F>
void parallel_rows(std::size_t n, int threads, F body) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

// Sweep-level threads go to rows; a single row gets them inside the integrator.
MseOptions row_options(const RunConfig& cfg, std::size_t rows) {
  MseOptions o = cfg.mse;
  o.integration.threads = rows > 1 ? 1 : cfg.mse.integration.threads;
  return o;
}

std::string status_of(const PotentialResult& r) {
  std::string s = r.tolerance_met() ? "ok" : "tolerance_miss";
  if (r.acceleration.fallback) s += ";plain_fallback";
  return s;
}

// Ratio a / b with first-order error propagation.
std::pair<double, double> ratio(double a, double a_err, double b, double b_err) {
  const double q = a / b;
  const double rel = std::hypot(a_err / a, b_err / b);
  return {q, std::abs(q) * rel};
}

}  // namespace

void write_csv(std::ostream& out, const std::string& header, const CsvTable& table) {
  out << header;
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

CsvTable run_plate(const RunConfig& cfg) {
  cfg.validate(true);
  const int L = cfg.mse.max_order;
  CsvTable t;
  t.columns = {"epsilon1", "upsilon_exact", "upsilon_exact_err"};
  for (int l = 0; l <= L; ++l) {
    t.columns.push_back("dupsilon_" + std::to_string(l));
    t.columns.push_back("dupsilon_" + std::to_string(l) + "_err");
  }
  for (int l = 0; l <= L; ++l) t.columns.push_back("upsilon_" + std::to_string(l));
  for (const char* c : {"upsilon_mse", "upsilon_mse_err", "rel_dev", "rel_dev_err", "policy", "status"})
    t.columns.push_back(c);

  const MseOptions opts = row_options(cfg, cfg.epsilon1.size());
  std::vector<PotentialResult> results(cfg.epsilon1.size());
  parallel_rows(cfg.epsilon1.size(), cfg.mse.integration.threads, [&](std::size_t i) {
    results[i] = compute_potential({0.0, 0.0, cfg.d, 0.0}, cfg.media(cfg.epsilon1[i]), opts);
  });

  const double d4 = std::pow(cfg.d, 4);
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    const PlateAmplitude exact = plate_upsilon(cfg.epsilon1[i]);
    std::vector<std::string> row{num(cfg.epsilon1[i]), num(exact.upsilon), num(exact.quadrature_error)};
    for (int l = 0; l <= L; ++l) {
      row.push_back(num(-r.delta_U[static_cast<std::size_t>(l)] * d4));
      row.push_back(num(r.errors[static_cast<std::size_t>(l)] * d4));
    }
    for (int l = 0; l <= L; ++l) row.push_back(num(-r.partial_sums[static_cast<std::size_t>(l)] * d4));
    row.push_back(num(r.upsilon));
    row.push_back(num(r.upsilon_error));
    if (exact.upsilon > 0.0) {
      row.push_back(num(r.upsilon / exact.upsilon - 1.0));
      row.push_back(num(ratio(r.upsilon, r.upsilon_error, exact.upsilon, exact.quadrature_error).second));
    } else {
      row.push_back("nan");
      row.push_back("nan");
    }
    row.push_back(to_string(r.acceleration.policy));
    row.push_back(status_of(r));
    t.tolerance_miss = t.tolerance_miss || !r.tolerance_met() || exact.status != IntegrationStatus::Converged;
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable run_wedge(const RunConfig& cfg) {
  cfg.validate(false);
  const int L = cfg.mse.max_order;
  const double eps1 = cfg.epsilon1.front();
  CsvTable t;
  t.columns = {"phi", "d_perp", "d_s", "phi_s"};
  for (int l = 0; l <= L; ++l) t.columns.push_back("dU_" + std::to_string(l));
  for (int l = 0; l <= L; ++l) t.columns.push_back("dU_" + std::to_string(l) + "_err");
  for (int l = 0; l <= L; ++l) t.columns.push_back("U_" + std::to_string(l));
  for (const char* c :
       {"upsilon_mse", "upsilon_mse_err", "upsilon_pec", "upsilon_pec_err", "upsilon_pfa", "upsilon_pfa_err",
        "upsilon_red", "upsilon_red_err", "ratio_pfa", "ratio_pfa_err", "ratio_pec", "ratio_pec_err", "ratio_red",
        "ratio_red_err", "policy", "status"})
    t.columns.push_back(c);

  const MseOptions opts = row_options(cfg, cfg.phi.size());
  const MediaPair media = cfg.media(eps1);
  std::vector<PotentialResult> results(cfg.phi.size());
  parallel_rows(cfg.phi.size(), cfg.mse.integration.threads,
                [&](std::size_t i) { results[i] = compute_potential(cfg.wedge(cfg.phi[i]), media, opts); });

  const PlateAmplitude plate = plate_upsilon(eps1);
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    const WedgeConfig w = cfg.wedge(cfg.phi[i]);
    const SharpFrameCoords sf = sharp_frame(w);
    const double dd = d_perp(w);
    const double pec = pec_wedge_upsilon(w.theta, sf.phi_s) * std::pow(w.d / sf.d_s, 4);
    const double pfa = plate.upsilon * std::pow(w.d / dd, 4);
    const double pfa_err = plate.quadrature_error * std::pow(w.d / dd, 4);
    const double red = reduced_pec_upsilon_from_plate(w, plate.upsilon);
    const double red_err = red * plate.quadrature_error / plate.upsilon;

    std::vector<std::string> row{num(w.phi), num(dd), num(sf.d_s), num(sf.phi_s)};
    for (double v : r.delta_U) row.push_back(num(v));
    for (double v : r.errors) row.push_back(num(v));
    for (double v : r.partial_sums) row.push_back(num(v));
    row.push_back(num(r.upsilon));
    row.push_back(num(r.upsilon_error));
    row.push_back(num(pec));
    row.push_back(num(0.0));
    row.push_back(num(pfa));
    row.push_back(num(pfa_err));
    row.push_back(num(red));
    row.push_back(num(red_err));
    for (auto [ref, ref_err] : {std::pair{pfa, pfa_err}, std::pair{pec, 0.0}, std::pair{red, red_err}}) {
      const auto [q, q_err] = ratio(r.upsilon, r.upsilon_error, ref, ref_err);
      row.push_back(num(q));
      row.push_back(num(q_err));
    }
    row.push_back(to_string(r.acceleration.policy));
    row.push_back(status_of(r));
    t.tolerance_miss = t.tolerance_miss || !r.tolerance_met();
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable run_pec_wedge(const RunConfig& cfg) {
  if (!(cfg.d > 0.0)) throw ConfigError("d must be positive");
  CsvTable t;
  t.columns = {"phi", "d_perp", "upsilon_pec", "upsilon_pec_err", "upsilon_pec_wall", "upsilon_pec_wall_err"};
  for (double phi : cfg.phi) {
    const WedgeConfig w{cfg.theta, 0.0, cfg.d, phi};
    validate(w, true);
    const double u = pec_wedge_upsilon(w.theta, phi);
    const double dd = d_perp(w);
    // Amplitude per d_perp^-4 in units of the PEC plate: -> 1 at the faces.
    const double wall = u * std::pow(dd / w.d, 4) / kUpsilonPecPlate;
    t.rows.push_back({num(phi), num(dd), num(u), num(0.0), num(wall), num(0.0)});
  }
  return t;
}

}  // namespace cpmse::app
