#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "app.hpp"

using namespace cpmse;
using namespace cpmse::app;

namespace {

struct Overrides {
  std::string config;
  std::string output;
  std::optional<double> tolerance;
  std::optional<int> max_order;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> fault;
};

RunConfig resolve(const Overrides& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
  if (o.config.empty()) c.source = "<defaults>";
  if (!o.output.empty()) c.output = o.output;
  if (o.tolerance) {
    c.mse.integration.rel_tol = *o.tolerance;
    c.mse.per_order_default_tolerance = false;
  }
  if (o.max_order) c.mse.max_order = *o.max_order;
  if (o.seed) c.mse.integration.seed = *o.seed;
  if (o.threads) c.mse.integration.threads = *o.threads;
  return c;
}

int emit(const RunConfig& c, const std::string& mode, const CsvTable& t) {
  const std::string header = config_header(c, mode);
  if (c.output.empty()) {
    write_csv(std::cout, header, t);
  } else {
    std::ofstream out(c.output);
    if (!out) throw ConfigError("cannot write '" + c.output + "'");
    write_csv(out, header, t);
  }
  if (t.tolerance_miss) {
    std::cerr << "warning: at least one integral missed its tolerance (see status column)\n";
    if (c.strict) return kToleranceMiss;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir-Polder potential of a smoothed dielectric wedge by multiple scattering expansion"};
  app.require_subcommand(1);
  Overrides o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "INI config file")->check(CLI::ExistingFile);
    sub->add_option("--output", o.output, "CSV output path (default stdout)");
    sub->add_option("--tolerance", o.tolerance, "relative tolerance for every order");
    sub->add_option("--max-order", o.max_order, "highest scattering order");
    sub->add_option("--seed", o.seed, "randomization seed");
    sub->add_option("--threads", o.threads, "worker threads");
  };
  auto* plate = app.add_subcommand("plate", "planar half-space: exact and MSE amplitudes");
  auto* wedge = app.add_subcommand("wedge", "smoothed wedge phi sweep");
  auto* pec = app.add_subcommand("pec-wedge", "sharp PEC wedge closed form over the phi grid");
  auto* val = app.add_subcommand("validate", "invariant checks, JSON report");
  for (auto* s : {plate, wedge, pec, val}) add_common(s);
  val->add_option("--inject-fault", o.fault, "deliberately break one check: frame | shanks | null");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    const RunConfig c = resolve(o);
    if (*plate) return emit(c, "plate", run_plate(c));
    if (*wedge) return emit(c, "wedge", run_wedge(c));
    if (*pec) return emit(c, "pec-wedge", run_pec_wedge(c));
    ValidationOptions vo;
    vo.inject_fault = o.fault;
    const ValidationReport rep = run_validate(c, vo);
    if (c.output.empty()) {
      std::cout << rep.to_json() << "\n";
    } else {
      std::ofstream(c.output) << rep.to_json() << "\n";
    }
    return rep.passed() ? kOk : kValidationFailure;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
}
