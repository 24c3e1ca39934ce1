#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cpmse/mse.hpp"

namespace cpmse::app {

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kConfigError = 2, kToleranceMiss = 3 };

/// Parsed run configuration. The config file is the single source of truth;
/// command-line flags only override the handful of fields they name.
struct RunConfig {
  Medium exterior;                       // [media] epsilon0, mu0
  std::vector<double> epsilon1{10.0};    // [media] epsilon1, a list is allowed for plate runs
  double mu1 = 1.0;                      // [media] mu1

  double theta = 0.75;                   // [geometry]
  double R_over_d = 0.1;
  double d = 1.0;

  std::vector<double> phi{0.0};          // [sweep] phi = a, b, ... or phi_min/phi_max/phi_count

  MseOptions mse;                        // [integration]
  bool strict = false;                   // [output] exit 3 on any tolerance miss
  std::string output;                    // [output] path, empty = stdout

  std::string source;  ///< file the config came from, echoed into the CSV header

  MediaPair media(double eps1) const { return {{eps1, mu1}, exterior}; }
  WedgeConfig wedge(double phi_value) const { return {theta, R_over_d * d, d, phi_value}; }
  void validate(bool plate) const;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(std::istream& in, const std::string& source = "<stream>");

/// Self-describing header: every effective setting as "# key = value".
std::string config_header(const RunConfig& cfg, const std::string& mode);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  bool tolerance_miss = false;
};

void write_csv(std::ostream& out, const std::string& header, const CsvTable& table);

/// One row per epsilon1: exact amplitude, per-order MSE amplitudes, accelerated
/// amplitude and relative deviation, all with error columns.
CsvTable run_plate(const RunConfig& cfg);

/// One row per phi for the first epsilon1 in the config.
CsvTable run_wedge(const RunConfig& cfg);

/// Closed-form sharp PEC wedge amplitude over the phi grid.
CsvTable run_pec_wedge(const RunConfig& cfg);

struct ValidationOptions {
  std::optional<std::string> inject_fault;  ///< "frame" | "shanks" | "null"
  bool include_integrals = true;            ///< quick MSE null/plate checks
};

struct ValidationReport {
  struct Check {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double tolerance = 0.0;
    std::string detail;
  };
  std::vector<Check> checks;
  bool passed() const;
  std::string to_json() const;
};

ValidationReport run_validate(const RunConfig& cfg, const ValidationOptions& options = {});

}  // namespace cpmse::app
