#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "app.hpp"

namespace cpmse::app {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> kKnownKeys = {
    {"media", {"epsilon0", "mu0", "epsilon1", "mu1"}},
    {"geometry", {"theta", "R_over_d", "d"}},
    {"sweep", {"phi", "phi_min", "phi_max", "phi_count"}},
    {"integration",
     {"max_order", "rel_tol", "abs_tol", "max_evals", "seed", "replicates", "threads", "compactification", "t_max",
      "z_max", "scale_base", "scale_step", "scale_tau", "policy_threshold"}},
    {"output", {"path", "strict"}},
};

template <class T>
T get(const pt::ptree& tree, const std::string& key, T fallback) {
  const auto node = tree.get_child_optional(pt::ptree::path_type(key, '/'));
  if (!node) return fallback;
  try {
    return node->get_value<T>();
  } catch (const pt::ptree_bad_data&) {
    throw ConfigError("cannot parse '" + key + "' = '" + node->data() + "'");
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(","));
  std::vector<double> out;
  for (auto& p : parts) {
    boost::trim(p);
    if (p.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != p.size()) throw ConfigError("cannot parse '" + key + "' entry '" + p + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("'" + key + "' is empty");
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s;
}

}  // namespace

void RunConfig::validate(bool plate) const {
  exterior.validate();
  if (epsilon1.empty()) throw ConfigError("epsilon1 is missing");
  for (double e : epsilon1) media(e).interior.validate();
  if (plate) {
    if (theta != 0.0) throw ConfigError("plate runs need theta = 0");
    if (exterior.epsilon != 1.0 || exterior.mu != 1.0 || mu1 != 1.0)
      throw ConfigError("plate runs need epsilon0 = mu0 = mu1 = 1");
    for (double e : epsilon1)
      if (e < 1.0) throw ConfigError("plate runs need epsilon1 >= 1");
  } else {
    if (epsilon1.size() != 1) throw ConfigError("wedge runs take a single epsilon1");
    if (phi.empty()) throw ConfigError("phi grid is empty");
    for (double p : phi) cpmse::validate(wedge(p));
  }
  mse.integration.validate();
  if (mse.max_order < 2 || mse.max_order > kMaxOrder)
    throw ConfigError("max_order must be in [2, " + std::to_string(kMaxOrder) + "]");
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  for (const auto& [section, body] : tree) {
    const auto known = kKnownKeys.find(section);
    if (known == kKnownKeys.end()) throw ConfigError(source + ": unknown section [" + section + "]");
    if (!body.data().empty() && body.empty()) throw ConfigError(source + ": key '" + section + "' outside a section");
    for (const auto& [key, value] : body)
      if (!known->second.count(key)) throw ConfigError(source + ": unknown key '" + key + "' in [" + section + "]");
  }

  RunConfig c;
  c.source = source;
  c.exterior.epsilon = get(tree, "media/epsilon0", 1.0);
  c.exterior.mu = get(tree, "media/mu0", 1.0);
  c.mu1 = get(tree, "media/mu1", 1.0);
  if (auto e = tree.get_optional<std::string>(pt::ptree::path_type("media/epsilon1", '/')))
    c.epsilon1 = parse_list("epsilon1", *e);

  c.theta = get(tree, "geometry/theta", c.theta);
  c.R_over_d = get(tree, "geometry/R_over_d", c.R_over_d);
  c.d = get(tree, "geometry/d", c.d);

  const auto phi_list = tree.get_optional<std::string>(pt::ptree::path_type("sweep/phi", '/'));
  const bool has_range = tree.get_child_optional(pt::ptree::path_type("sweep/phi_count", '/')).has_value();
  if (phi_list && has_range) throw ConfigError(source + ": give either phi or phi_min/phi_max/phi_count");
  if (phi_list) {
    c.phi = parse_list("phi", *phi_list);
  } else if (has_range) {
    const double lo = get(tree, "sweep/phi_min", 0.0);
    const double hi = get(tree, "sweep/phi_max", 0.0);
    const int n = get(tree, "sweep/phi_count", 0);
    if (n < 1) throw ConfigError(source + ": phi_count must be >= 1");
    c.phi.clear();
    for (int i = 0; i < n; ++i) c.phi.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  }

  auto& m = c.mse;
  auto& s = m.integration;
  m.max_order = get(tree, "integration/max_order", m.max_order);
  if (tree.get_child_optional(pt::ptree::path_type("integration/rel_tol", '/'))) {
    s.rel_tol = get(tree, "integration/rel_tol", s.rel_tol);
    m.per_order_default_tolerance = false;
  }
  s.abs_tol = get(tree, "integration/abs_tol", s.abs_tol);
  s.max_evals = get(tree, "integration/max_evals", s.max_evals);
  s.seed = get(tree, "integration/seed", s.seed);
  s.replicates = get(tree, "integration/replicates", s.replicates);
  s.threads = get(tree, "integration/threads", s.threads);
  s.compactification =
      parse_compactification(get<std::string>(tree, "integration/compactification", to_string(s.compactification)));
  s.truncation.t_max = get(tree, "integration/t_max", s.truncation.t_max);
  s.truncation.z_max = get(tree, "integration/z_max", s.truncation.z_max);
  m.scales.base = get(tree, "integration/scale_base", m.scales.base);
  m.scales.step = get(tree, "integration/scale_step", m.scales.step);
  m.scales.tau = get(tree, "integration/scale_tau", m.scales.tau);
  m.policy_threshold = get(tree, "integration/policy_threshold", m.policy_threshold);

  c.output = get<std::string>(tree, "output/path", "");
  c.strict = get(tree, "output/strict", false);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

std::string config_header(const RunConfig& c, const std::string& mode) {
  const auto& s = c.mse.integration;
  std::ostringstream os;
  os << "# cpmse " << mode << "\n"
     << "# config = " << c.source << "\n"
     << "# media.epsilon0 = " << fmt(c.exterior.epsilon) << "\n"
     << "# media.mu0 = " << fmt(c.exterior.mu) << "\n"
     << "# media.epsilon1 = " << join(c.epsilon1) << "\n"
     << "# media.mu1 = " << fmt(c.mu1) << "\n"
     << "# geometry.theta = " << fmt(c.theta) << "\n"
     << "# geometry.R_over_d = " << fmt(c.R_over_d) << "\n"
     << "# geometry.d = " << fmt(c.d) << "\n"
     << "# sweep.phi = " << join(c.phi) << "\n"
     << "# integration.max_order = " << c.mse.max_order << "\n"
     << "# integration.rel_tol = "
     << (c.mse.per_order_default_tolerance ? std::string("per-order default") : fmt(s.rel_tol)) << "\n"
     << "# integration.abs_tol = " << fmt(s.abs_tol) << "\n"
     << "# integration.max_evals = " << s.max_evals << "\n"
     << "# integration.seed = " << s.seed << "\n"
     << "# integration.replicates = " << s.replicates << "\n"
     << "# integration.compactification = " << to_string(s.compactification) << "\n"
     << "# integration.t_max = " << fmt(s.truncation.t_max) << "\n"
     << "# integration.z_max = " << fmt(s.truncation.z_max) << "\n"
     << "# integration.scale_base = " << fmt(c.mse.scales.base) << "\n"
     << "# integration.scale_step = " << fmt(c.mse.scales.step) << "\n"
     << "# integration.scale_tau = " << fmt(c.mse.scales.tau) << "\n"
     << "# integration.policy_threshold = " << fmt(c.mse.policy_threshold) << "\n"
     << "# output.strict = " << (c.strict ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace cpmse::app
