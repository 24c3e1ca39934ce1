#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cpmse/mse.hpp"
#include "cpmse/reference.hpp"

namespace py = pybind11;
using namespace cpmse;

PYBIND11_MODULE(_cpmse, m) {
  m.doc() = "Casimir-Polder potential of a particle near a rounded dielectric wedge";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SingularEvaluation>(m, "SingularEvaluation", PyExc_ArithmeticError);

  py::class_<WedgeConfig>(m, "WedgeConfig")
      .def(py::init([](double theta, double R, double d, double phi) { return WedgeConfig{theta, R, d, phi}; }),
           py::arg("theta") = 0.0, py::arg("R") = 0.0, py::arg("d") = 1.0, py::arg("phi") = 0.0)
      .def_readwrite("theta", &WedgeConfig::theta)
      .def_readwrite("R", &WedgeConfig::R)
      .def_readwrite("d", &WedgeConfig::d)
      .def_readwrite("phi", &WedgeConfig::phi)
      .def("__repr__", [](const WedgeConfig& w) {
        return "WedgeConfig(theta=" + std::to_string(w.theta) + ", R=" + std::to_string(w.R) +
               ", d=" + std::to_string(w.d) + ", phi=" + std::to_string(w.phi) + ")";
      });

  py::class_<Medium>(m, "Medium")
      .def(py::init([](double eps, double mu) { return Medium{eps, mu}; }), py::arg("epsilon") = 1.0,
           py::arg("mu") = 1.0)
      .def_readwrite("epsilon", &Medium::epsilon)
      .def_readwrite("mu", &Medium::mu);

  py::class_<MediaPair>(m, "MediaPair")
      .def(py::init([](Medium in, Medium ex) { return MediaPair{in, ex}; }), py::arg("interior"),
           py::arg("exterior") = Medium{})
      .def_readwrite("interior", &MediaPair::interior)
      .def_readwrite("exterior", &MediaPair::exterior);

  py::class_<SharpFrameCoords>(m, "SharpFrameCoords")
      .def_readonly("d_s", &SharpFrameCoords::d_s)
      .def_readonly("phi_s", &SharpFrameCoords::phi_s)
      .def_readonly("delta", &SharpFrameCoords::delta)
      .def_readonly("d_perp", &SharpFrameCoords::d_perp);

  m.def("validate", &validate, py::arg("config"), py::arg("allow_sharp") = false);
  m.def("d_perp", &d_perp, py::arg("config"));
  m.def("sharp_frame", &sharp_frame, py::arg("config"));
  m.def("particle_position", &particle_position, py::arg("config"));
  m.def(
      "surface_point",
      [](const WedgeConfig& c, double t, double z) {
        const SurfaceSample s = surface_point(c, t, z);
        return py::dict(py::arg("position") = s.position, py::arg("normal") = s.normal,
                        py::arg("tangent_perp") = s.tangent_perp, py::arg("tangent_z") = s.tangent_z);
      },
      py::arg("config"), py::arg("t"), py::arg("z") = 0.0);

  py::class_<ShanksValue>(m, "ShanksValue")
      .def_readonly("value", &ShanksValue::value)
      .def_property_readonly("degenerate", [](const ShanksValue& s) { return s.status == ShanksStatus::Degenerate; });
  m.def("shanks", &shanks, py::arg("u_prev"), py::arg("u"), py::arg("u_next"));

  py::class_<AccelerationReport>(m, "AccelerationReport")
      .def_readonly("shanks", &AccelerationReport::shanks)
      .def_property_readonly("policy", [](const AccelerationReport& a) { return to_string(a.policy); })
      .def_readonly("final_estimate", &AccelerationReport::final_estimate)
      .def_readonly("spread", &AccelerationReport::spread)
      .def_readonly("fallback", &AccelerationReport::fallback)
      .def_readonly("note", &AccelerationReport::note);
  m.def(
      "accelerate",
      [](const std::vector<double>& partials, double eps1, double threshold) {
        return accelerate(partials, eps1, threshold);
      },
      py::arg("partial_sums"), py::arg("epsilon1"), py::arg("policy_threshold") = kEvenOddThreshold);

  py::class_<IntegrationSpec>(m, "IntegrationSpec")
      .def(py::init<>())
      .def_readwrite("rel_tol", &IntegrationSpec::rel_tol)
      .def_readwrite("abs_tol", &IntegrationSpec::abs_tol)
      .def_readwrite("max_evals", &IntegrationSpec::max_evals)
      .def_readwrite("seed", &IntegrationSpec::seed)
      .def_readwrite("replicates", &IntegrationSpec::replicates)
      .def_readwrite("threads", &IntegrationSpec::threads)
      .def_property(
          "compactification", [](const IntegrationSpec& s) { return to_string(s.compactification); },
          [](IntegrationSpec& s, const std::string& v) { s.compactification = parse_compactification(v); })
      .def_property(
          "t_max", [](const IntegrationSpec& s) { return s.truncation.t_max; },
          [](IntegrationSpec& s, double v) { s.truncation.t_max = v; })
      .def_property(
          "z_max", [](const IntegrationSpec& s) { return s.truncation.z_max; },
          [](IntegrationSpec& s, double v) { s.truncation.z_max = v; });

  py::class_<MseOptions>(m, "MseOptions")
      .def(py::init<>())
      .def_readwrite("max_order", &MseOptions::max_order)
      .def_readwrite("integration", &MseOptions::integration)
      .def_readwrite("per_order_default_tolerance", &MseOptions::per_order_default_tolerance)
      .def_readwrite("policy_threshold", &MseOptions::policy_threshold);

  py::class_<PotentialResult>(m, "PotentialResult")
      .def_readonly("delta_U", &PotentialResult::delta_U)
      .def_readonly("partial_sums", &PotentialResult::partial_sums)
      .def_readonly("errors", &PotentialResult::errors)
      .def_readonly("evals", &PotentialResult::evals)
      .def_readonly("acceleration", &PotentialResult::acceleration)
      .def_readonly("shanks_estimate", &PotentialResult::shanks_estimate)
      .def_readonly("shanks_error", &PotentialResult::shanks_error)
      .def_readonly("total_error", &PotentialResult::total_error)
      .def_readonly("upsilon", &PotentialResult::upsilon)
      .def_readonly("upsilon_error", &PotentialResult::upsilon_error)
      .def_readonly("config", &PotentialResult::config)
      .def_property_readonly("tolerance_met", &PotentialResult::tolerance_met);

  m.def(
      "compute_potential",
      [](const WedgeConfig& c, const MediaPair& media, const MseOptions& o) {
        py::gil_scoped_release release;
        return compute_potential(c, media, o);
      },
      py::arg("config"), py::arg("media"), py::arg("options") = MseOptions{});

  py::class_<PlateAmplitude>(m, "PlateAmplitude")
      .def_readonly("epsilon1", &PlateAmplitude::epsilon1)
      .def_readonly("upsilon", &PlateAmplitude::upsilon)
      .def_readonly("quadrature_error", &PlateAmplitude::quadrature_error)
      .def_property_readonly("converged",
                             [](const PlateAmplitude& p) { return p.status == IntegrationStatus::Converged; });
  m.def(
      "plate_upsilon", [](double eps1) { return plate_upsilon(eps1); }, py::arg("epsilon1"));
  m.def("pec_wedge_upsilon", &pec_wedge_upsilon, py::arg("theta"), py::arg("phi"),
        py::arg("wall_cutoff") = kWallCutoff);
  m.def("pfa_upsilon", &pfa_upsilon, py::arg("config"), py::arg("epsilon1"));
  m.def("reduced_pec_upsilon", &reduced_pec_upsilon, py::arg("config"), py::arg("epsilon1"));
  m.attr("UPSILON_PEC_PLATE") = kUpsilonPecPlate;
  m.attr("MAX_ORDER") = kMaxOrder;
}
