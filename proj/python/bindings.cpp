#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "coalesce/io.hpp"
#include "coalesce/manifest.hpp"
#include "coalesce/oracles.hpp"
#include "coalesce/pipeline.hpp"
#include "coalesce/verify.hpp"

namespace py = pybind11;
using namespace coalesce;

namespace {

py::array_t<double> to_array(std::span<const double> v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<double> to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw py::value_error("expected a 1-D array");
  return {a.data(), a.data() + a.size()};
}

py::dict fit_to_dict(const ScalingFit& f) {
  py::dict d;
  d["t0"] = f.t0;
  d["c1"] = f.c1;
  d["c2"] = f.c2;
  d["residual"] = f.residual;
  d["n_samples"] = f.n_samples;
  d["window_lo"] = f.window_lo;
  d["window_hi"] = f.window_hi;
  return d;
}

py::list branches_to_list(const std::vector<Branch>& branches) {
  py::list out;
  for (const Branch& b : branches) {
    py::dict d;
    d["id"] = b.id;
    d["t"] = to_array(b.t);
    d["xi"] = to_array(b.xi);
    d["termination"] = b.termination ? py::cast(*b.termination) : py::none();
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Interface dynamics of viscous shock and anti-shock waves";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InsufficientDataError>(m, "InsufficientDataError", PyExc_ValueError);
  py::register_exception<BlowUpError>(m, "BlowUpError", PyExc_ArithmeticError);

  py::class_<SpatialGrid>(m, "SpatialGrid")
      .def(py::init<double, double, std::size_t>(), py::arg("x_min"), py::arg("x_max"), py::arg("n_nodes"))
      .def_static("with_spacing", &SpatialGrid::with_spacing, py::arg("x_min"), py::arg("x_max"), py::arg("h"))
      .def_property_readonly("x_min", &SpatialGrid::x_min)
      .def_property_readonly("x_max", &SpatialGrid::x_max)
      .def_property_readonly("n_nodes", &SpatialGrid::n_nodes)
      .def_property_readonly("h", &SpatialGrid::h)
      .def("nodes", [](const SpatialGrid& g) { return to_array(g.nodes()); })
      .def("__repr__", [](const SpatialGrid& g) {
        return "SpatialGrid(" + format_double(g.x_min()) + ", " + format_double(g.x_max()) + ", " +
               std::to_string(g.n_nodes()) + ")";
      });

  m.def("erf", &coalesce::erf, py::arg("x"));
  m.def("erfc", &coalesce::erfc, py::arg("x"));
  m.def("erfcx", &coalesce::erfcx, py::arg("x"));

  m.def(
      "extract_zeros",
      [](const py::array_t<double>& x, const py::array_t<double>& u, double threshold) {
        const auto xs = to_vector(x);
        const auto us = to_vector(u);
        if (xs.size() != us.size()) throw py::value_error("x and u differ in length");
        const ZeroSet z = extract_zeros(xs, us, 0.0, threshold);
        return py::make_tuple(to_array(z.zeros), z.signs);
      },
      py::arg("x"), py::arg("u"), py::arg("threshold") = 0.0,
      "Interpolated zeros of sampled data and their crossing signs.");

  m.def(
      "fit_scaling_law",
      [](const py::array_t<double>& t, const py::array_t<double>& xi, double window_floor,
         std::optional<double> window_ceiling, std::optional<double> t0_lo,
         std::optional<double> t0_hi, std::optional<double> t0_step) {
        FitOptions o;
        o.window_floor = window_floor;
        o.window_ceiling = window_ceiling;
        o.t0_lo = t0_lo;
        o.t0_hi = t0_hi;
        o.t0_step = t0_step;
        const auto ts = to_vector(t);
        const auto xs = to_vector(xi);
        if (ts.size() != xs.size()) throw py::value_error("t and xi differ in length");
        return fit_to_dict(fit_scaling_law(ts, xs, o).best);
      },
      py::arg("t"), py::arg("xi"), py::arg("window_floor") = 0.05, py::arg("window_ceiling") = 0.3,
      py::arg("t0_lo") = py::none(), py::arg("t0_hi") = py::none(), py::arg("t0_step") = py::none());

  m.def("preset_names", &preset_names);

  m.def(
      "simulate",
      [](const std::string& manifest) {
        const ExperimentManifest em = resolve_manifest(manifest);
        std::optional<RunOutcome> run;
        {
          py::gil_scoped_release release;
          run.emplace(simulate(em));
        }
        const RunOutcome& o = *run;
        py::dict d;
        d["name"] = em.name;
        d["x"] = to_array(em.config.grid.nodes());
        py::list times;
        py::list profiles;
        for (const Snapshot& s : o.run.trajectory.snapshots()) {
          times.append(s.t());
          profiles.append(to_array(s.u()));
        }
        d["t"] = times;
        d["u"] = profiles;
        d["branches"] = branches_to_list(o.branches);
        d["warnings"] = o.run.warnings;
        try {
          d["fit"] = fit_to_dict(fit_branches(o.branches, em.fit, em.fit_branch).report.best);
        } catch (const InsufficientDataError&) {
          d["fit"] = py::none();
        }
        return d;
      },
      py::arg("manifest"), "Run a manifest file or preset name.");

  m.def(
      "extinction_bound",
      [](const std::string& manifest) {
        const BoundsOutcome b = compute_bounds(resolve_manifest(manifest));
        py::dict d;
        d["class"] = to_string(b.data_class);
        d["T"] = b.bound ? py::cast(b.bound->T) : py::none();
        if (b.bound) {
          py::dict inputs;
          for (const auto& [k, v] : b.bound->inputs) inputs[py::str(k)] = v;
          d["inputs"] = inputs;
          d["data_in_range"] = b.bound->data_in_range;
        }
        return d;
      },
      py::arg("manifest"));

  m.def(
      "cole_hopf_t0",
      [](double amplitude) { return cole_hopf_t0(ColeHopfState::sech(amplitude)); },
      py::arg("amplitude") = cole_hopf_default_amplitude());
  m.def(
      "cole_hopf_u",
      [](double t, const py::array_t<double>& x, double amplitude) {
        const ColeHopfState s = ColeHopfState::sech(amplitude);
        auto xs = to_vector(x);
        for (double& v : xs) v = cole_hopf_u(s, t, v);
        return to_array(xs);
      },
      py::arg("t"), py::arg("x"), py::arg("amplitude") = cole_hopf_default_amplitude());
  m.def(
      "green_reference_u",
      [](double t, const py::array_t<double>& x, double phi_star, double shift) {
        const GreenReference ref{phi_star, shift};
        ref.validate();
        auto xs = to_vector(x);
        for (double& v : xs) v = green_reference_u(ref, t, v);
        return to_array(xs);
      },
      py::arg("t"), py::arg("x"), py::arg("phi_star") = 1.0, py::arg("shift") = 0.0);

  m.def(
      "verify",
      [](const std::string& suite, unsigned threads) {
        std::vector<CriterionResult> results;
        {
          py::gil_scoped_release release;
          results = run_suite(parse_suite(suite), threads);
        }
        py::list out;
        for (const CriterionResult& r : results) {
          py::dict d;
          d["id"] = r.id;
          d["name"] = r.name;
          d["passed"] = r.passed;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("suite") = "all", py::arg("threads") = 1);
}
