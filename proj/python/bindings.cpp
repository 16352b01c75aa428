#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "hyperslice/certificates.hpp"
#include "hyperslice/errors.hpp"
#include "hyperslice/geometry.hpp"
#include "hyperslice/integral.hpp"
#include "hyperslice/maximizer.hpp"
#include "hyperslice/montecarlo.hpp"
#include "hyperslice/vertex_sum.hpp"

namespace py = pybind11;
using namespace hyperslice;

namespace {

SectionSpec spec_from(const std::vector<double>& a, double t) { return make_section_spec(a, t); }

Precision precision_from(const std::string& name) {
  if (name == "auto") return Precision::automatic;
  if (name == "double") return Precision::double_only;
  if (name == "extended") return Precision::extended;
  fail(ErrorKind::invalid_input, "precision must be auto, double or extended");
}

}  // namespace

PYBIND11_MODULE(_hyperslice, m) {
  m.doc() = "Hyperplane sections of the unit cube";

  // Error carries the failure kind as a string attribute.
  static py::object error_type = py::reinterpret_borrow<py::object>(
      py::exception<Error>(m, "Error", PyExc_RuntimeError).ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error_type(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<SectionSpec>(m, "SectionSpec")
      .def(py::init(&spec_from), py::arg("a"), py::arg("t"))
      .def_static("diagonal", &SectionSpec::diagonal, py::arg("d"), py::arg("t"))
      .def_property_readonly("d", &SectionSpec::d)
      .def_property_readonly("a", &SectionSpec::a)
      .def_property_readonly("t", &SectionSpec::t)
      .def_property_readonly("b", &SectionSpec::b)
      .def("__repr__", [](const SectionSpec& s) {
        return "SectionSpec(d=" + std::to_string(s.d()) + ", t=" + std::to_string(s.t()) +
               ", b=" + std::to_string(s.b()) + ")";
      });

  py::class_<CutClassification>(m, "CutClassification")
      .def_readonly("count_below", &CutClassification::count_below)
      .def_property_readonly("kind",
                             [](const CutClassification& c) { return std::string(to_string(c.kind)); })
      .def_readonly("vertices", &CutClassification::vertices);

  py::class_<VolumeResult>(m, "VolumeResult")
      .def_readonly("value", &VolumeResult::value)
      .def_readonly("err", &VolumeResult::err)
      .def_property_readonly("method",
                             [](const VolumeResult& r) { return std::string(to_string(r.method)); })
      .def_readonly("cut", &VolumeResult::cut)
      .def("__float__", [](const VolumeResult& r) { return r.value; });

  py::class_<McEstimate>(m, "McEstimate")
      .def_readonly("estimate", &McEstimate::estimate)
      .def_readonly("std_error", &McEstimate::std_error)
      .def_readonly("hits", &McEstimate::hits)
      .def_readonly("samples", &McEstimate::samples);

  py::class_<OptimizerReport>(m, "OptimizerReport")
      .def_readonly("d", &OptimizerReport::d)
      .def_readonly("t", &OptimizerReport::t)
      .def_readonly("best_a", &OptimizerReport::best_a)
      .def_readonly("best_V", &OptimizerReport::best_V)
      .def_readonly("closed_form_V", &OptimizerReport::closed_form_V)
      .def_readonly("angle_to_diagonal", &OptimizerReport::angle_to_diagonal)
      .def_readonly("lagrange_lambda", &OptimizerReport::lagrange_lambda)
      .def_readonly("residual_norm", &OptimizerReport::residual_norm)
      .def_readonly("starts", &OptimizerReport::starts)
      .def_readonly("converged_starts", &OptimizerReport::converged_starts)
      .def_readonly("degenerate", &OptimizerReport::degenerate);

  py::class_<PairResidual>(m, "PairResidual")
      .def_readonly("j", &PairResidual::j)
      .def_readonly("k", &PairResidual::k)
      .def_readonly("value", &PairResidual::value);

  py::class_<DecayCheck>(m, "DecayCheck")
      .def_readonly("lhs", &DecayCheck::lhs)
      .def_readonly("rhs", &DecayCheck::rhs)
      .def_readonly("holds", &DecayCheck::holds)
      .def_readonly("direct_lhs", &DecayCheck::direct_lhs)
      .def_readonly("direct_rhs", &DecayCheck::direct_rhs);

  py::class_<QuadCoeffs>(m, "QuadCoeffs")
      .def_readonly("d", &QuadCoeffs::d)
      .def_readonly("y", &QuadCoeffs::y)
      .def_readonly("alpha", &QuadCoeffs::alpha)
      .def_readonly("beta", &QuadCoeffs::beta)
      .def_readonly("gamma", &QuadCoeffs::gamma);

  py::class_<CertificateReport>(m, "CertificateReport")
      .def_readonly("d", &CertificateReport::d)
      .def_readonly("grid_size", &CertificateReport::grid_size)
      .def_readonly("max_alpha", &CertificateReport::min_margin_alpha)
      .def_readonly("max_2alpha_plus_beta", &CertificateReport::min_margin_2ab)
      .def_readonly("max_alpha_plus_beta_plus_gamma", &CertificateReport::min_margin_abc)
      .def_readonly("roots_excluded", &CertificateReport::roots_excluded)
      .def_readonly("grid_points_with_root", &CertificateReport::grid_points_with_root)
      .def_readonly("max_root_deviation_from_y_plus_1",
                    &CertificateReport::max_root_deviation_from_y_plus_1)
      .def_readonly("alpha_asserted", &CertificateReport::alpha_asserted)
      .def_readonly("pair_asserted", &CertificateReport::pair_asserted);

  py::class_<RigorousCertificate>(m, "RigorousCertificate")
      .def_readonly("alpha", &RigorousCertificate::alpha)
      .def_readonly("two_alpha_beta", &RigorousCertificate::two_alpha_beta)
      .def_readonly("alpha_beta_gamma", &RigorousCertificate::alpha_beta_gamma)
      .def_readonly("cells", &RigorousCertificate::cells)
      .def_property_readonly("certified", &RigorousCertificate::certified);

  m.def("sigma", [](const std::vector<double>& x) { return sigma(x); });
  m.def("classify_cut", [](const SectionSpec& s) { return classify_cut(s); }, py::arg("spec"));

  m.def(
      "section_volume",
      [](const SectionSpec& s, const std::string& precision) {
        py::gil_scoped_release release;
        return section_volume_vertex_sum(s, precision_from(precision));
      },
      py::arg("spec"), py::arg("precision") = "auto");
  m.def(
      "halfspace_volume",
      [](const SectionSpec& s, const std::string& precision) {
        py::gil_scoped_release release;
        return halfspace_volume(s, precision_from(precision));
      },
      py::arg("spec"), py::arg("precision") = "auto");
  m.def(
      "section_volume_integral",
      [](const SectionSpec& s, double abs_tol) {
        py::gil_scoped_release release;
        return section_volume_integral(s, abs_tol);
      },
      py::arg("spec"), py::arg("abs_tol") = 1e-9);
  m.def(
      "mc_section_volume",
      [](const SectionSpec& s, std::int64_t n, std::uint64_t seed) {
        py::gil_scoped_release release;
        return mc_section_volume(s, n, seed);
      },
      py::arg("spec"), py::arg("samples") = 1000000, py::arg("seed") = 0);
  m.def(
      "mc_halfspace_volume",
      [](const SectionSpec& s, std::int64_t n, std::uint64_t seed) {
        py::gil_scoped_release release;
        return mc_halfspace_volume(s, n, seed);
      },
      py::arg("spec"), py::arg("samples") = 1000000, py::arg("seed") = 0);

  m.def("closed_form_max", &closed_form_max, py::arg("d"), py::arg("t"));
  m.def(
      "maximize",
      [](int d, double t, int starts, std::uint64_t seed) {
        py::gil_scoped_release release;
        MaximizeOptions o;
        o.starts = starts;
        o.seed = seed;
        return maximize_section_volume(d, t, o);
      },
      py::arg("d"), py::arg("t"), py::arg("starts") = 64, py::arg("seed") = 0);
  m.def("pair_condition_check", &pair_condition_check, py::arg("spec"));
  m.def("decay_inequality_check", &decay_inequality_check, py::arg("d"), py::arg("t"));

  m.def("quad_coeffs", &quad_coeffs, py::arg("d"), py::arg("y"));
  m.def("quad_roots", &quad_roots, py::arg("coeffs"));
  m.def("default_y_grid", &default_y_grid, py::arg("n") = 10000);
  m.def(
      "sign_certificates",
      [](int d, const std::vector<double>& grid) {
        py::gil_scoped_release release;
        return sign_certificates(d, grid.empty() ? default_y_grid() : grid);
      },
      py::arg("d"), py::arg("grid") = std::vector<double>{});
  m.def(
      "certify_rigorous",
      [](int d) {
        py::gil_scoped_release release;
        return certify_rigorous(d);
      },
      py::arg("d"));
}
