#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "lensinv/errors.hpp"
#include "lensinv/invariant.hpp"
#include "lensinv/serialize.hpp"

namespace py = pybind11;
using namespace lensinv;

namespace {

TetrahedronLengths lengths_of(const std::array<double, 6>& l) { return TetrahedronLengths(l); }

EdgeSlot slot_of(std::pair<int, int> e) { return EdgeSlot(e.first, e.second); }

}  // namespace

PYBIND11_MODULE(_lensinv, m) {
  m.doc() = "Lens-space invariant I_k from Euclidean tetrahedra with signed volumes";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<DegenerateTetrahedron>(m, "DegenerateTetrahedron", error.ptr());
  py::register_exception<FlatConfiguration>(m, "FlatConfiguration", error.ptr());
  py::register_exception<InvalidMetric>(m, "InvalidMetric", error.ptr());
  py::register_exception<InvalidComplex>(m, "InvalidComplex", error.ptr());
  py::register_exception<InvalidLensParams>(m, "InvalidLensParams", error.ptr());
  py::register_exception<DegenerateRealization>(m, "DegenerateRealization", error.ptr());
  py::register_exception<SingularJacobian>(m, "SingularJacobian", error.ptr());

  // Single tetrahedra. Lengths are ordered 01, 02, 03, 12, 13, 23; edges are vertex pairs.
  m.def(
      "cayley_menger_determinant", [](const std::array<double, 6>& l) { return cayley_menger_determinant(lengths_of(l)); },
      py::arg("lengths"));
  m.def(
      "unsigned_volume", [](const std::array<double, 6>& l) { return unsigned_volume(lengths_of(l)); },
      py::arg("lengths"));
  m.def("oriented_volume", &oriented_volume, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"));
  m.def(
      "dihedral_angle",
      [](const std::array<double, 6>& l, std::pair<int, int> at) { return dihedral_angle(lengths_of(l), slot_of(at)); },
      py::arg("lengths"), py::arg("at"));
  m.def(
      "dihedral_gradients",
      [](const std::array<double, 6>& l, std::pair<int, int> at) {
        return dihedral_gradients(lengths_of(l), slot_of(at));
      },
      py::arg("lengths"), py::arg("at"));
  m.def("skew_length_response", &skew_length_response, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"),
        py::arg("e"));

  py::class_<LensParams>(m, "LensParams")
      .def(py::init([](int p, int q, int k) { return LensParams{p, q, k}; }), py::arg("p"), py::arg("q"),
           py::arg("k"))
      .def_readwrite("p", &LensParams::p)
      .def_readwrite("q", &LensParams::q)
      .def_readwrite("k", &LensParams::k)
      .def("__repr__", [](const LensParams& lp) {
        return "LensParams(p=" + std::to_string(lp.p) + ", q=" + std::to_string(lp.q) +
               ", k=" + std::to_string(lp.k) + ")";
      });

  py::class_<RealizationParams>(m, "RealizationParams")
      .def(py::init([](double rho, double sigma, double s, double alpha) {
             return RealizationParams{rho, sigma, s, alpha};
           }),
           py::arg("rho"), py::arg("sigma"), py::arg("s"), py::arg("alpha"))
      .def_readwrite("rho", &RealizationParams::rho)
      .def_readwrite("sigma", &RealizationParams::sigma)
      .def_readwrite("s", &RealizationParams::s)
      .def_readwrite("alpha", &RealizationParams::alpha);

  py::class_<PreComplex>(m, "PreComplex")
      .def_property_readonly("edge_count", &PreComplex::edge_count)
      .def_property_readonly("vertex_count", &PreComplex::vertex_count)
      .def_property_readonly("tetrahedron_count", &PreComplex::tetrahedron_count)
      .def_property_readonly("edge_names", &PreComplex::edge_names)
      .def_property_readonly("euler_characteristic", &PreComplex::euler_characteristic)
      .def_property_readonly("is_closed", &PreComplex::is_closed)
      .def("to_json", [](const PreComplex& c) { return to_json(c).dump(); })
      .def_static(
          "from_json", [](const std::string& s) { return complex_from_json(nlohmann::json::parse(s)); },
          py::arg("text"));

  m.def("build_lens_complex", &build_lens_complex, py::arg("p"), py::arg("q"));

  py::class_<LensRealization>(m, "LensRealization")
      .def_readonly("params", &LensRealization::params)
      .def_readonly("coords", &LensRealization::coords)
      .def_readonly("complex", &LensRealization::complex)
      .def_readonly("lengths", &LensRealization::lengths)
      .def_readonly("signs", &LensRealization::signs)
      .def_readonly("volumes", &LensRealization::volumes)
      .def_readonly("r", &LensRealization::r)
      .def_readonly("b_points", &LensRealization::b_points)
      .def_readonly("c_points", &LensRealization::c_points)
      .def("to_json", [](const LensRealization& r) { return to_json(r).dump(); });

  m.def("realize", &realize, py::arg("lp"), py::arg("rp"));
  m.def("signed_volumes_closed_form", &signed_volumes_closed_form, py::arg("lp"), py::arg("rp"));
  m.def("is_generic", &is_generic, py::arg("lp"), py::arg("rp"));
  m.def(
      "sample_generic_params",
      [](const LensParams& lp, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return sample_generic_params(lp, rng);
      },
      py::arg("lp"), py::arg("seed"));
  m.def("well_conditioned_params", &well_conditioned_params, py::arg("lp"));

  // Defect angles and their derivatives on a realization's complex and metric.
  m.def(
      "defect_angles", [](const LensRealization& r) { return defect_angles(r.complex, r.metric()); }, py::arg("r"));
  m.def(
      "defect_jacobian",
      [](const LensRealization& r) { return defect_jacobian_analytic(r.complex, r.metric()); }, py::arg("r"));
  m.def(
      "defect_jacobian_fd",
      [](const LensRealization& r, double h) { return defect_jacobian_fd(r.complex, r.metric(), h); }, py::arg("r"),
      py::arg("h") = 1e-6);
  m.def(
      "defect_angles_for",
      [](const PreComplex& c, const Eigen::VectorXd& lengths, const std::vector<int>& signs) {
        return defect_angles(c, MetricData{lengths, signs});
      },
      py::arg("complex"), py::arg("lengths"), py::arg("signs"));
  m.def(
      "defect_jacobian_for",
      [](const PreComplex& c, const Eigen::VectorXd& lengths, const std::vector<int>& signs) {
        return defect_jacobian_analytic(c, MetricData{lengths, signs});
      },
      py::arg("complex"), py::arg("lengths"), py::arg("signs"));

  m.def("f_matrix", &f_matrix, py::arg("r"));
  m.def(
      "f_submatrix_c", [](const LensRealization& r) { return f_submatrix_c(f_matrix(r), edge_partition(r.params.p)); },
      py::arg("r"));
  m.def("reference_submatrix_l7", &reference_submatrix_l7, py::arg("q"), py::arg("volumes"));
  m.def("free_length_jacobian", &free_length_jacobian, py::arg("lp"), py::arg("rp"));
  m.def("numerator_coefficient", &numerator_coefficient, py::arg("lp"), py::arg("rp"));
  m.def("numerator_closed_form", &numerator_closed_form, py::arg("lp"), py::arg("rp"));
  m.def("invariant_const", &invariant_const, py::arg("lp"), py::arg("rp"));
  m.def("conjecture_value", &conjecture_value, py::arg("lp"));
  m.def("published_value", &published_value, py::arg("lp"));
  m.def("admissible_k", &admissible_k, py::arg("p"));

  py::class_<InvariantReport>(m, "InvariantReport")
      .def_readonly("params", &InvariantReport::params)
      .def_readonly("samples", &InvariantReport::samples)
      .def_readonly("mean", &InvariantReport::mean)
      .def_readonly("max_dev", &InvariantReport::max_dev)
      .def_readonly("conjecture", &InvariantReport::conjecture)
      .def_readonly("rel_err", &InvariantReport::rel_err)
      .def_readonly("max_defect", &InvariantReport::max_defect)
      .def_readonly("paper_ref_value", &InvariantReport::paper_ref_value)
      .def_readonly("flagged", &InvariantReport::flagged)
      .def("to_json", [](const InvariantReport& r) { return to_json(r).dump(); });

  m.def("compute_invariant", &compute_invariant, py::arg("lp"), py::arg("samples") = 20, py::arg("seed") = 42,
        py::arg("constancy_tol") = 1e-8);

  py::class_<HomeomorphismCheck>(m, "HomeomorphismCheck")
      .def_readonly("same", &HomeomorphismCheck::same)
      .def_readonly("witness", &HomeomorphismCheck::witness);
  m.def("homeomorphism_consistency", &homeomorphism_consistency, py::arg("p"), py::arg("q1"), py::arg("q2"));
}
