#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "biunitary/families.hpp"
#include "biunitary/hadamard.hpp"
#include "biunitary/search.hpp"
#include "biunitary/spancert.hpp"

namespace py = pybind11;
using namespace biunitary;

namespace {

DiagProjection mask(std::size_t n, const std::vector<int>& idx) {
  return DiagProjection::from_indices(n, idx);
}

}  // namespace

PYBIND11_MODULE(_biunitary, m) {
  m.doc() = "Biunitary (complex Hadamard) matrices: isolation certificates and families";

  py::register_exception<Error>(m, "BiunitaryError", PyExc_ValueError);

  py::class_<NumericPolicy>(m, "NumericPolicy")
      .def(py::init<>())
      .def_readwrite("tol_entry", &NumericPolicy::tol_entry)
      .def_readwrite("tol_unitary", &NumericPolicy::tol_unitary)
      .def_readwrite("rank_rel_cut", &NumericPolicy::rank_rel_cut)
      .def_readwrite("cert_gap_min", &NumericPolicy::cert_gap_min);

  py::class_<BiunitaryVerdict>(m, "BiunitaryVerdict")
      .def_readonly("is_biunitary", &BiunitaryVerdict::is_biunitary)
      .def_readonly("max_modulus_deviation", &BiunitaryVerdict::max_modulus_deviation)
      .def_readonly("max_unitarity_residual", &BiunitaryVerdict::max_unitarity_residual);

  py::enum_<Verdict>(m, "Verdict")
      .value("Isolated", Verdict::Isolated)
      .value("SpanFails", Verdict::SpanFails)
      .value("Inconclusive", Verdict::Inconclusive);

  py::class_<SpanCertificate>(m, "SpanCertificate")
      .def_readonly("n", &SpanCertificate::n)
      .def_readonly("rank", &SpanCertificate::rank)
      .def_readonly("expected", &SpanCertificate::expected)
      .def_readonly("singular_values", &SpanCertificate::singular_values)
      .def_readonly("gap", &SpanCertificate::gap)
      .def_readonly("verdict", &SpanCertificate::verdict);

  py::class_<CommutingPairSpec>(m, "CommutingPairSpec")
      .def_readonly("base", &CommutingPairSpec::base)
      .def_property_readonly("p", [](const CommutingPairSpec& s) { return s.p_mask.indices(); })
      .def_property_readonly("d", [](const CommutingPairSpec& s) { return s.d_mask.indices(); })
      .def_readonly("residual", &CommutingPairSpec::residual);

  py::class_<BlockPairSpec>(m, "BlockPairSpec")
      .def_readonly("base", &BlockPairSpec::base)
      .def_property_readonly("p1", [](const BlockPairSpec& s) { return s.p1_mask.indices(); })
      .def_property_readonly("p2", [](const BlockPairSpec& s) { return s.p2_mask.indices(); })
      .def_property_readonly("d1", [](const BlockPairSpec& s) { return s.d1_mask.indices(); })
      .def_property_readonly("d2", [](const BlockPairSpec& s) { return s.d2_mask.indices(); })
      .def_readonly("residual", &BlockPairSpec::residual);

  py::class_<SearchResult>(m, "SearchResult")
      .def_readonly("phases", &SearchResult::phases)
      .def_readonly("objective", &SearchResult::objective)
      .def_readonly("iterations", &SearchResult::iterations)
      .def_readonly("converged", &SearchResult::converged)
      .def_readonly("trace", &SearchResult::trace);

  const NumericPolicy defaults;

  m.def("fourier", &fourier, py::arg("n"));
  m.def("bjorck7", &bjorck7);
  m.def("petrescu", &petrescu, py::arg("lam"), py::arg("policy") = defaults);
  m.def("qr_circulant", &qr_circulant, py::arg("n"), py::arg("a"));
  m.def("qr_circulant_solve", &qr_circulant_solve, py::arg("n"), py::arg("policy") = defaults);
  m.def("dephase", &dephase, py::arg("u"), py::arg("policy") = defaults);
  m.def("equivalent", &equivalent, py::arg("u"), py::arg("v"), py::arg("policy") = defaults,
        py::arg("n_limit") = 8, py::arg("use_invariant_filter") = true);
  m.def("verify_biunitary", &verify_biunitary, py::arg("u"), py::arg("policy") = defaults);

  m.def("span_matrix", &span_matrix, py::arg("u"));
  m.def("certify_isolation", &certify_isolation, py::arg("u"), py::arg("policy") = defaults);
  m.def("kernel_dimension", &kernel_dimension, py::arg("u"), py::arg("policy") = defaults);

  m.def("find_commuting_pairs", &find_commuting_pairs, py::arg("u"), py::arg("policy") = defaults);
  m.def("find_block_pairs", &find_block_pairs, py::arg("u"), py::arg("policy") = defaults);
  m.def("constr1_family", &constr1_family, py::arg("spec"), py::arg("t"), py::arg("policy") = defaults);
  m.def("constr2_family", &constr2_family, py::arg("spec"), py::arg("lam"), py::arg("policy") = defaults);
  m.def("verify_unitarity_identity", &verify_unitarity_identity, py::arg("spec"));
  m.def(
      "block_pair",
      [](const ComplexMatrix& u, const std::vector<int>& p1, const std::vector<int>& p2,
         const std::vector<int>& d1, const std::vector<int>& d2) {
        const auto n = static_cast<std::size_t>(u.rows());
        return make_block_pair(u, mask(n, p1), mask(n, p2), mask(n, d1), mask(n, d2));
      },
      py::arg("u"), py::arg("p1"), py::arg("p2"), py::arg("d1"), py::arg("d2"));

  m.def(
      "local_search",
      [](const RealMatrix& seed_phases, const std::vector<int>& p1, const std::vector<int>& p2,
         const std::vector<int>& p3, const std::vector<int>& p4, int max_iters, double tol_obj) {
        SearchConfig cfg;
        cfg.n = static_cast<std::size_t>(seed_phases.rows());
        cfg.p1 = mask(cfg.n, p1);
        cfg.p2 = mask(cfg.n, p2);
        cfg.p3 = mask(cfg.n, p3);
        cfg.p4 = mask(cfg.n, p4);
        cfg.seed_phases = seed_phases;
        cfg.max_iters = max_iters;
        cfg.tol_obj = tol_obj;
        py::gil_scoped_release release;
        return local_search(cfg);
      },
      py::arg("seed_phases"), py::arg("p1"), py::arg("p2"), py::arg("p3"), py::arg("p4"),
      py::arg("max_iters") = 10000, py::arg("tol_obj") = 1e-10);
}
