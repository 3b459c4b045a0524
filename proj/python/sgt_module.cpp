// Python bindings. Algebra elements cross the boundary as length-3 float
// arrays, group elements as 2x2 complex arrays, dof tables as (rows, 3).

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sgt/harness.hpp"

namespace py = pybind11;
using namespace sgt;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

AlgebraElement to_algebra(const Array& a) {
  if (a.ndim() != 1 || a.shape(0) != 3) throw Error(ErrorKind::InvalidSize, "algebra elements have 3 components");
  return {a.at(0), a.at(1), a.at(2)};
}

Array from_algebra(const AlgebraElement& x) {
  Array out(3);
  for (int k = 0; k < 3; ++k) out.mutable_at(k) = x[k];
  return out;
}

ComplexArray from_mat(const Mat2& m) {
  ComplexArray out({2, 2});
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.mutable_at(r, c) = m(r, c);
  return out;
}

Mat2 to_mat(const ComplexArray& a) {
  if (a.ndim() != 2 || a.shape(0) != 2 || a.shape(1) != 2) throw Error(ErrorKind::InvalidSize, "expected a 2x2 matrix");
  Mat2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = a.at(r, c);
  return m;
}

Array dof_table(std::span<const AlgebraElement> xs) {
  Array out({static_cast<py::ssize_t>(xs.size()), py::ssize_t{3}});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t r = 0; r < xs.size(); ++r)
    for (int c = 0; c < 3; ++c) v(r, c) = xs[r][c];
  return out;
}

// Dofs in the C++ time-major layout, rebuilt from (spatial, temporal) tables.
DiscreteGaugeField field_from_tables(const SpacetimeMesh& mesh, const Array& spatial, const Array& temporal) {
  DiscreteGaugeField out(mesh);
  const auto ne = mesh.spatial().num_edges(), nv = mesh.spatial().num_vertices();
  if (spatial.ndim() != 2 || spatial.shape(0) != ne * mesh.nt() || spatial.shape(1) != 3 || temporal.ndim() != 2 ||
      temporal.shape(0) != nv * mesh.nt() || temporal.shape(1) != 3) {
    throw Error(ErrorKind::InvalidSize, "dof tables must have shapes (E*Nt, 3) and (V*Nt, 3)");
  }
  auto s = spatial.unchecked<2>();
  auto t = temporal.unchecked<2>();
  for (int tau = 0; tau < mesh.nt(); ++tau) {
    for (std::int64_t e = 0; e < ne; ++e) {
      const auto r = tau * ne + e;
      out.set_spatial(e, tau, {s(r, 0), s(r, 1), s(r, 2)});
    }
    for (std::int64_t i = 0; i < nv; ++i) {
      const auto r = tau * nv + i;
      out.set_temporal(i, tau, {t(r, 0), t(r, 1), t(r, 2)});
    }
  }
  return out;
}

py::dict breakdown_dict(const ActionBreakdown& b) {
  py::dict d;
  d["temporal"] = b.temporal;
  d["spatial"] = b.spatial;
  d["scalar_temporal"] = b.scalar_temporal;
  d["scalar_spatial"] = b.scalar_spatial;
  d["total"] = b.total();
  return d;
}

py::dict record_dict(const ConvergenceRecord& r) {
  py::dict d;
  d["case"] = r.case_id;
  d["action"] = to_string(r.action);
  d["N"] = r.n;
  d["h"] = r.h;
  d["S_discrete"] = r.s_discrete;
  d["S_exact"] = r.s_exact;
  d["rel_err"] = r.rel_err;
  return d;
}

py::dict fit_dict(const FitResult& f) {
  py::dict d;
  d["exponent"] = f.exponent;
  d["prefactor"] = f.prefactor;
  d["residual"] = f.residual;
  d["quadratic"] = f.quadratic;
  d["points"] = f.points;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Simplicial gauge theory on periodic Kuhn meshes";

  py::register_exception<Error>(m, "SgtError", PyExc_ValueError);

  // Lie kernels
  m.def("exp", [](const Array& x) { return from_mat(exp(to_algebra(x)).matrix()); }, py::arg("x"),
        "SU(2) exponential of a^k t^k as a 2x2 complex array.");
  m.def("log", [](const ComplexArray& u) { return from_algebra(log(GroupElement::from_matrix(to_mat(u)))); },
        py::arg("u"), "Principal logarithm of an SU(2) matrix.");
  m.def("bracket", [](const Array& x, const Array& y) { return from_algebra(ad(to_algebra(x), to_algebra(y))); });
  m.def("bch", [](const Array& x, const Array& y, int order) { return from_algebra(bch(to_algebra(x), to_algebra(y), order)); },
        py::arg("x"), py::arg("y"), py::arg("order") = kMaxSeriesOrder);
  m.def("dexp",
        [](const Array& x, const Array& y, int order) { return from_algebra(dexp(to_algebra(x), to_algebra(y), order)); },
        py::arg("x"), py::arg("y"), py::arg("order") = kMaxSeriesOrder);
  m.def("generator", [](int k) { return from_mat(AlgebraElement::generator(k).matrix()); }, py::arg("k"));

  py::class_<SpacetimeMesh>(m, "Mesh")
      .def(py::init<int, int>(), py::arg("n"), py::arg("nt"))
      .def_property_readonly("n", &SpacetimeMesh::n)
      .def_property_readonly("nt", &SpacetimeMesh::nt)
      .def_property_readonly("h", &SpacetimeMesh::h)
      .def_property_readonly("num_vertices", [](const SpacetimeMesh& s) { return s.spatial().num_vertices(); })
      .def_property_readonly("num_edges", [](const SpacetimeMesh& s) { return s.spatial().num_edges(); })
      .def_property_readonly("num_faces", [](const SpacetimeMesh& s) { return s.spatial().num_faces(); })
      .def_property_readonly("num_tets", [](const SpacetimeMesh& s) { return s.spatial().num_tets(); })
      .def("dump",
           [](const SpacetimeMesh& s) {
             std::ostringstream out;
             s.dump(out);
             return out.str();
           })
      .def("__repr__", [](const SpacetimeMesh& s) {
        return "Mesh(n=" + std::to_string(s.n()) + ", nt=" + std::to_string(s.nt()) + ")";
      });

  py::class_<MassData>(m, "Mass").def(py::init([](const SpacetimeMesh& mesh) { return assemble_mass(mesh); }),
                                      py::arg("mesh"));

  py::class_<DiscreteGaugeField>(m, "GaugeField")
      .def(py::init<const SpacetimeMesh&>(), py::arg("mesh"))
      .def(py::init(&field_from_tables), py::arg("mesh"), py::arg("spatial"), py::arg("temporal"))
      .def_property_readonly("spatial", [](const DiscreteGaugeField& f) { return dof_table(f.spatial_dofs()); },
                             "(E*Nt, 3) spatial dofs, row tau*E + e.")
      .def_property_readonly("temporal", [](const DiscreteGaugeField& f) { return dof_table(f.temporal_dofs()); },
                             "(V*Nt, 3) temporal dofs, row tau*V + i.")
      .def_property_readonly("temporal_gauge", &DiscreteGaugeField::temporal_gauge)
      .def("to_snapshot",
           [](const DiscreteGaugeField& f, const SpacetimeMesh& mesh) {
             std::ostringstream out;
             write_snapshot(out, f, mesh);
             return out.str();
           })
      .def_static("from_snapshot", [](const std::string& text, const SpacetimeMesh& mesh) {
        std::istringstream in(text);
        return read_snapshot(in, mesh);
      });

  py::class_<GaugeTransform>(m, "GaugeTransform").def(py::init<const SpacetimeMesh&>(), py::arg("mesh"));

  m.def("sample_case",
        [](int case_id, const SpacetimeMesh& mesh, int points) {
          return sample(test_field(case_id), mesh, QuadratureRule::gauss_legendre(points));
        },
        py::arg("case_id"), py::arg("mesh"), py::arg("quadrature_points") = kDefaultQuadraturePoints);
  m.def("random_field", &random_field, py::arg("mesh"), py::arg("seed"), py::arg("amplitude"),
        py::arg("temporal_gauge") = false);
  m.def("random_gauge", &random_gauge, py::arg("mesh"), py::arg("seed"), py::arg("amplitude"));
  m.def("apply_gauge", py::overload_cast<const DiscreteGaugeField&, const GaugeTransform&, const SpacetimeMesh&>(&apply_gauge),
        py::arg("field"), py::arg("g"), py::arg("mesh"));

  m.def("action",
        [](const std::string& kind, const DiscreteGaugeField& field, const SpacetimeMesh& mesh, const MassData& mass) {
          return breakdown_dict(action(parse_action_kind(kind), field, mesh, mass));
        },
        py::arg("kind"), py::arg("field"), py::arg("mesh"), py::arg("mass"),
        "Discrete Yang-Mills action 'J', 'I' or 'L' as a dict of its parts.");
  m.def("continuum_action", &continuum_action, py::arg("case_id"));

  m.def("run_convergence",
        [](int case_id, const std::vector<int>& ns, const std::string& kind, int points) {
          const ConvergenceRun run = run_convergence(case_id, ns, parse_action_kind(kind), points);
          py::dict d;
          py::list records;
          for (const auto& r : run.records) records.append(record_dict(r));
          d["records"] = records;
          d["fit"] = fit_dict(run.fit);
          d["strictly_decreasing"] = run.strictly_decreasing;
          return d;
        },
        py::arg("case_id"), py::arg("ns"), py::arg("kind") = "L", py::arg("quadrature_points") = kDefaultQuadraturePoints);
  m.def("fit_power_law",
        [](const std::vector<double>& h, const std::vector<double>& err) { return fit_dict(fit_power_law(h, err)); },
        py::arg("h"), py::arg("err"));
  m.def("run_gauge_invariance",
        [](int n, int seeds, double amplitude, int fields, std::uint64_t base_seed) {
          const GaugeInvarianceResult r = run_gauge_invariance(n, seeds, amplitude, fields, base_seed);
          py::dict d;
          d["trials"] = r.trials;
          d["L"] = r.deviation_L;
          d["I"] = r.deviation_I;
          d["J"] = r.deviation_J;
          d["scalar_L"] = r.deviation_scalar_L;
          d["scalar_F"] = r.deviation_scalar_F;
          return d;
        },
        py::arg("n"), py::arg("seeds"), py::arg("amplitude"), py::arg("fields") = 2, py::arg("base_seed") = 1);
}
