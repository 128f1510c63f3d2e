#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ehlich/aberration.hpp"
#include "ehlich/catalog.hpp"
#include "ehlich/columns.hpp"
#include "ehlich/enumerate.hpp"
#include "ehlich/exact_linalg.hpp"

namespace py = pybind11;
using namespace ehlich;

namespace {

using Rows = std::vector<std::vector<int>>;

py::object to_int(const mpz_class& z) { return py::module_::import("builtins").attr("int")(z.get_str()); }
py::object to_fraction(const mpq_class& q) { return py::module_::import("fractions").attr("Fraction")(q.get_str()); }

py::dict alias_dict(const AliasStats& st) {
  py::dict d;
  d["c2"] = to_fraction(st.c2);
  d["c3"] = to_fraction(st.c3);
  d["k"] = st.k;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Enumeration of two-level designs with an Ehlich information matrix";

  py::register_exception<InvalidSpecError>(m, "InvalidSpecError", PyExc_ValueError);
  py::register_exception<CatalogError>(m, "CatalogError", PyExc_RuntimeError);
  py::register_exception<SingularMatrixError>(m, "SingularMatrixError", PyExc_ArithmeticError);

  py::enum_<TypeTag>(m, "TypeTag")
      .value("pure", TypeTag::pure)
      .value("type1", TypeTag::type1)
      .value("type2", TypeTag::type2);

  py::class_<EhlichSpec>(m, "EhlichSpec")
      .def_readonly("n", &EhlichSpec::n)
      .def_readonly("p", &EhlichSpec::p)
      .def_readonly("s", &EhlichSpec::s)
      .def_readonly("r", &EhlichSpec::r)
      .def_readonly("u", &EhlichSpec::u)
      .def_readonly("v", &EhlichSpec::v)
      .def("block_sizes", &EhlichSpec::block_sizes)
      .def("__eq__", [](const EhlichSpec& a, const EhlichSpec& b) { return a == b; })
      .def("__repr__", [](const EhlichSpec& s) {
        return "EhlichSpec(n=" + std::to_string(s.n) + ", p=" + std::to_string(s.p) + ", s=" + std::to_string(s.s) +
               ")";
      });

  m.def("make_spec", &make_spec, py::arg("n"), py::arg("p"), py::arg("s"));
  m.def("build_matrix", [](int n, int p, int s) {
    const auto k = build_matrix(make_spec(n, p, s));
    std::vector<std::vector<long>> out(k.rows(), std::vector<long>(k.cols()));
    for (std::size_t i = 0; i < k.rows(); ++i)
      for (std::size_t j = 0; j < k.cols(); ++j) out[i][j] = k(i, j);
    return out;
  });
  m.def("det_closed_form", [](int n, int p, int s) { return to_int(det_closed_form(make_spec(n, p, s))); });
  m.def("trace_inv_closed_form",
        [](int n, int p, int s) { return to_fraction(trace_inv_closed_form(make_spec(n, p, s))); });

  m.def(
      "efficiency_grid",
      [](int n, int p_max) {
        const auto g = efficiency_grid(n, p_max);
        py::list cells;
        for (const auto& [ps, c] : g.cells) {
          py::dict d;
          d["p"] = c.p;
          d["s"] = c.s;
          d["det"] = to_int(c.det);
          d["trace_inv"] = to_fraction(c.trace_inv);
          d["d_eff"] = c.d_eff;
          d["a_eff"] = c.a_eff;
          d["d_optimal"] = c.d_optimal;
          d["a_optimal"] = c.a_optimal;
          cells.append(d);
        }
        return cells;
      },
      py::arg("n"), py::arg("p_max"));
  m.def("efficiency_csv", [](int n, int p_max) { return efficiency_csv(efficiency_grid(n, p_max)); });

  m.def("count_formulas", [](int n) {
    const auto f = count_formulas(n);
    return py::make_tuple(f.zeta3_star, f.zetam1_star, f.zetam1_star_s);
  });
  m.def("candidate_sizes", [](int n) {
    const auto c = enumerate_candidates(n);
    py::dict d;
    d["zeta3"] = c.zeta3_size;
    d["zeta-1"] = c.zetam1_size;
    d["zeta3*"] = c.zeta3_star.size();
    d["zeta-1*"] = c.zetam1_star_a.size() + c.zetam1_star_b.size() + c.zetam1_star_s.size();
    d["zeta-1*(-1,-1)"] = c.zetam1_star_s.size();
    return d;
  });

  m.def("initial_design", [](int n) { return design_rows(initial_design(n)); });

  py::class_<Enumerator>(m, "Enumerator")
      .def(py::init([](int n, std::optional<int> threads) {
             return std::make_unique<Enumerator>(n, threads.value_or(default_thread_count()));
           }),
           py::arg("n"), py::arg("threads") = py::none())
      .def_property_readonly("n", &Enumerator::n)
      .def_property_readonly("threads", &Enumerator::threads)
      .def(
          "enumerate_class",
          [](Enumerator& e, int p, int s, TypeTag t) {
            std::vector<Design> designs;
            {
              py::gil_scoped_release release;
              designs = e.enumerate_class(p, s, t);
            }
            std::vector<Rows> out;
            for (const auto& d : designs) out.push_back(design_rows(d));
            return out;
          },
          py::arg("p"), py::arg("s"), py::arg("type") = TypeTag::pure)
      .def_static("types_for", [](int n, int p, int s) { return Enumerator::types_for(make_spec(n, p, s)); });

  m.def("check_ehlich_form", [](const Rows& rows) -> py::object {
    const auto form = check_ehlich_form(design_from_rows(rows));
    if (const auto* bad = std::get_if<FormMismatch>(&form)) {
      py::dict d;
      d["row"] = bad->row;
      d["col"] = bad->col;
      d["value"] = bad->value;
      d["message"] = bad->message;
      return d;
    }
    const auto& ok = std::get<EhlichForm>(form);
    return py::make_tuple(ok.spec, ok.type);
  });

  m.def("canonical_key", [](const Rows& rows) { return py::bytes(canonicalize(design_from_rows(rows)).bytes); });
  m.def("alias_stats", [](const Rows& rows) { return alias_dict(alias_stats(design_from_rows(rows))); });
  m.def("display_c", [](py::object fraction) {
    mpq_class q(py::str(fraction).cast<std::string>());
    q.canonicalize();
    return display_c(q);
  });

  m.def(
      "write_cell",
      [](const std::filesystem::path& root, int n, int p, int s, TypeTag t, const std::vector<Rows>& designs) {
        std::vector<Design> ds;
        for (const auto& r : designs) ds.push_back(design_from_rows(r));
        const auto spec = make_spec(n, p, s);
        write_cell(root, spec, t, make_entries(ds, spec, t));
      },
      py::arg("root"), py::arg("n"), py::arg("p"), py::arg("s"), py::arg("type"), py::arg("designs"));
  m.def("read_catalog", [](const std::filesystem::path& root) {
    py::list out;
    for (const auto& e : read_catalog(root)) {
      py::dict d;
      d["spec"] = e.spec;
      d["type"] = e.type;
      d["key"] = py::bytes(e.key.bytes);
      d["rows"] = design_rows(e.design);
      d["stats"] = alias_dict(e.stats);
      d["d_optimal"] = e.d_optimal;
      d["a_optimal"] = e.a_optimal;
      out.append(d);
    }
    return out;
  });
  m.def("verify_catalog", &verify_catalog);
  m.attr("ENGINE_VERSION") = kEngineVersion;
  m.attr("KEY_FORMAT_VERSION") = kKeyFormatVersion;
}
