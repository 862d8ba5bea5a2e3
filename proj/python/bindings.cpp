#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coxlift/cli.hpp"
#include "coxlift/errors.hpp"
#include "coxlift/io.hpp"

namespace py = pybind11;
using namespace coxlift;
using io::json;

namespace {

// Python ints of any size cross the boundary as decimal strings.
Integer to_integer(const py::handle& h) { return Integer(py::str(h).cast<std::string>()); }
py::int_ to_python(const Integer& x) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

IntegerMatrix to_matrix(const std::vector<std::vector<py::object>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("matrix rows differ in length");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = to_integer(rows[i][j]);
  }
  return m;
}

py::list from_matrix(const IntegerMatrix& m) {
  py::list out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.append(to_python(m(i, j)));
    out.append(row);
  }
  return out;
}

GroupElement to_element(const std::vector<py::object>& v) {
  std::vector<Integer> c;
  for (const auto& x : v) c.push_back(to_integer(x));
  return GroupElement(c);
}

py::dict describe_group(const FgAbelianGroup& g) {
  py::list torsion;
  for (const auto& d : g.torsion()) torsion.append(to_python(d));
  py::dict d;
  d["canonical"] = g.to_string();
  d["torsion"] = torsion;
  d["free_rank"] = g.free_rank();
  return d;
}

py::tuple output(const CommandOutput& c) { return py::make_tuple(c.status, c.human, c.document.dump()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cox rings of root stack lifts";

  // most derived last: translators run in reverse order of registration
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);
  static py::exception<InputError> input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const json::exception& e) {
      py::set_error(input_error, (std::string("malformed input: ") + e.what()).c_str());
    }
  });

  m.def(
      "smith_normal_form",
      [](const std::vector<std::vector<py::object>>& rows) {
        const SmithForm s = smith_normal_form(to_matrix(rows));
        return py::make_tuple(from_matrix(s.S), from_matrix(s.U), from_matrix(s.V));
      },
      py::arg("matrix"), "(S, U, V) with U * M * V == S");

  m.def(
      "group",
      [](std::size_t rank, const std::vector<std::vector<py::object>>& relations) {
        IntegerMatrix r = to_matrix(relations);
        if (relations.empty()) r = IntegerMatrix(0, rank);
        if (r.cols() != rank) throw InputError("relations must have one entry per generator");
        return describe_group(FgAbelianGroup(rank, r));
      },
      py::arg("rank"), py::arg("relations"), "canonical form of Z^rank modulo the relation rows");

  m.def(
      "element_order",
      [](const std::vector<py::object>& invariants, const std::vector<py::object>& x) -> py::object {
        std::vector<Integer> inv;
        for (const auto& d : invariants) inv.push_back(to_integer(d));
        const auto o = element_order(FgAbelianGroup::from_invariants(inv, 0), to_element(x));
        return o ? py::object(to_python(*o)) : py::none();
      },
      py::arg("invariants"), py::arg("element"));

  m.def(
      "pushout_root",
      [](const std::vector<py::object>& invariants, std::size_t free_rank, const std::vector<py::object>& cls,
         const py::object& n) {
        std::vector<Integer> inv;
        for (const auto& d : invariants) inv.push_back(to_integer(d));
        const PushoutRoot r = pushout_root(FgAbelianGroup::from_invariants(inv, free_rank), to_element(cls), to_integer(n));
        py::dict d = describe_group(r.group);
        py::list delta;
        for (const auto& c : r.group.canonical_coordinates(r.delta)) delta.append(to_python(c));
        d["delta"] = delta;
        return d;
      },
      py::arg("invariants"), py::arg("free_rank"), py::arg("cls"), py::arg("n"),
      "(A + Z) / (a, -n) for A = Z/d1 + ... + Z^free_rank");

  m.def(
      "lift",
      [](const std::string& problem, std::size_t step_cap, unsigned long bound) {
        return output(lift_command(json::parse(problem), step_cap, bound));
      },
      py::arg("problem"), py::arg("step_cap") = 10000, py::arg("spotcheck_bound") = 4);
  m.def(
      "verify",
      [](const std::string& problem, const std::string& result, std::size_t step_cap) {
        return output(verify_command(json::parse(problem), json::parse(result), step_cap));
      },
      py::arg("problem"), py::arg("result"), py::arg("step_cap") = 10000);
  m.def(
      "decompose",
      [](const std::string& doc, std::size_t step_cap) { return output(decompose_command(json::parse(doc), step_cap)); },
      py::arg("doc"), py::arg("step_cap") = 10000);
  m.def(
      "factor",
      [](const std::string& doc, const std::string& element, std::size_t step_cap) {
        return output(factor_command(json::parse(doc), element, step_cap));
      },
      py::arg("doc"), py::arg("element"), py::arg("step_cap") = 10000);
}
