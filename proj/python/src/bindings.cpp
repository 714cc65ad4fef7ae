#include "pqsurf/basket.hpp"
#include "pqsurf/classify.hpp"
#include "pqsurf/cli.hpp"
#include "pqsurf/error.hpp"
#include "pqsurf/serialize.hpp"
#include "pqsurf/signature.hpp"
#include "pqsurf/singularity.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace pqsurf;

namespace {

py::object fraction(const Rational &r) {
  static py::object F = py::module_::import("fractions").attr("Fraction");
  return F(to_string(r));
}

Rational rational_arg(const py::object &x) {
  return parse_rational(py::str(x).cast<std::string>());
}

py::dict basket_dict(const Basket &b) {
  auto inv = basket_invariants(b);
  py::dict d;
  d["basket"] = b.str();
  d["points"] = b.size();
  d["l"] = inv.l;
  d["gamma"] = fraction(inv.gamma);
  d["mu"] = fraction(inv.mu);
  d["index"] = inv.index;
  return d;
}

py::object json_to_python(const nlohmann::json &j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

} // namespace

PYBIND11_MODULE(_pqsurf, m) {
  m.doc() = "Regular product-quotient surfaces: singularities, baskets, signatures, classification";

  static py::exception<Error> exc(m, "PqsurfError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const Error &e) {
      py::set_error(exc, e.what());
    }
  });

  m.def("hj_expand", &hj_expand, py::arg("q"), py::arg("n"));

  m.def(
      "sing_invariants",
      [](const std::string &type) {
        auto t = SingularityType::parse(type);
        auto inv = sing_invariants(t);
        py::dict d;
        d["type"] = t.str();
        d["hj"] = inv.hj;
        d["l"] = inv.l;
        d["gamma"] = fraction(inv.gamma);
        d["mu"] = fraction(inv.mu);
        d["index"] = inv.index;
        return d;
      },
      py::arg("type"));

  m.def("dual_type", [](const std::string &type) { return dual_type(SingularityType::parse(type)).str(); },
        py::arg("type"));

  m.def("basket_invariants", [](const std::string &text) { return basket_dict(Basket::parse(text)); },
        py::arg("basket"));

  m.def(
      "basket_admissible",
      [](const std::string &text) { return basket_admissible(Basket::parse(text), false).admissible; },
      py::arg("basket"));

  m.def(
      "enumerate_baskets",
      [](int chi, const py::object &gamma, int max_mult) {
        std::vector<std::string> out;
        for (const auto &b : enumerate_baskets(chi, rational_arg(gamma), max_mult))
          out.push_back(b.str());
        return out;
      },
      py::arg("chi"), py::arg("gamma"), py::arg("max_mult"));

  m.def("theta", [](const std::string &s) { return fraction(theta(Signature::parse(s))); },
        py::arg("signature"));
  m.def("curve_genus", [](const std::string &s, long order) { return curve_genus(Signature::parse(s), order); },
        py::arg("signature"), py::arg("order"));

  m.def(
      "enumerate_signatures",
      [](const py::object &xi, const std::string &basket, int g0, bool gamma_nonzero) {
        std::vector<std::string> out;
        for (const auto &s : enumerate_signatures(rational_arg(xi), Basket::parse(basket), g0, gamma_nonzero))
          out.push_back(s.str());
        return out;
      },
      py::arg("xi"), py::arg("basket") = "", py::arg("g0") = 0, py::arg("gamma_nonzero") = false);

  m.def(
      "robavecchia_filter",
      [](const std::string &s1, const std::string &s2, const py::object &xi, long index, int size) -> py::object {
        auto r = robavecchia_filter(Signature::parse(s1), Signature::parse(s2), rational_arg(xi), index, size);
        if (!r.pass)
          return py::none();
        return py::int_(*r.order);
      },
      py::arg("t1"), py::arg("t2"), py::arg("xi"), py::arg("index"), py::arg("basket_size"));

  m.def(
      "classify",
      [](int pg, int gamma, int max_mult, const std::string &catalog, std::optional<std::set<long>> orders,
         bool builtin_abelian, int jobs, bool minimality) {
        GroupCatalog cat = catalog.empty() ? GroupCatalog{} : load_catalog(catalog);
        ClassifyOptions opt;
        opt.orders = std::move(orders);
        opt.builtin_abelian = builtin_abelian;
        opt.jobs = jobs;
        opt.run_minimality = minimality;
        ClassificationReport rep;
        {
          py::gil_scoped_release release;
          rep = existing_surfaces(pg, gamma, max_mult, cat, opt);
        }
        return json_to_python(report_to_json(rep, true));
      },
      py::arg("pg"), py::arg("gamma"), py::arg("max_mult"), py::arg("catalog") = "",
      py::arg("orders") = py::none(), py::arg("builtin_abelian") = false, py::arg("jobs") = 1,
      py::arg("minimality") = true);

  m.def(
      "verify_tables",
      [](const std::string &path) {
        py::list out;
        for (const auto &row : load_table_fixtures(path)) {
          auto d = verify_table_row(row);
          py::dict r;
          r["table"] = row.table;
          r["line"] = row.line;
          r["expected"] = row.expected;
          r["pass"] = d.pass;
          r["issues"] = d.issues;
          out.append(r);
        }
        return out;
      },
      py::arg("fixtures"));

  m.def(
      "run_cli",
      [](const std::vector<std::string> &args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
