#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "polylad/cli/cli.hpp"
#include "polylad/errors.hpp"
#include "polylad/hyper/hyper.hpp"
#include "polylad/ladders/ladders.hpp"
#include "polylad/relfind/relfind.hpp"
#include "polylad/series/series.hpp"
#include "polylad/spigot/spigot.hpp"

namespace py = pybind11;
using namespace polylad;

namespace {

// Values cross the boundary as decimal strings so no precision is lost.
std::string value_str(const mp::MpReal& v, long bits, int base) {
    int digits = base == 16 ? static_cast<int>(bits / 4) : static_cast<int>(bits * 30103 / 100000);
    return v.to_string(digits, base);
}

}  // namespace

PYBIND11_MODULE(_polylad, m) {
    m.doc() = "Polylogarithm ladders, BBP-type digit extraction and integer relations";

    static py::exception<Error> exc(m, "PolyladError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(exc, (std::string(e.name()) + ": " + e.what()).c_str());
        }
    });

    py::class_<ladders::CheckReport>(m, "CheckReport")
        .def_readonly("name", &ladders::CheckReport::name)
        .def_readonly("bits", &ladders::CheckReport::bits)
        .def_readonly("log2_residual", &ladders::CheckReport::log2_residual)
        .def_readonly("passed", &ladders::CheckReport::pass)
        .def_readonly("skipped", &ladders::CheckReport::skipped)
        .def_readonly("detail", &ladders::CheckReport::detail)
        .def("__repr__", [](const ladders::CheckReport& r) {
            std::ostringstream os;
            os << "<CheckReport " << r.name << " pass=" << r.pass << " log2_residual=" << r.log2_residual << ">";
            return os.str();
        });

    m.def("formulas", [] {
        std::vector<std::string> names;
        for (const auto& f : series::catalog()) names.push_back(f.name);
        return names;
    }, "Names of the catalog formulas.");

    m.def("relations", [] {
        std::vector<std::string> names;
        for (const auto& r : ladders::default_catalog().relations) names.push_back(r.name);
        return names;
    }, "Names of the catalog relations.");

    m.def("hex_digits", [](const std::string& constant, long position, int count, int threads) {
        spigot::DigitRequest req;
        req.formula = constant;
        req.position = position;
        req.count = count;
        req.threads = threads;
        py::gil_scoped_release release;
        return spigot::hex_digits(req).digits;
    }, py::arg("constant"), py::arg("position") = 1, py::arg("count") = 16, py::arg("threads") = 1,
       "Uppercase hex digits starting at the 1-based fractional position.");

    m.def("evaluate", [](const std::string& constant, long bits, int base) {
        return value_str(series::eval_formula(constant, mp::Bits{bits}), bits, base);
    }, py::arg("constant"), py::arg("bits") = 256, py::arg("base") = 10);

    m.def("eval_expr", [](const std::string& expr, long bits) {
        return value_str(cli::eval_expr(expr, mp::Bits{bits}), bits, 10);
    }, py::arg("expr"), py::arg("bits") = 256);

    m.def("check_relation", [](const std::string& name, long bits) {
        return ladders::check_relation(name, mp::Bits{bits});
    }, py::arg("name"), py::arg("bits") = 512);

    m.def("asymp_coeffs", [](int m_max) {
        std::vector<std::string> out;
        for (const auto& k : hyper::asymp_coeffs(m_max)) out.push_back(k.get_str());
        return out;
    }, py::arg("m_max"), "Asymptotic integers k_1..k_m as decimal strings.");

    m.def("discover", [](const std::vector<std::string>& exprs, long bits, int max_digits) {
        relfind::RelationQuery q;
        q.max_digits = max_digits;
        for (const auto& e : exprs) q.values.push_back(cli::eval_expr(e, mp::Bits{bits}));
        auto r = relfind::pslq(q);
        py::dict d;
        d["status"] = relfind::to_string(r.status);
        py::list v;
        for (const auto& e : r.vector) v.append(py::int_(py::str(e.get_str())));
        d["vector"] = v;
        d["log2_residual"] = r.log2_residual;
        d["iterations"] = r.iterations;
        return d;
    }, py::arg("exprs"), py::arg("bits") = 512, py::arg("max_digits") = 20);

    m.def("run", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Run the command line tool; returns (exit_code, stdout, stderr).");
}
