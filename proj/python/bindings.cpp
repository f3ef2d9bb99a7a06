#include "ccf/algorithm.hpp"
#include "ccf/error.hpp"
#include "ccf/expansion.hpp"
#include "ccf/growth.hpp"
#include "ccf/io.hpp"
#include "ccf/lagrange.hpp"
#include "ccf/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace ccf;

namespace {

// Results cross the boundary as JSON text; the Python package decodes them.
std::string text(const Json& j) { return j.dump(); }

SurdContextPtr context(const std::string& ring_name, const std::vector<std::string>& minpoly, const std::string& root) {
    if (minpoly.size() != 3) throw InputError("minpoly: expected three coefficients [a, b, c]");
    Ring r = parse_ring(ring_name);
    return std::make_shared<const SurdContext>(RingElement::parse(minpoly[0], r), RingElement::parse(minpoly[1], r),
                                               RingElement::parse(minpoly[2], r), parse_root_selector(root));
}

AlgorithmSpec algorithm(const std::string& ring_name, const std::string& alg, const std::optional<std::string>& partition) {
    Ring r = parse_ring(ring_name);
    if (alg == "nearest") return AlgorithmSpec::nearest_integer(r);
    if (alg == "partition") {
        if (!partition) throw InputError("partition: a partition file is required");
        return AlgorithmSpec::partition(parse_partition(read_json_file(*partition), r));
    }
    throw InputError("alg: expected nearest or partition (got '" + alg + "')");
}

std::vector<RingElement> elements(const std::vector<std::string>& items, Ring r) {
    std::vector<RingElement> out;
    for (const auto& s : items) out.push_back(RingElement::parse(s, r));
    return out;
}

}  // namespace

PYBIND11_MODULE(_ccf, m) {
    m.doc() = "Complex continued fractions over imaginary quadratic rings";

    static py::exception<BudgetExhausted> budget(m, "BudgetExhausted", PyExc_RuntimeError);
    static py::exception<InvariantViolation> invariant(m, "InvariantViolation", PyExc_AssertionError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const BudgetExhausted& e) {
            budget(e.what());
        } catch (const InvariantViolation& e) {
            invariant(e.what());
        } catch (const InputError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const std::domain_error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.attr("REPORT_SCHEMA") = kReportSchema;

    m.def("rings", [] {
        std::vector<std::string> out;
        for (Ring r : kAllRings) out.emplace_back(ring_name(r));
        return out;
    });

    m.def("covering_radius_sq", [](const std::string& ring) { return to_string(covering_radius_sq(parse_ring(ring))); },
          py::arg("ring"));

    m.def(
        "expand",
        [](const std::string& ring, const std::vector<std::string>& minpoly, const std::string& root, std::size_t steps,
           const std::string& alg, const std::optional<std::string>& partition) {
            ExpansionOptions o;
            o.max_steps = steps;
            return text(to_json(expand_exact(context(ring, minpoly, root), algorithm(ring, alg, partition), o)));
        },
        py::arg("ring"), py::arg("minpoly"), py::arg("root") = "+im", py::arg("steps") = 50, py::arg("alg") = "nearest",
        py::arg("partition") = py::none());

    m.def(
        "expand_value",
        [](const std::string& ring, const std::string& value, std::size_t steps, unsigned precision, unsigned precision_cap,
           const std::string& alg, const std::optional<std::string>& partition) {
            ExpansionOptions o;
            o.max_steps = steps;
            o.precision = precision;
            o.precision_cap = precision_cap;
            return text(to_json(expand_numeric(NumericSource::parse(value), algorithm(ring, alg, partition), o)));
        },
        py::arg("ring"), py::arg("value"), py::arg("steps") = 40, py::arg("precision") = 256, py::arg("precision_cap") = 4096,
        py::arg("alg") = "nearest", py::arg("partition") = py::none());

    m.def(
        "detect_period",
        [](const std::string& ring, const std::vector<std::string>& minpoly, const std::string& root, std::size_t max_steps,
           const std::string& alg, const std::optional<std::string>& partition) {
            return text(to_json(detect_period(context(ring, minpoly, root), algorithm(ring, alg, partition), max_steps)));
        },
        py::arg("ring"), py::arg("minpoly"), py::arg("root") = "+im", py::arg("max_steps") = 10000,
        py::arg("alg") = "nearest", py::arg("partition") = py::none());

    m.def(
        "surd_from_period",
        [](const std::string& ring, const std::vector<std::string>& preperiod, const std::vector<std::string>& cycle) {
            Ring r = parse_ring(ring);
            return text(context_to_json(*surd_from_period(elements(preperiod, r), elements(cycle, r), r)));
        },
        py::arg("ring"), py::arg("preperiod"), py::arg("cycle"));

    m.def(
        "verify_algorithm",
        [](const std::string& ring, const std::string& alg, const std::optional<std::string>& partition) {
            AlgorithmSpec a = algorithm(ring, alg, partition);
            return text(Json{{"thm51", to_json(verify_thm51(a))}, {"cor52", to_json(verify_cor52(a))}});
        },
        py::arg("ring") = "E", py::arg("alg") = "nearest", py::arg("partition") = py::none());

    m.def(
        "growth_report",
        [](const std::vector<std::string>& minpoly, const std::string& root, std::size_t steps) {
            ExpansionOptions o;
            o.max_steps = steps;
            auto rep = expand_exact(context("E", minpoly, root), AlgorithmSpec::nearest_integer(Ring::E), o);
            return growth_csv(growth_check(rep));
        },
        py::arg("minpoly"), py::arg("root") = "+im", py::arg("steps") = 200);

    m.def(
        "condition_c",
        [](const std::string& ring, const std::string& a_prev, const std::string& a_next) {
            Ring r = parse_ring(ring);
            return condition_c_check(RingElement::parse(a_prev, r), RingElement::parse(a_next, r));
        },
        py::arg("ring"), py::arg("a_prev"), py::arg("a_next"));

    m.def(
        "succession_check",
        [](const std::string& a_n, const std::string& a_next) {
            return succession_check(RingElement::parse(a_n, Ring::E), RingElement::parse(a_next, Ring::E)).to_string();
        },
        py::arg("a_n"), py::arg("a_next"));

    m.def("check_growth_polynomial", [] { return text(to_json(check_growth_polynomial())); });
    m.def("sweep_j_clause", [](unsigned steps) { return text(to_json(sweep_j_clause(steps))); }, py::arg("steps") = 1000);
}
