#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "d0l/cli.hpp"
#include "d0l/oracle.hpp"
#include "d0l/report.hpp"

namespace py = pybind11;
using namespace d0l;

namespace {

Limits make_limits(std::size_t max_len, std::size_t max_steps, std::uint64_t step_budget,
                   std::size_t max_states)
{
    Limits limits;
    limits.max_len = max_len;
    limits.max_steps = max_steps;
    limits.step_budget = step_budget;
    limits.max_states = max_states;
    return limits;
}

D0LSystem prolongable(const std::string& text)
{
    D0LSystem system = parse_system(text);
    if (!is_letter_prolongable(system))
        throw PreconditionError("this operation needs a single-letter prolongable axiom");
    return system;
}

std::string decide_json(const std::string& text, std::optional<char> pivot, const Limits& limits)
{
    auto decision = decide_ultimate_periodicity(parse_system(text), DecideOptions{pivot}, limits);
    auto j = report::decision_json(decision);
    j["summary"] = report::summary(decision);
    return j.dump();
}

std::string classify_json(const std::string& text)
{
    auto system = prolongable(text);
    const auto& h = system.morphism();
    return report::classification_json(h.alphabet(), classification(h, system.axiom().front())).dump();
}

std::string ksets_json(const std::string& text, std::uint64_t p, const Limits& limits)
{
    auto system = prolongable(text);
    auto rep = k_sets(system, p, limits);
    bool periodic = is_ultimately_p_periodic(rep, system.alphabet(), identity_coding());
    return report::ksets_json(system.alphabet(), rep, periodic).dump();
}

std::string normalize_json(const std::string& text, const Limits& limits)
{
    return report::family_json(decompose(parse_system(text), limits)).dump();
}

std::string expand(const std::string& text, std::size_t length)
{
    auto system = parse_system(text);
    return to_string(system.alphabet(), oracle::expand_prefix(system, length));
}

bool words_equal_at(const std::string& text, const std::string& u, const std::string& v,
                    std::size_t n, const Limits& limits)
{
    auto system = parse_system(text);
    const auto& a = system.alphabet();
    return lazy_equal(system.morphism(), parse_word(a, u), parse_word(a, v), n, limits);
}

py::tuple run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Native core of the d0l package. Results come back as JSON text.";

    static py::exception<ResourceLimit> resource_limit(m, "ResourceLimit", PyExc_RuntimeError);
    static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ResourceLimit& e) {
            PyErr_SetString(resource_limit.ptr(), e.what());
        } catch (const ParseError& e) {
            PyErr_SetString(parse_error.ptr(), e.what());
        } catch (const PreconditionError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    const Limits defaults;
    py::class_<Limits>(m, "Limits")
        .def(py::init(&make_limits), py::arg("max_len") = defaults.max_len,
             py::arg("max_steps") = defaults.max_steps, py::arg("step_budget") = defaults.step_budget,
             py::arg("max_states") = defaults.max_states)
        .def_readwrite("max_len", &Limits::max_len)
        .def_readwrite("max_steps", &Limits::max_steps)
        .def_readwrite("step_budget", &Limits::step_budget)
        .def_readwrite("max_states", &Limits::max_states);

    m.def("decide_json", &decide_json, py::arg("text"), py::arg("pivot") = py::none(),
          py::arg("limits") = defaults, py::call_guard<py::gil_scoped_release>());
    m.def("classify_json", &classify_json, py::arg("text"));
    m.def("ksets_json", &ksets_json, py::arg("text"), py::arg("p"), py::arg("limits") = defaults,
          py::call_guard<py::gil_scoped_release>());
    m.def("normalize_json", &normalize_json, py::arg("text"), py::arg("limits") = defaults);
    m.def("expand", &expand, py::arg("text"), py::arg("length"));
    m.def("words_equal_at", &words_equal_at, py::arg("text"), py::arg("u"), py::arg("v"), py::arg("n"),
          py::arg("limits") = defaults);
    m.def("run", &run, py::arg("args"), "Run one command line; returns (exit code, stdout, stderr).");
}
