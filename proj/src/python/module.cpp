#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "whyasp/analysis.hpp"
#include "whyasp/explanation.hpp"
#include "whyasp/grounding.hpp"
#include "whyasp/parser.hpp"
#include "whyasp/pipeline.hpp"
#include "whyasp/semantics.hpp"

namespace py = pybind11;
using namespace whyasp;

namespace {

RunConfig config_of(const std::string& program, const std::string& query, std::optional<std::string> answer_set,
                    std::size_t count, std::vector<std::string> extra_atoms, bool full, bool trust,
                    std::size_t arith_depth, std::size_t oracle_cap) {
    RunConfig config;
    config.program = program;
    config.query = query;
    config.answer_set = std::move(answer_set);
    config.count = count;
    config.extra_atoms = std::move(extra_atoms);
    config.full_instantiation = full;
    config.trust_answer_set = trust;
    config.arith_depth = arith_depth;
    config.oracle_cap = oracle_cap;
    return config;
}

std::vector<std::string> texts(const GroundProgram& ground, const AtomSet& set) {
    std::vector<std::string> out;
    for (const auto& a : ground.to_atoms(set)) out.push_back(a.to_string());
    return out;
}

struct PyExplanation {
    std::vector<std::string> assumptions;
    std::string dot;
    std::string json;
    std::string trace;
    std::string facts;
};

std::vector<PyExplanation> explain_atom(const std::string& program, const std::string& query,
                                        std::optional<std::string> answer_set, std::size_t count,
                                        std::vector<std::string> extra_atoms, bool full, bool trust,
                                        std::size_t arith_depth, std::size_t oracle_cap) {
    auto config = config_of(program, query, std::move(answer_set), count, std::move(extra_atoms), full, trust,
                            arith_depth, oracle_cap);
    auto instance = prepare(config);
    std::vector<PyExplanation> out;
    for (const auto& e : explain_query(instance, count)) {
        out.push_back({texts(instance.ground, e.assumptions), render(instance, e, OutputFormat::dot),
                       render(instance, e, OutputFormat::json), render(instance, e, OutputFormat::trace),
                       render(instance, e, OutputFormat::facts)});
    }
    return out;
}

std::vector<std::vector<std::string>> answer_sets(const std::string& program, std::size_t cap, bool full) {
    auto parsed = parse_program(program);
    validate_program(parsed);
    GroundingOptions options;
    options.full = full;
    auto ground = instantiate(parsed, {}, options);
    std::vector<std::vector<std::string>> out;
    for (const auto& set : oracle_answer_sets(ground, cap)) out.push_back(texts(ground, set));
    return out;
}

std::pair<std::vector<std::string>, std::vector<std::string>> well_founded(const std::string& program,
                                                                           const std::string& answer_set,
                                                                           bool full) {
    auto parsed = parse_program(program);
    validate_program(parsed);
    auto given = parse_answer_set(answer_set, parsed);
    GroundingOptions options;
    options.full = full;
    auto ground = instantiate(parsed, given, options);
    auto wf = well_founded_derivation(ground, ground.to_set(given));
    return {texts(ground, wf.lower), texts(ground, wf.upper)};
}

}  // namespace

PYBIND11_MODULE(whyasp, m) {
    m.doc() = "Explanations for atoms in answer sets";

    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", error.ptr());
    py::register_exception<SafetyError>(m, "SafetyError", error.ptr());
    py::register_exception<StratificationError>(m, "StratificationError", error.ptr());
    py::register_exception<AnswerSetError>(m, "AnswerSetError", error.ptr());
    py::register_exception<QueryError>(m, "QueryError", error.ptr());

    py::class_<PyExplanation>(m, "Explanation")
        .def_readonly("assumptions", &PyExplanation::assumptions)
        .def_readonly("dot", &PyExplanation::dot)
        .def_readonly("json", &PyExplanation::json)
        .def_readonly("trace", &PyExplanation::trace)
        .def_readonly("facts", &PyExplanation::facts)
        .def("__repr__", [](const PyExplanation& e) {
            return "<Explanation with " + std::to_string(e.assumptions.size()) + " assumed atoms>";
        });

    m.def("explain", &explain_atom, py::arg("program"), py::arg("query"), py::arg("answer_set") = py::none(),
          py::arg("count") = 1, py::arg("extra_atoms") = std::vector<std::string>{}, py::arg("full") = false,
          py::arg("trust_answer_set") = false, py::arg("arith_depth") = 64, py::arg("oracle_cap") = 20,
          "Minimal assumption sets and explanation DAGs for a ground query atom.");

    m.def(
        "run",
        [](const std::string& program, const std::string& query, std::optional<std::string> answer_set,
           const std::string& format, std::size_t count, std::vector<std::string> extra_atoms, bool full) {
            auto config = config_of(program, query, std::move(answer_set), count, std::move(extra_atoms), full,
                                    false, 64, 20);
            config.format = parse_format(format);
            auto result = whyasp::run(config);
            return py::make_tuple(result.status, result.output, result.message);
        },
        py::arg("program"), py::arg("query"), py::arg("answer_set") = py::none(), py::arg("format") = "dot",
        py::arg("count") = 1, py::arg("extra_atoms") = std::vector<std::string>{}, py::arg("full") = false,
        "Runs the command-line pipeline; returns (status, output, message).");

    m.def("answer_sets", &answer_sets, py::arg("program"), py::arg("cap") = 20, py::arg("full") = false,
          "All answer sets by brute force, each as a sorted list of atoms.");

    m.def("well_founded", &well_founded, py::arg("program"), py::arg("answer_set"), py::arg("full") = false,
          "Lower and upper bound of the well-founded interpretation relative to the answer set.");
}
