#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "whyasp/ast.hpp"
#include "whyasp/dag.hpp"

namespace whyasp {

enum class OutputFormat { dot, json, trace, facts };

OutputFormat parse_format(const std::string& name);

struct RunConfig {
    std::string program;
    /// Answer set text; computed by the oracle when absent.
    std::optional<std::string> answer_set;
    std::string query;
    OutputFormat format = OutputFormat::dot;
    std::size_t count = 1;
    std::vector<std::string> extra_atoms;
    std::size_t arith_depth = 64;
    std::size_t oracle_cap = 20;
    bool trust_answer_set = false;
    bool full_instantiation = false;
};

class AnswerSetError : public Error {
public:
    using Error::Error;
};

class QueryError : public Error {
public:
    using Error::Error;
};

struct Instance {
    Program program;
    GroundProgram ground;
    AtomSet answer_set;
    ThreeValued wf;
    AtomId query = 0;
};

/// Parses, validates and grounds; checks the answer set unless trusted.
Instance prepare(const RunConfig& config);

struct Explanation {
    AtomSet assumptions;
    Derivation derivation;
    ExplanationDag dag;
    ExplanationDag restricted;
};

std::vector<Explanation> explain_query(const Instance& instance, std::size_t count);

std::string render(const Instance& instance, const Explanation& explanation, OutputFormat format);

struct RunResult {
    /// 0 ok, 1 invalid program, 2 answer set rejected, 3 unknown query.
    int status = 0;
    std::string output;
    std::string message;
};

RunResult run(const RunConfig& config);

}  // namespace whyasp
