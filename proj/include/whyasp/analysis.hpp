#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "whyasp/ast.hpp"

namespace whyasp {

/// Variable classification of a single rule.
///
/// A variable is global when it occurs in a positive body literal outside of
/// arithmetic, or when an `=` comparison binds it from already global
/// variables. Variables of an aggregate condition that are not global are
/// local to that aggregate. Everything else is unsafe.
struct SafetyReport {
    std::size_t source_index = 0;
    std::string rule_text;
    std::vector<std::string> global;
    std::vector<std::string> local;
    std::vector<std::string> unsafe;

    bool ok() const noexcept { return unsafe.empty(); }
    std::string message() const;
};

SafetyReport check_safety(const Rule& rule);

/// Global variables in order of first occurrence in the rule text.
std::vector<std::string> global_variables(const Rule& rule);

/// Predicate dependency graph; vertices are labelled `name/arity`.
struct DependencyGraph {
    std::set<std::string> vertices;
    /// (head predicate, body predicate) -> true when the dependency comes from
    /// an aggregate condition.
    std::map<std::pair<std::string, std::string>, bool> edges;

    bool has_edge(const std::string& from, const std::string& to) const;
    bool is_aggregate_edge(const std::string& from, const std::string& to) const;
};

DependencyGraph dependency_graph(const Program& program);

struct StratificationReport {
    /// Empty when no cycle passes through an aggregate edge; otherwise a closed
    /// walk [p, q, ..., p] whose first edge is an aggregate edge.
    std::vector<std::string> cycle;

    bool ok() const noexcept { return cycle.empty(); }
    std::string message() const;
};

StratificationReport check_stratification(const Program& program);

class SafetyError : public Error {
public:
    explicit SafetyError(std::vector<SafetyReport> reports);
    const std::vector<SafetyReport>& reports() const noexcept { return reports_; }

private:
    std::vector<SafetyReport> reports_;
};

class StratificationError : public Error {
public:
    explicit StratificationError(StratificationReport report);
    const StratificationReport& report() const noexcept { return report_; }

private:
    StratificationReport report_;
};

/// Throws SafetyError or StratificationError.
void validate_program(const Program& program);

std::string predicate_label(const Atom& atom);

}  // namespace whyasp
