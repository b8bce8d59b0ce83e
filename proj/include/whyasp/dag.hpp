#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "whyasp/explanation.hpp"

namespace whyasp {

struct DagVertex {
    /// Atom text or aggregate id.
    std::string id;
    bool aggregate = false;
    Truth truth = Truth::f;
    Reason reason;
    std::size_t index = 0;

    /// `not <id>` for false vertices.
    std::string label() const;

    friend bool operator==(const DagVertex&, const DagVertex&) = default;
};

/// Vertices sorted by (index, id); links sorted by source then target in the
/// same order.
struct ExplanationDag {
    std::vector<DagVertex> vertices;
    std::vector<std::pair<std::string, std::string>> links;

    const DagVertex* find(const std::string& id) const;
    std::vector<std::string> successors(const std::string& id) const;
    void normalize();

    friend bool operator==(const ExplanationDag&, const ExplanationDag&) = default;
};

ExplanationDag build_dag(const Derivation& derivation, const GroundProgram& ground, const AtomSet& answer_set);

/// Induced subgraph on the vertices reachable from `root`.
ExplanationDag restrict_reachable(const ExplanationDag& dag, const std::string& root);

/// nullopt when acyclic, otherwise a closed walk [v, ..., v].
std::optional<std::vector<std::string>> check_acyclic(const ExplanationDag& dag);

std::string to_dot(const ExplanationDag& dag);
std::string to_json(const ExplanationDag& dag);
ExplanationDag from_json(const std::string& text);

}  // namespace whyasp
