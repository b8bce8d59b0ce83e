#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "whyasp/semantics.hpp"

namespace whyasp {

/// Fixpoint from (∅, base) of support (restricted to the answer set) and
/// greatest-unfounded-set removal.
ThreeValued well_founded_derivation(const GroundProgram& ground, const AtomSet& answer_set);

/// The operator D: one round of support and falsity inferences.
ThreeValued explaining_step(const ThreeValued& tv, const GroundProgram& ground, const AtomSet& answer_set);

struct DerivationRecord {
    /// 0 for records holding before the first step, then 1, 2, ...
    std::size_t index = 0;
    /// Application of D that decided the subject (0 for index 0).
    std::size_t step = 0;
    bool aggregate = false;
    /// AtomId, or index into GroundProgram::aggregates.
    std::size_t subject = 0;
    std::string text;
    Truth truth = Truth::f;
    Reason reason;

    friend bool operator==(const DerivationRecord&, const DerivationRecord&) = default;
};

struct Derivation {
    std::vector<DerivationRecord> initial;
    std::vector<DerivationRecord> records;
    ThreeValued result;
    std::size_t steps = 0;

    /// Initial records first, then records in index order.
    std::vector<DerivationRecord> all() const;
    const DerivationRecord* find(const std::string& text) const;
};

/// Iterates D from `start` to its fixpoint. Aggregates are recorded in the
/// first step after which they are no longer undefined, so aggregates decided
/// in `start` belong to step 1 and precede its atoms. Within a step: support,
/// then falsities, then aggregates.
Derivation explaining_derivation(const ThreeValued& start, const GroundProgram& ground,
                                 const AtomSet& answer_set);

/// Explaining derivation from (∅, wf₂ \ assumptions), with wf-false atoms
/// (initial_well_founded) and the assumptions recorded at index 0.
Derivation explain(const GroundProgram& ground, const AtomSet& answer_set, const ThreeValued& wf,
                   const AtomSet& assumptions);

bool is_assumption_set(const AtomSet& assumptions, const GroundProgram& ground, const AtomSet& answer_set,
                       const ThreeValued& wf);

struct AssumptionCost {
    std::size_t query = 0;
    std::size_t size = 0;

    friend bool operator==(const AssumptionCost&, const AssumptionCost&) = default;
    friend auto operator<=>(const AssumptionCost&, const AssumptionCost&) = default;
};

AssumptionCost assumption_cost(const AtomSet& assumptions, AtomId query);

/// Atoms false in A and not false in wf: the only atoms worth assuming.
AtomSet assumption_candidates(const GroundProgram& ground, const AtomSet& answer_set, const ThreeValued& wf);

/// Optimal-cost assumption sets in lexicographic order, at most `limit`.
std::vector<AtomSet> enumerate_assumption_sets(const GroundProgram& ground, const AtomSet& answer_set,
                                               AtomId query, const ThreeValued& wf, std::size_t limit);

/// Lexicographically least optimal assumption set.
AtomSet minimal_assumption_set(const GroundProgram& ground, const AtomSet& answer_set, AtomId query,
                               const ThreeValued& wf);

/// `explained_by(<index>, <subject>, <reason>).` lines; when `keep` is given
/// only subjects listed there are printed.
std::string trace_text(const Derivation& derivation, const std::vector<std::string>* keep = nullptr);

}  // namespace whyasp
