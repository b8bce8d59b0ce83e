#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "whyasp/grounding.hpp"

namespace whyasp {

enum class Truth : std::uint8_t { f, t, u };

const char* to_string(Truth value) noexcept;

/// (L, U): atoms in L are true, atoms in U \ L undefined, the rest false.
struct ThreeValued {
    AtomSet lower;
    AtomSet upper;

    bool valid() const { return lower.size() == upper.size() && lower.is_subset_of(upper); }
    AtomSet undefined() const { return upper - lower; }

    friend bool operator==(const ThreeValued&, const ThreeValued&) = default;
};

/// a ⊑ b: everything true (false) in a is true (false) in b.
bool refines(const ThreeValued& a, const ThreeValued& b);

std::int64_t aggregate_sum(const GroundAggregate& agg, const AtomSet& interp);

bool satisfies(const AtomSet& interp, const GroundAggregate& agg);
bool satisfies_head(const AtomSet& interp, const GroundRule& rule);
bool satisfies_body(const GroundProgram& ground, const AtomSet& interp, const GroundRule& rule);
bool satisfies(const GroundProgram& ground, const AtomSet& interp, const GroundRule& rule);
bool satisfies(const GroundProgram& ground, const AtomSet& interp);

/// Normal rules expand(r, I) for every ground rule r with I |= B(r).
std::vector<GroundRule> reduct(const GroundProgram& ground, const AtomSet& interp);

/// Least model of the positive part of a set of normal rules.
AtomSet least_model(const GroundProgram& ground, const std::vector<GroundRule>& rules);

bool is_answer_set(const GroundProgram& ground, const AtomSet& candidate);

/// Subset-minimality checked by enumerating every proper subset; exponential.
bool is_answer_set_by_enumeration(const GroundProgram& ground, const AtomSet& candidate);

Truth eval_atom(AtomId atom, const ThreeValued& tv);
Truth eval_literal(AtomId atom, bool negated, const ThreeValued& tv);
Truth eval(const GroundAggregate& agg, const ThreeValued& tv);
Truth eval_head(const GroundRule& rule, const ThreeValued& tv);
Truth eval_body(const GroundProgram& ground, const GroundRule& rule, const ThreeValued& tv);
/// Truth of B(r) \ {atom} for a positive body atom.
Truth eval_body_except(const GroundProgram& ground, const GroundRule& rule, AtomId atom,
                       const ThreeValued& tv);

enum class ReasonKind : std::uint8_t {
    assumption,
    initial_well_founded,
    support,
    lack_of_support,
    required_to_falsify_body,
    choice_rule,
};

const char* to_string(ReasonKind kind) noexcept;

/// Reasons naming a rule carry its id (or an aggregate id for aggregate support).
struct Reason {
    ReasonKind kind = ReasonKind::assumption;
    std::string rule;

    std::string to_string() const;
    static Reason parse(const std::string& text);

    friend bool operator==(const Reason&, const Reason&) = default;
    friend auto operator<=>(const Reason&, const Reason&) = default;
};

inline constexpr std::size_t no_rule = static_cast<std::size_t>(-1);

struct Inference {
    AtomId atom = 0;
    ReasonKind kind = ReasonKind::support;
    /// Index into GroundProgram::rules; no_rule for lack_of_support.
    std::size_t rule = no_rule;

    friend bool operator==(const Inference&, const Inference&) = default;
    friend auto operator<=>(const Inference&, const Inference&) = default;
};

/// Every (atom, rule) with the atom undefined, in `answer_set`, in H(r) and
/// B(r) true. Sorted by atom, then rule.
std::vector<Inference> infer_true_by_support(const ThreeValued& tv, const GroundProgram& ground,
                                             const AtomSet& answer_set);

/// Every falsity inference (lack of support, constraint-like rule, choice
/// rule) for undefined atoms. Sorted by atom, then kind, then rule.
std::vector<Inference> infer_false(const ThreeValued& tv, const GroundProgram& ground);

/// Greatest unfounded set among the undefined atoms.
AtomSet find_unfounded_set(const ThreeValued& tv, const GroundProgram& ground);

/// All answer sets, ordered lexicographically by their sorted atom lists.
/// Only non-fact head atoms are guessed; `cap` bounds their number.
std::vector<AtomSet> oracle_answer_sets(const GroundProgram& ground, std::size_t cap = 20);

}  // namespace whyasp
