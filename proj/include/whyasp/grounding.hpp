#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "whyasp/ast.hpp"

namespace whyasp {

using AtomId = std::uint32_t;
using AtomSet = boost::dynamic_bitset<std::uint64_t>;

struct AggregateElement {
    AtomId atom = 0;
    std::int64_t weight = 0;
    std::vector<Term> tuple;
    /// Elements sharing (weight, tuple) count once in the sum.
    std::size_t key = 0;
};

struct GroundAggregate {
    std::string id;
    /// 1-based position of the aggregate in the program text.
    std::size_t number = 0;
    /// Global variables substituted; local variables remain.
    Aggregate pattern;
    std::vector<AggregateElement> elements;
    /// Weight of each distinct key.
    std::vector<std::int64_t> key_weights;

    std::string to_string() const { return whyasp::to_string(pattern); }
};

struct GroundRule {
    std::string id;
    std::size_t source_index = 0;
    std::vector<Term> bindings;
    bool choice = false;
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    std::vector<AtomId> head;
    std::vector<AtomId> pos;
    std::vector<AtomId> neg;
    /// Indices into GroundProgram::aggregates.
    std::vector<std::size_t> aggregates;

    bool is_constraint() const noexcept { return choice && head.empty(); }
};

struct GroundProgram {
    /// base(P), sorted by the atom order; AtomId indexes this vector.
    std::vector<Atom> atoms;
    std::vector<GroundRule> rules;
    std::vector<GroundAggregate> aggregates;

    std::vector<std::vector<std::size_t>> head_rules;
    std::vector<std::vector<std::size_t>> pos_rules;
    std::vector<std::vector<std::size_t>> neg_rules;
    std::vector<std::vector<std::size_t>> atom_aggregates;
    std::vector<std::vector<std::size_t>> aggregate_rules;

    std::size_t size() const noexcept { return atoms.size(); }
    std::optional<AtomId> find(const Atom& atom) const;
    AtomId id(const Atom& atom) const;
    std::optional<std::size_t> find_aggregate(const std::string& id) const;

    AtomSet empty_set() const { return AtomSet(atoms.size()); }
    AtomSet full_set() const { return ~AtomSet(atoms.size()); }
    /// Atoms outside the base are an error.
    AtomSet to_set(const std::vector<Atom>& atoms) const;
    std::vector<Atom> to_atoms(const AtomSet& set) const;

    std::string rule_text(const GroundRule& rule) const;
    /// One `id: rule` line per ground rule, in rule order.
    std::string dump() const;

    /// Rebuilds the occurrence indices from atoms/rules/aggregates.
    void build_index();

private:
    std::map<Atom, AtomId> index_;
    std::map<std::string, std::size_t> aggregate_index_;
};

struct GroundingOptions {
    std::size_t arith_depth = 64;
    /// Substitute global variables with every constant of the program and the
    /// seeds instead of matching positive bodies. Exponential; for tiny inputs.
    bool full = false;
};

/// Rules come out ordered by (source index, bindings).
GroundProgram instantiate(const Program& program, const std::vector<Atom>& seeds,
                          const GroundingOptions& options = {});

std::vector<Atom> herbrand_base(const GroundProgram& ground, const std::vector<Atom>& seeds);

struct AggregateInstance {
    Atom atom;
    std::int64_t weight = 0;
    std::vector<Term> tuple;
};

/// One entry per atom of `base` matching the condition, in base order.
std::vector<AggregateInstance> aggregate_instances(const Aggregate& pattern,
                                                   const std::vector<Atom>& base);

/// One normal rule per head atom in `interp`.
std::vector<GroundRule> expand(const GroundRule& rule, const AtomSet& interp);

/// Matches a pattern against a ground term, extending `sigma`.
bool match(const Term& pattern, const Term& ground, Substitution& sigma);
bool match(const Atom& pattern, const Atom& ground, Substitution& sigma);

}  // namespace whyasp
