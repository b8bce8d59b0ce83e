#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "whyasp/term.hpp"

namespace whyasp {

struct Literal {
    Atom atom;
    bool negated = false;

    friend bool operator==(const Literal&, const Literal&) = default;
};

/// Grounding-time builtin; never part of B(r).
struct Comparison {
    Term left;
    CmpOp op = CmpOp::eq;
    Term right;

    friend bool operator==(const Comparison&, const Comparison&) = default;
};

/// sum{weight, tuple... : condition} op guard
struct Aggregate {
    Term weight;
    std::vector<Term> tuple;
    Atom condition;
    CmpOp op = CmpOp::eq;
    Term guard;

    friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

/// lower <= {atoms} <= upper. A constraint head is the choice 1 <= {} <= 1.
struct Choice {
    Term lower;
    Term upper;
    std::vector<Atom> atoms;

    static Choice falsum() { return Choice{Term::integer(1), Term::integer(1), {}}; }
    bool is_falsum() const;

    friend bool operator==(const Choice&, const Choice&) = default;
};

using Head = std::variant<Atom, Choice>;
using BodyElement = std::variant<Literal, Aggregate, Comparison>;

struct Rule {
    Head head;
    std::vector<BodyElement> body;
    /// 1-based position in the source text; rule ids are r<source_index>.
    std::size_t source_index = 0;
    /// Consistency constraint added for a strongly negated predicate.
    bool implicit = false;

    bool is_constraint() const;
    bool is_fact() const;

    std::vector<const Atom*> positive_body() const;
    std::vector<const Atom*> negative_body() const;
    std::vector<const Aggregate*> aggregates() const;
    std::vector<const Comparison*> comparisons() const;
    std::vector<const Atom*> head_atoms() const;

    friend bool operator==(const Rule&, const Rule&) = default;
};

struct Program {
    std::vector<Rule> rules;

    friend bool operator==(const Program&, const Program&) = default;
};

std::string to_string(const Literal& lit);
std::string to_string(const Comparison& cmp);
std::string to_string(const Aggregate& agg);
std::string to_string(const Choice& choice);
std::string to_string(const Rule& rule);

/// Canonical program text; implicit rules are omitted since the parser
/// re-creates them.
std::string render(const Program& program);

}  // namespace whyasp
