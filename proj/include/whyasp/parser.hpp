#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "whyasp/ast.hpp"

namespace whyasp {

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Parses program text. Rules get source indices 1, 2, ... in textual order;
/// every strongly negated predicate `-p/n` adds one implicit rule
/// `:- p(V1,...,Vn), -p(V1,...,Vn).` after the textual rules.
Program parse_program(std::string_view text);

/// Parses whitespace separated ground atoms (an optional trailing `.` per atom
/// is accepted). Arithmetic is evaluated. Predicates unknown to `program` are
/// accepted; a known predicate used with another arity is an error.
std::vector<Atom> parse_answer_set(std::string_view text, const Program& program);

/// Parses a single ground atom such as a query.
Atom parse_ground_atom(std::string_view text);

}  // namespace whyasp
