#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace whyasp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A term of the fragment: integer, symbolic constant, string, variable,
/// function (a tuple is a function with an empty name) or an integer
/// arithmetic expression.
class Term {
public:
    enum class Kind : std::uint8_t { integer, symbol, string, variable, function, arith };
    enum class ArithOp : char { add = '+', sub = '-', mul = '*' };

    Term() = default;

    static Term integer(std::int64_t value);
    static Term symbol(std::string name);
    static Term string(std::string value);
    static Term variable(std::string name);
    static Term function(std::string name, std::vector<Term> args);
    static Term tuple(std::vector<Term> args) { return function({}, std::move(args)); }
    static Term arith(ArithOp op, Term lhs, Term rhs);

    Kind kind() const noexcept { return kind_; }
    bool is_integer() const noexcept { return kind_ == Kind::integer; }
    bool is_variable() const noexcept { return kind_ == Kind::variable; }
    bool is_arith() const noexcept { return kind_ == Kind::arith; }
    bool is_tuple() const noexcept { return kind_ == Kind::function && name_.empty(); }

    std::int64_t int_value() const noexcept { return int_; }
    /// Symbol name, string contents, variable name or function name.
    const std::string& name() const noexcept { return name_; }
    const std::vector<Term>& args() const noexcept { return args_; }
    ArithOp op() const noexcept { return op_; }
    const Term& lhs() const { return args_.at(0); }
    const Term& rhs() const { return args_.at(1); }

    bool is_ground() const;
    bool has_arith() const;
    void collect_variables(std::vector<std::string>& out) const;

    /// Replaces mapped variables; unmapped variables stay in place.
    Term substitute(const std::map<std::string, Term>& sigma) const;

    /// Evaluates arithmetic sub-terms of a ground term. Returns nullopt when an
    /// operand of an arithmetic expression is not an integer.
    std::optional<Term> evaluate() const;

    std::string to_string() const;

    friend bool operator==(const Term& a, const Term& b);
    friend std::strong_ordering operator<=>(const Term& a, const Term& b);

private:
    Kind kind_ = Kind::integer;
    ArithOp op_ = ArithOp::add;
    std::int64_t int_ = 0;
    std::string name_;
    std::vector<Term> args_;
};

using Substitution = std::map<std::string, Term>;

enum class CmpOp : std::uint8_t { eq, ne, lt, le, gt, ge };

const char* to_string(CmpOp op) noexcept;

/// Compares two ground terms with the total term order.
bool compare(const Term& lhs, CmpOp op, const Term& rhs);
bool compare(std::int64_t lhs, CmpOp op, const Term& rhs);

/// Ground atoms, and atom patterns before grounding.
struct Atom {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const noexcept { return args.size(); }
    bool is_ground() const;
    Atom substitute(const Substitution& sigma) const;
    std::string to_string() const;

    friend bool operator==(const Atom&, const Atom&) = default;
    friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
};

std::string quote_string(const std::string& raw);

}  // namespace whyasp
