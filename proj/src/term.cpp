#include "whyasp/term.hpp"

#include <algorithm>
#include <limits>

namespace whyasp {

Term Term::integer(std::int64_t value) {
    Term t;
    t.kind_ = Kind::integer;
    t.int_ = value;
    return t;
}

Term Term::symbol(std::string name) {
    Term t;
    t.kind_ = Kind::symbol;
    t.name_ = std::move(name);
    return t;
}

Term Term::string(std::string value) {
    Term t;
    t.kind_ = Kind::string;
    t.name_ = std::move(value);
    return t;
}

Term Term::variable(std::string name) {
    Term t;
    t.kind_ = Kind::variable;
    t.name_ = std::move(name);
    return t;
}

Term Term::function(std::string name, std::vector<Term> args) {
    if (args.empty()) {
        throw std::invalid_argument("function term '" + name + "' needs at least one argument");
    }
    Term t;
    t.kind_ = Kind::function;
    t.name_ = std::move(name);
    t.args_ = std::move(args);
    return t;
}

Term Term::arith(ArithOp op, Term lhs, Term rhs) {
    Term t;
    t.kind_ = Kind::arith;
    t.op_ = op;
    t.args_.reserve(2);
    t.args_.push_back(std::move(lhs));
    t.args_.push_back(std::move(rhs));
    return t;
}

bool Term::is_ground() const {
    if (kind_ == Kind::variable) return false;
    return std::all_of(args_.begin(), args_.end(), [](const Term& a) { return a.is_ground(); });
}

bool Term::has_arith() const {
    if (kind_ == Kind::arith) return true;
    return std::any_of(args_.begin(), args_.end(), [](const Term& a) { return a.has_arith(); });
}

void Term::collect_variables(std::vector<std::string>& out) const {
    if (kind_ == Kind::variable) {
        if (std::find(out.begin(), out.end(), name_) == out.end()) out.push_back(name_);
        return;
    }
    for (const auto& a : args_) a.collect_variables(out);
}

Term Term::substitute(const Substitution& sigma) const {
    if (kind_ == Kind::variable) {
        auto it = sigma.find(name_);
        return it == sigma.end() ? *this : it->second;
    }
    if (args_.empty()) return *this;
    Term t = *this;
    for (auto& a : t.args_) a = a.substitute(sigma);
    return t;
}

namespace {

bool checked_apply(Term::ArithOp op, std::int64_t a, std::int64_t b, std::int64_t& out) {
    switch (op) {
        case Term::ArithOp::add: return !__builtin_add_overflow(a, b, &out);
        case Term::ArithOp::sub: return !__builtin_sub_overflow(a, b, &out);
        case Term::ArithOp::mul: return !__builtin_mul_overflow(a, b, &out);
    }
    return false;
}

}  // namespace

std::optional<Term> Term::evaluate() const {
    switch (kind_) {
        case Kind::integer:
        case Kind::symbol:
        case Kind::string:
            return *this;
        case Kind::variable:
            return std::nullopt;
        case Kind::function: {
            Term t = *this;
            for (auto& a : t.args_) {
                auto v = a.evaluate();
                if (!v) return std::nullopt;
                a = std::move(*v);
            }
            return t;
        }
        case Kind::arith: {
            auto l = args_[0].evaluate();
            auto r = args_[1].evaluate();
            if (!l || !r || !l->is_integer() || !r->is_integer()) return std::nullopt;
            std::int64_t out = 0;
            if (!checked_apply(op_, l->int_value(), r->int_value(), out)) {
                throw Error("integer overflow while evaluating " + to_string());
            }
            return integer(out);
        }
    }
    return std::nullopt;
}

std::string quote_string(const std::string& raw) {
    std::string out = "\"";
    for (char c : raw) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

std::string Term::to_string() const {
    switch (kind_) {
        case Kind::integer: return std::to_string(int_);
        case Kind::symbol:
        case Kind::variable: return name_;
        case Kind::string: return quote_string(name_);
        case Kind::function: {
            std::string out = name_ + "(";
            for (std::size_t i = 0; i < args_.size(); ++i) {
                if (i) out += ',';
                out += args_[i].to_string();
            }
            return out + ")";
        }
        case Kind::arith: {
            auto side = [](const Term& t) {
                return t.is_arith() ? "(" + t.to_string() + ")" : t.to_string();
            };
            return side(args_[0]) + static_cast<char>(op_) + side(args_[1]);
        }
    }
    return {};
}

bool operator==(const Term& a, const Term& b) {
    return a.kind_ == b.kind_ && a.int_ == b.int_ && a.op_ == b.op_ && a.name_ == b.name_ &&
           a.args_ == b.args_;
}

namespace {

// integers < symbols and functions < strings < variables < arithmetic
int kind_rank(Term::Kind k) {
    switch (k) {
        case Term::Kind::integer: return 0;
        case Term::Kind::symbol:
        case Term::Kind::function: return 1;
        case Term::Kind::string: return 2;
        case Term::Kind::variable: return 3;
        case Term::Kind::arith: return 4;
    }
    return 5;
}

}  // namespace

std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (auto c = kind_rank(a.kind_) <=> kind_rank(b.kind_); c != 0) return c;
    switch (a.kind_) {
        case Term::Kind::integer:
            return a.int_ <=> b.int_;
        case Term::Kind::symbol:
        case Term::Kind::function:
            if (auto c = a.name_ <=> b.name_; c != 0) return c;
            if (auto c = a.args_.size() <=> b.args_.size(); c != 0) return c;
            return std::lexicographical_compare_three_way(a.args_.begin(), a.args_.end(),
                                                          b.args_.begin(), b.args_.end());
        case Term::Kind::string:
        case Term::Kind::variable:
            return a.name_ <=> b.name_;
        case Term::Kind::arith:
            if (auto c = a.op_ <=> b.op_; c != 0) return c;
            return std::lexicographical_compare_three_way(a.args_.begin(), a.args_.end(),
                                                          b.args_.begin(), b.args_.end());
    }
    return std::strong_ordering::equal;
}

const char* to_string(CmpOp op) noexcept {
    switch (op) {
        case CmpOp::eq: return "=";
        case CmpOp::ne: return "!=";
        case CmpOp::lt: return "<";
        case CmpOp::le: return "<=";
        case CmpOp::gt: return ">";
        case CmpOp::ge: return ">=";
    }
    return "?";
}

namespace {

bool holds(std::strong_ordering c, CmpOp op) {
    switch (op) {
        case CmpOp::eq: return c == 0;
        case CmpOp::ne: return c != 0;
        case CmpOp::lt: return c < 0;
        case CmpOp::le: return c <= 0;
        case CmpOp::gt: return c > 0;
        case CmpOp::ge: return c >= 0;
    }
    return false;
}

}  // namespace

bool compare(const Term& lhs, CmpOp op, const Term& rhs) { return holds(lhs <=> rhs, op); }

bool compare(std::int64_t lhs, CmpOp op, const Term& rhs) {
    if (rhs.is_integer()) return holds(lhs <=> rhs.int_value(), op);
    return holds(Term::integer(lhs) <=> rhs, op);
}

bool Atom::is_ground() const {
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_ground(); });
}

Atom Atom::substitute(const Substitution& sigma) const {
    Atom out{predicate, {}};
    out.args.reserve(args.size());
    for (const auto& a : args) out.args.push_back(a.substitute(sigma));
    return out;
}

std::string Atom::to_string() const {
    if (args.empty()) return predicate;
    std::string out = predicate + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += args[i].to_string();
    }
    return out + ")";
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    if (auto c = a.predicate <=> b.predicate; c != 0) return c;
    if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(),
                                                  b.args.end());
}

}  // namespace whyasp
