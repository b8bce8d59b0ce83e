#include "whyasp/parser.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <set>

namespace whyasp {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok {
    ident,
    variable,
    anonymous,
    integer,
    string,
    lparen,
    rparen,
    lbrace,
    rbrace,
    comma,
    semicolon,
    colon,
    dot,
    if_,
    not_,
    sum,
    plus,
    minus,
    star,
    cmp,
    eof,
};

struct Token {
    Tok kind = Tok::eof;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_blank();
            Token tok;
            tok.line = line_;
            tok.column = column_;
            if (pos_ >= text_.size()) {
                out.push_back(tok);
                return out;
            }
            lex_one(tok);
            out.push_back(std::move(tok));
        }
    }

private:
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_blank() {
        while (pos_ < text_.size()) {
            char c = peek();
            if (c == '%') {
                while (pos_ < text_.size() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& msg, const Token& at) const {
        throw ParseError(msg, at.line, at.column);
    }

    static bool is_word(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    void lex_one(Token& tok) {
        char c = peek();
        auto single = [&](Tok kind) {
            tok.kind = kind;
            tok.text = std::string(1, advance());
        };
        if (std::islower(static_cast<unsigned char>(c))) {
            while (is_word(peek())) tok.text += advance();
            tok.kind = tok.text == "not" ? Tok::not_ : Tok::ident;
            return;
        }
        if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            while (is_word(peek())) tok.text += advance();
            tok.kind = tok.text == "_" ? Tok::anonymous : Tok::variable;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (std::isdigit(static_cast<unsigned char>(peek()))) tok.text += advance();
            tok.kind = Tok::integer;
            return;
        }
        switch (c) {
            case '"': {
                advance();
                for (;;) {
                    if (pos_ >= text_.size() || peek() == '\n') fail("unterminated string", tok);
                    char d = advance();
                    if (d == '"') break;
                    if (d == '\\') {
                        char e = advance();
                        tok.text += e == 'n' ? '\n' : e;
                    } else {
                        tok.text += d;
                    }
                }
                tok.kind = Tok::string;
                return;
            }
            case '(': return single(Tok::lparen);
            case ')': return single(Tok::rparen);
            case '{': return single(Tok::lbrace);
            case '}': return single(Tok::rbrace);
            case ',': return single(Tok::comma);
            case ';': return single(Tok::semicolon);
            case '.': return single(Tok::dot);
            case '+': return single(Tok::plus);
            case '-': return single(Tok::minus);
            case '*': return single(Tok::star);
            case ':':
                advance();
                if (peek() == '-') {
                    advance();
                    tok.kind = Tok::if_;
                    tok.text = ":-";
                } else {
                    tok.kind = Tok::colon;
                    tok.text = ":";
                }
                return;
            case '#': {
                advance();
                std::string word;
                while (is_word(peek())) word += advance();
                if (word != "sum") fail("unsupported directive or aggregate '#" + word + "'", tok);
                tok.kind = Tok::sum;
                tok.text = "#sum";
                return;
            }
            case '=':
                advance();
                if (peek() == '=') advance();
                tok.kind = Tok::cmp;
                tok.text = "=";
                return;
            case '!':
                advance();
                if (peek() != '=') fail("expected '!='", tok);
                advance();
                tok.kind = Tok::cmp;
                tok.text = "!=";
                return;
            case '<':
            case '>':
                tok.text = std::string(1, advance());
                if (peek() == '=') tok.text += advance();
                tok.kind = Tok::cmp;
                return;
            default:
                fail(std::string("unexpected character '") + c + "'", tok);
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

CmpOp cmp_from(const std::string& text) {
    if (text == "=") return CmpOp::eq;
    if (text == "!=") return CmpOp::ne;
    if (text == "<") return CmpOp::lt;
    if (text == "<=") return CmpOp::le;
    if (text == ">") return CmpOp::gt;
    return CmpOp::ge;
}

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

    Program program() {
        Program prog;
        while (!at(Tok::eof)) {
            anon_counter_ = 0;
            Rule rule = statement();
            rule.source_index = prog.rules.size() + 1;
            prog.rules.push_back(std::move(rule));
        }
        add_consistency_constraints(prog);
        return prog;
    }

    std::vector<Atom> ground_atoms(bool allow_dots) {
        std::vector<Atom> out;
        while (!at(Tok::eof)) {
            const Token& start = cur();
            Atom a = atom_from(unary(), start);
            out.push_back(ground(std::move(a), start));
            if (allow_dots && at(Tok::dot)) next();
        }
        return out;
    }

    Atom single_atom() {
        const Token& start = cur();
        Atom a = atom_from(unary(), start);
        if (at(Tok::dot)) next();
        expect(Tok::eof, "end of input");
        return ground(std::move(a), start);
    }

    void seed_arities(const Program& program) {
        for (const auto& r : program.rules) {
            for (const auto* a : r.head_atoms()) arity_.emplace(a->predicate, a->arity());
            for (const auto& e : r.body) {
                if (const auto* l = std::get_if<Literal>(&e)) {
                    arity_.emplace(l->atom.predicate, l->atom.arity());
                } else if (const auto* g = std::get_if<Aggregate>(&e)) {
                    arity_.emplace(g->condition.predicate, g->condition.arity());
                }
            }
        }
    }

private:
    const Token& cur() const { return tokens_[pos_]; }
    bool at(Tok k) const { return cur().kind == k; }
    const Token& next() {
        const Token& t = tokens_[pos_];
        if (t.kind != Tok::eof) ++pos_;
        return t;
    }

    [[noreturn]] void fail(const std::string& msg, const Token& at) const {
        throw ParseError(msg, at.line, at.column);
    }

    [[noreturn]] void unexpected(const std::string& wanted) const {
        const Token& t = cur();
        std::string seen = t.kind == Tok::eof ? "end of input" : "'" + t.text + "'";
        fail("expected " + wanted + ", found " + seen, t);
    }

    const Token& expect(Tok k, const std::string& wanted) {
        if (!at(k)) unexpected(wanted);
        return next();
    }

    Rule statement() {
        Rule rule;
        if (at(Tok::if_)) {
            rule.head = Choice::falsum();
        } else {
            rule.head = head();
        }
        if (at(Tok::if_)) {
            next();
            if (!at(Tok::dot)) {
                rule.body.push_back(body_element());
                while (at(Tok::comma)) {
                    next();
                    rule.body.push_back(body_element());
                }
            }
        }
        expect(Tok::dot, "'.'");
        return rule;
    }

    Head head() {
        if (at(Tok::lbrace)) return choice(std::nullopt);
        const Token& start = cur();
        Term t = term();
        if (at(Tok::lbrace)) return choice(std::move(t));
        return atom_from(std::move(t), start);
    }

    Choice choice(std::optional<Term> lower) {
        expect(Tok::lbrace, "'{'");
        Choice c;
        if (!at(Tok::rbrace)) {
            for (;;) {
                const Token& start = cur();
                c.atoms.push_back(atom_from(term(), start));
                if (!at(Tok::semicolon)) break;
                next();
            }
        }
        expect(Tok::rbrace, "'}'");
        c.lower = lower ? std::move(*lower) : Term::integer(0);
        if (!at(Tok::if_) && !at(Tok::dot)) {
            c.upper = term();
        } else {
            c.upper = Term::integer(static_cast<std::int64_t>(c.atoms.size()));
        }
        return c;
    }

    BodyElement body_element() {
        if (at(Tok::not_)) {
            next();
            const Token& start = cur();
            return Literal{atom_from(term(), start), true};
        }
        if (at(Tok::sum)) return aggregate();
        const Token& start = cur();
        Term t = term();
        if (at(Tok::cmp)) {
            CmpOp op = cmp_from(next().text);
            return Comparison{std::move(t), op, term()};
        }
        return Literal{atom_from(std::move(t), start), false};
    }

    Aggregate aggregate() {
        expect(Tok::sum, "'#sum'");
        expect(Tok::lbrace, "'{'");
        Aggregate agg;
        agg.weight = term();
        while (at(Tok::comma)) {
            next();
            agg.tuple.push_back(term());
        }
        expect(Tok::colon, "':'");
        const Token& start = cur();
        agg.condition = atom_from(term(), start);
        expect(Tok::rbrace, "'}'");
        if (!at(Tok::cmp)) unexpected("comparison operator after aggregate");
        agg.op = cmp_from(next().text);
        agg.guard = term();
        return agg;
    }

    Term term() {
        Term lhs = product();
        while (at(Tok::plus) || at(Tok::minus)) {
            auto op = next().kind == Tok::plus ? Term::ArithOp::add : Term::ArithOp::sub;
            lhs = Term::arith(op, std::move(lhs), product());
        }
        return lhs;
    }

    Term product() {
        Term lhs = unary();
        while (at(Tok::star)) {
            next();
            lhs = Term::arith(Term::ArithOp::mul, std::move(lhs), unary());
        }
        return lhs;
    }

    Term unary() {
        if (!at(Tok::minus)) return primary();
        next();
        if (at(Tok::integer)) {
            const Token& t = next();
            return Term::integer(-to_int(t));
        }
        if (at(Tok::ident)) {
            // strong negation: -p or -f(...)
            Term inner = primary();
            if (inner.kind() == Term::Kind::symbol) return Term::symbol("-" + inner.name());
            return Term::function("-" + inner.name(), inner.args());
        }
        return Term::arith(Term::ArithOp::sub, Term::integer(0), unary());
    }

    static std::int64_t to_int(const Token& t) {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{}) throw ParseError("integer out of range", t.line, t.column);
        return v;
    }

    Term primary() {
        const Token& t = cur();
        switch (t.kind) {
            case Tok::integer: next(); return Term::integer(to_int(t));
            case Tok::variable: next(); return Term::variable(t.text);
            case Tok::anonymous: next(); return Term::variable("_A" + std::to_string(++anon_counter_));
            case Tok::string: next(); return Term::string(t.text);
            case Tok::ident: {
                next();
                if (!at(Tok::lparen)) return Term::symbol(t.text);
                next();
                auto args = term_list();
                expect(Tok::rparen, "')'");
                return Term::function(t.text, std::move(args));
            }
            case Tok::lparen: {
                next();
                if (at(Tok::rparen)) fail("empty tuple", t);
                auto args = term_list();
                expect(Tok::rparen, "')'");
                if (args.size() == 1) return std::move(args.front());
                return Term::tuple(std::move(args));
            }
            default:
                unexpected("term");
        }
    }

    std::vector<Term> term_list() {
        std::vector<Term> out;
        out.push_back(term());
        while (at(Tok::comma)) {
            next();
            out.push_back(term());
        }
        return out;
    }

    Atom atom_from(Term t, const Token& where) {
        Atom a;
        if (t.kind() == Term::Kind::symbol) {
            a.predicate = t.name();
        } else if (t.kind() == Term::Kind::function && !t.name().empty()) {
            a.predicate = t.name();
            a.args = t.args();
        } else {
            fail("expected an atom, found term '" + t.to_string() + "'", where);
        }
        auto [it, inserted] = arity_.emplace(a.predicate, a.arity());
        if (!inserted && it->second != a.arity()) {
            fail("predicate '" + a.predicate + "' used with arity " + std::to_string(a.arity()) +
                     " and " + std::to_string(it->second),
                 where);
        }
        if (a.predicate.front() == '-') negated_.emplace(a.predicate.substr(1), a.arity());
        return a;
    }

    Atom ground(Atom a, const Token& where) const {
        Atom out{a.predicate, {}};
        for (const auto& t : a.args) {
            auto v = t.evaluate();
            if (!v) fail("atom '" + a.to_string() + "' is not ground", where);
            out.args.push_back(std::move(*v));
        }
        return out;
    }

    void add_consistency_constraints(Program& prog) const {
        for (const auto& [name, arity] : negated_) {
            std::vector<Term> vars;
            for (std::size_t i = 1; i <= arity; ++i) vars.push_back(Term::variable("V" + std::to_string(i)));
            Rule r;
            r.head = Choice::falsum();
            r.body.push_back(Literal{Atom{name, vars}, false});
            r.body.push_back(Literal{Atom{"-" + name, vars}, false});
            r.source_index = prog.rules.size() + 1;
            r.implicit = true;
            prog.rules.push_back(std::move(r));
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t anon_counter_ = 0;
    std::map<std::string, std::size_t> arity_;
    std::set<std::pair<std::string, std::size_t>> negated_;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).program(); }

std::vector<Atom> parse_answer_set(std::string_view text, const Program& program) {
    Parser p(text);
    p.seed_arities(program);
    return p.ground_atoms(true);
}

Atom parse_ground_atom(std::string_view text) { return Parser(text).single_atom(); }

}  // namespace whyasp
