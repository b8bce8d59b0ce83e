#include "whyasp/ast.hpp"

namespace whyasp {

bool Choice::is_falsum() const {
    return atoms.empty() && lower == Term::integer(1) && upper == Term::integer(1);
}

bool Rule::is_constraint() const {
    const auto* c = std::get_if<Choice>(&head);
    return c != nullptr && c->is_falsum();
}

bool Rule::is_fact() const { return body.empty() && std::holds_alternative<Atom>(head); }

std::vector<const Atom*> Rule::positive_body() const {
    std::vector<const Atom*> out;
    for (const auto& e : body) {
        if (const auto* l = std::get_if<Literal>(&e); l && !l->negated) out.push_back(&l->atom);
    }
    return out;
}

std::vector<const Atom*> Rule::negative_body() const {
    std::vector<const Atom*> out;
    for (const auto& e : body) {
        if (const auto* l = std::get_if<Literal>(&e); l && l->negated) out.push_back(&l->atom);
    }
    return out;
}

std::vector<const Aggregate*> Rule::aggregates() const {
    std::vector<const Aggregate*> out;
    for (const auto& e : body) {
        if (const auto* a = std::get_if<Aggregate>(&e)) out.push_back(a);
    }
    return out;
}

std::vector<const Comparison*> Rule::comparisons() const {
    std::vector<const Comparison*> out;
    for (const auto& e : body) {
        if (const auto* c = std::get_if<Comparison>(&e)) out.push_back(c);
    }
    return out;
}

std::vector<const Atom*> Rule::head_atoms() const {
    std::vector<const Atom*> out;
    if (const auto* a = std::get_if<Atom>(&head)) {
        out.push_back(a);
    } else {
        for (const auto& atom : std::get<Choice>(head).atoms) out.push_back(&atom);
    }
    return out;
}

std::string to_string(const Literal& lit) {
    return (lit.negated ? "not " : "") + lit.atom.to_string();
}

std::string to_string(const Comparison& cmp) {
    return cmp.left.to_string() + to_string(cmp.op) + cmp.right.to_string();
}

std::string to_string(const Aggregate& agg) {
    std::string out = "#sum{" + agg.weight.to_string();
    for (const auto& t : agg.tuple) out += "," + t.to_string();
    out += ":" + agg.condition.to_string() + "}";
    out += to_string(agg.op);
    return out + agg.guard.to_string();
}

std::string to_string(const Choice& choice) {
    std::string out = choice.lower.to_string() + "{";
    for (std::size_t i = 0; i < choice.atoms.size(); ++i) {
        if (i) out += ";";
        out += choice.atoms[i].to_string();
    }
    return out + "}" + choice.upper.to_string();
}

std::string to_string(const Rule& rule) {
    std::string out;
    if (const auto* a = std::get_if<Atom>(&rule.head)) {
        out = a->to_string();
    } else if (!rule.is_constraint()) {
        out = to_string(std::get<Choice>(rule.head));
    }
    if (!rule.body.empty() || rule.is_constraint()) {
        out += out.empty() ? ":- " : " :- ";
        for (std::size_t i = 0; i < rule.body.size(); ++i) {
            if (i) out += ", ";
            std::visit([&out](const auto& e) { out += to_string(e); }, rule.body[i]);
        }
    }
    return out + ".";
}

std::string render(const Program& program) {
    std::string out;
    for (const auto& r : program.rules) {
        if (r.implicit) continue;
        out += to_string(r);
        out += '\n';
    }
    return out;
}

}  // namespace whyasp
