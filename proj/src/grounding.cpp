#include "whyasp/grounding.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <utility>
#include <variant>

#include "whyasp/analysis.hpp"

namespace whyasp {

bool match(const Term& pattern, const Term& ground, Substitution& sigma) {
    switch (pattern.kind()) {
        case Term::Kind::variable: {
            auto it = sigma.find(pattern.name());
            if (it != sigma.end()) return it->second == ground;
            sigma.emplace(pattern.name(), ground);
            return true;
        }
        case Term::Kind::function: {
            if (ground.kind() != Term::Kind::function || ground.name() != pattern.name() ||
                ground.args().size() != pattern.args().size()) {
                return false;
            }
            for (std::size_t i = 0; i < pattern.args().size(); ++i) {
                if (!match(pattern.args()[i], ground.args()[i], sigma)) return false;
            }
            return true;
        }
        case Term::Kind::arith: {
            auto t = pattern.substitute(sigma);
            if (!t.is_ground()) return false;
            auto v = t.evaluate();
            return v && *v == ground;
        }
        default:
            return pattern == ground;
    }
}

bool match(const Atom& pattern, const Atom& ground, Substitution& sigma) {
    if (pattern.predicate != ground.predicate || pattern.arity() != ground.arity()) return false;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        if (!match(pattern.args[i], ground.args[i], sigma)) return false;
    }
    return true;
}

std::optional<AtomId> GroundProgram::find(const Atom& atom) const {
    auto it = index_.find(atom);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

AtomId GroundProgram::id(const Atom& atom) const {
    auto id = find(atom);
    if (!id) throw Error("atom not in base: " + atom.to_string());
    return *id;
}

std::optional<std::size_t> GroundProgram::find_aggregate(const std::string& id) const {
    auto it = aggregate_index_.find(id);
    if (it == aggregate_index_.end()) return std::nullopt;
    return it->second;
}

AtomSet GroundProgram::to_set(const std::vector<Atom>& list) const {
    AtomSet out(atoms.size());
    for (const auto& a : list) out.set(id(a));
    return out;
}

std::vector<Atom> GroundProgram::to_atoms(const AtomSet& set) const {
    std::vector<Atom> out;
    for (auto i = set.find_first(); i != AtomSet::npos; i = set.find_next(i)) out.push_back(atoms[i]);
    return out;
}

std::string GroundProgram::rule_text(const GroundRule& rule) const {
    std::string out;
    if (!rule.choice) {
        out = atoms[rule.head.front()].to_string();
    } else if (!rule.is_constraint()) {
        out = std::to_string(rule.lower) + "{";
        for (std::size_t i = 0; i < rule.head.size(); ++i) {
            if (i) out += ";";
            out += atoms[rule.head[i]].to_string();
        }
        out += "}" + std::to_string(rule.upper);
    }
    std::vector<std::string> body;
    for (auto a : rule.pos) body.push_back(atoms[a].to_string());
    for (auto a : rule.neg) body.push_back("not " + atoms[a].to_string());
    for (auto g : rule.aggregates) body.push_back(aggregates[g].to_string());
    if (!body.empty() || rule.is_constraint()) {
        out += out.empty() ? ":- " : " :- ";
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (i) out += ", ";
            out += body[i];
        }
    }
    return out + ".";
}

std::string GroundProgram::dump() const {
    std::string out;
    for (const auto& r : rules) out += r.id + ": " + rule_text(r) + "\n";
    return out;
}

void GroundProgram::build_index() {
    index_.clear();
    aggregate_index_.clear();
    for (AtomId i = 0; i < atoms.size(); ++i) index_.emplace(atoms[i], i);
    for (std::size_t i = 0; i < aggregates.size(); ++i) aggregate_index_.emplace(aggregates[i].id, i);
    const auto n = atoms.size();
    head_rules.assign(n, {});
    pos_rules.assign(n, {});
    neg_rules.assign(n, {});
    atom_aggregates.assign(n, {});
    aggregate_rules.assign(aggregates.size(), {});
    for (std::size_t r = 0; r < rules.size(); ++r) {
        for (auto a : rules[r].head) head_rules[a].push_back(r);
        for (auto a : rules[r].pos) pos_rules[a].push_back(r);
        for (auto a : rules[r].neg) neg_rules[a].push_back(r);
        for (auto g : rules[r].aggregates) aggregate_rules[g].push_back(r);
    }
    for (std::size_t g = 0; g < aggregates.size(); ++g) {
        for (const auto& e : aggregates[g].elements) {
            auto& v = atom_aggregates[e.atom];
            if (v.empty() || v.back() != g) v.push_back(g);
        }
    }
}

std::vector<AggregateInstance> aggregate_instances(const Aggregate& pattern,
                                                   const std::vector<Atom>& base) {
    std::vector<AggregateInstance> out;
    for (const auto& atom : base) {
        Substitution sigma;
        if (!match(pattern.condition, atom, sigma)) continue;
        auto weight = pattern.weight.substitute(sigma).evaluate();
        if (!weight || !weight->is_integer()) {
            throw Error("aggregate weight is not an integer: " + pattern.weight.substitute(sigma).to_string());
        }
        AggregateInstance inst{atom, weight->int_value(), {}};
        bool ok = true;
        for (const auto& t : pattern.tuple) {
            auto v = t.substitute(sigma).evaluate();
            if (!v) {
                ok = false;
                break;
            }
            inst.tuple.push_back(std::move(*v));
        }
        if (ok) out.push_back(std::move(inst));
    }
    return out;
}

std::vector<GroundRule> expand(const GroundRule& rule, const AtomSet& interp) {
    std::vector<GroundRule> out;
    for (auto h : rule.head) {
        if (!interp.test(h)) continue;
        GroundRule r = rule;
        r.choice = false;
        r.lower = r.upper = 0;
        r.head = {h};
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

std::string rule_id(std::size_t index, const std::vector<Term>& bindings, const char* prefix = "r") {
    std::string out = prefix + std::to_string(index);
    if (bindings.empty()) return out;
    out += "(";
    for (std::size_t i = 0; i < bindings.size(); ++i) {
        if (i) out += ",";
        out += bindings[i].to_string();
    }
    return out + ")";
}

void arith_variables(const Term& t, bool inside, std::vector<std::string>& out) {
    if (t.is_variable()) {
        if (inside && std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
        return;
    }
    for (const auto& a : t.args()) arith_variables(a, inside || t.is_arith(), out);
}

void binding_positions(const Term& t, std::vector<std::string>& out) {
    if (t.is_variable()) {
        if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    } else if (t.kind() == Term::Kind::function) {
        for (const auto& a : t.args()) binding_positions(a, out);
    }
}

void collect_constants(const Term& t, std::set<Term>& out) {
    switch (t.kind()) {
        case Term::Kind::integer:
        case Term::Kind::symbol:
        case Term::Kind::string:
            out.insert(t);
            break;
        case Term::Kind::variable:
            break;
        default:
            for (const auto& a : t.args()) collect_constants(a, out);
    }
}

bool bound(const std::vector<std::string>& vars, const Substitution& sigma) {
    return std::all_of(vars.begin(), vars.end(), [&](const auto& v) { return sigma.count(v) != 0; });
}

// Evaluates ground arithmetic sub-terms; nullopt when such an evaluation fails.
std::optional<Term> partial_eval(const Term& t) {
    if (t.is_ground()) return t.evaluate();
    if (t.kind() != Term::Kind::function) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) {
        auto v = partial_eval(a);
        if (!v) return std::nullopt;
        args.push_back(std::move(*v));
    }
    return Term::function(t.name(), std::move(args));
}

struct Draft {
    std::size_t rule_pos = 0;
    std::size_t source_index = 0;
    std::vector<Term> bindings;
    bool choice = false;
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    std::vector<Atom> head;
    std::vector<Atom> pos;
    std::vector<Atom> neg;
    std::vector<std::pair<std::size_t, Aggregate>> aggregates;
};

std::optional<Atom> ground_atom(const Atom& pattern, const Substitution& sigma, const Rule& rule) {
    Atom a = pattern.substitute(sigma);
    if (!a.is_ground()) throw Error("non-ground atom " + a.to_string() + " in rule " + to_string(rule));
    for (auto& t : a.args) {
        auto v = t.evaluate();
        if (!v) return std::nullopt;
        t = std::move(*v);
    }
    return a;
}

std::optional<Term> ground_term(const Term& t, const Substitution& sigma, const Rule& rule) {
    auto s = t.substitute(sigma);
    if (!s.is_ground()) throw Error("non-ground term " + s.to_string() + " in rule " + to_string(rule));
    return s.evaluate();
}

class Grounder {
public:
    Grounder(const Program& program, const std::vector<Atom>& seeds, const GroundingOptions& options)
        : program_(program), seeds_(seeds), options_(options) {
        std::size_t k = 0;
        for (const auto& r : program.rules) {
            std::vector<std::size_t> numbers;
            for (std::size_t i = 0; i < r.aggregates().size(); ++i) numbers.push_back(++k);
            aggregate_numbers_.push_back(std::move(numbers));
        }
    }

    GroundProgram run() {
        for (const auto& a : seeds_) {
            if (!a.is_ground()) throw Error("seed atom is not ground: " + a.to_string());
            add_atom(a, 0);
        }
        for (const auto& r : program_.rules) {
            if (!r.is_fact()) continue;
            std::vector<std::string> vars;
            for (const auto& t : std::get<Atom>(r.head).args) t.collect_variables(vars);
            if (!vars.empty()) continue;
            if (auto a = ground_atom(std::get<Atom>(r.head), {}, r)) add_atom(*a, 0);
        }
        if (options_.full) collect_full_constants();

        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < program_.rules.size(); ++i) {
                if (ground_rule(i)) changed = true;
            }
            if (options_.full) break;
        }
        return finish();
    }

private:
    using Pending = std::variant<const Atom*, const Comparison*>;

    struct Binding {
        Substitution sigma;
        std::size_t depth = 0;
    };

    bool add_atom(const Atom& a, std::size_t depth) {
        auto [it, inserted] = depth_.emplace(a, depth);
        if (inserted) by_predicate_[predicate_label(a)].push_back(a);
        return inserted;
    }

    void collect_full_constants() {
        std::set<Term> constants;
        for (const auto& r : program_.rules) {
            for (const auto* h : r.head_atoms()) {
                for (const auto& t : h->args) collect_constants(t, constants);
            }
            for (const auto& e : r.body) {
                if (const auto* l = std::get_if<Literal>(&e)) {
                    for (const auto& t : l->atom.args) collect_constants(t, constants);
                } else if (const auto* g = std::get_if<Aggregate>(&e)) {
                    for (const auto& t : g->condition.args) collect_constants(t, constants);
                }
            }
        }
        for (const auto& a : seeds_) {
            for (const auto& t : a.args) collect_constants(t, constants);
        }
        constants_.assign(constants.begin(), constants.end());
    }

    bool ground_rule(std::size_t pos) {
        const Rule& rule = program_.rules[pos];
        std::vector<std::string> all_vars;
        for (const auto* a : rule.head_atoms()) {
            for (const auto& t : a->args) t.collect_variables(all_vars);
        }
        for (const auto* a : rule.positive_body()) {
            for (const auto& t : a->args) t.collect_variables(all_vars);
        }
        for (const auto* a : rule.negative_body()) {
            for (const auto& t : a->args) t.collect_variables(all_vars);
        }
        for (const auto* c : rule.comparisons()) {
            c->left.collect_variables(all_vars);
            c->right.collect_variables(all_vars);
        }
        const bool accept = options_.full || all_vars.empty();

        std::vector<Pending> pending;
        for (const auto* c : rule.comparisons()) pending.emplace_back(c);
        for (const auto* a : rule.positive_body()) pending.emplace_back(a);

        const auto globals = global_variables(rule);
        bool changed = false;
        auto emit = [&](const Binding& b) {
            std::vector<Term> key;
            for (const auto& v : globals) key.push_back(b.sigma.at(v));
            if (!produced_.emplace(pos, key).second) return;
            auto draft = make_draft(pos, b.sigma, std::move(key));
            if (!draft) return;
            const auto* choice = std::get_if<Choice>(&rule.head);
            const std::vector<Atom> head_patterns = choice ? choice->atoms
                                                           : std::vector<Atom>{std::get<Atom>(rule.head)};
            for (std::size_t i = 0; i < draft->head.size(); ++i) {
                bool arith = std::any_of(head_patterns[i].args.begin(), head_patterns[i].args.end(),
                                         [](const Term& t) { return t.has_arith(); });
                std::size_t depth = b.depth + (arith ? 1 : 0);
                if (depth > options_.arith_depth) {
                    throw Error("arithmetic depth cap " + std::to_string(options_.arith_depth) +
                                " exceeded at " + draft->head[i].to_string());
                }
                if (add_atom(draft->head[i], depth)) changed = true;
            }
            drafts_.push_back(std::move(*draft));
        };

        if (options_.full) {
            std::vector<std::string> vars;
            for (const auto* a : rule.positive_body()) {
                for (const auto& t : a->args) binding_positions(t, vars);
            }
            std::vector<std::size_t> odometer(vars.size(), 0);
            if (!vars.empty() && constants_.empty()) return false;
            while (true) {
                Binding b;
                for (std::size_t i = 0; i < vars.size(); ++i) b.sigma.emplace(vars[i], constants_[odometer[i]]);
                join(pending, std::move(b), accept, emit);
                std::size_t i = 0;
                while (i < odometer.size() && ++odometer[i] == constants_.size()) odometer[i++] = 0;
                if (i == odometer.size()) break;
            }
        } else {
            join(pending, Binding{}, accept, emit);
        }
        return changed;
    }

    void join(std::vector<Pending> pending, Binding b, bool accept,
              const std::function<void(const Binding&)>& emit) {
        if (pending.empty()) {
            emit(b);
            return;
        }
        // comparisons first: they only filter or bind
        for (std::size_t i = 0; i < pending.size(); ++i) {
            const auto* c = std::get_if<const Comparison*>(&pending[i]);
            if (!c) continue;
            auto lhs = (*c)->left.substitute(b.sigma);
            auto rhs = (*c)->right.substitute(b.sigma);
            auto rest = pending;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            if (lhs.is_ground() && rhs.is_ground()) {
                auto l = lhs.evaluate();
                auto r = rhs.evaluate();
                if (!l || !r || !compare(*l, (*c)->op, *r)) return;
                join(std::move(rest), std::move(b), accept, emit);
                return;
            }
            if ((*c)->op != CmpOp::eq) continue;
            if (lhs.is_variable() && rhs.is_ground()) {
                auto v = rhs.evaluate();
                if (!v) return;
                b.depth += rhs.has_arith() ? 1 : 0;
                b.sigma.emplace(lhs.name(), std::move(*v));
                join(std::move(rest), std::move(b), accept, emit);
                return;
            }
            if (rhs.is_variable() && lhs.is_ground()) {
                auto v = lhs.evaluate();
                if (!v) return;
                b.depth += lhs.has_arith() ? 1 : 0;
                b.sigma.emplace(rhs.name(), std::move(*v));
                join(std::move(rest), std::move(b), accept, emit);
                return;
            }
        }
        for (std::size_t i = 0; i < pending.size(); ++i) {
            const auto* a = std::get_if<const Atom*>(&pending[i]);
            if (!a) continue;
            std::vector<std::string> avars;
            for (const auto& t : (*a)->args) arith_variables(t, false, avars);
            if (!bound(avars, b.sigma)) continue;
            auto rest = pending;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            Atom pattern{(*a)->predicate, {}};
            for (const auto& t : (*a)->args) {
                auto v = partial_eval(t.substitute(b.sigma));
                if (!v) return;
                pattern.args.push_back(std::move(*v));
            }
            if (accept) {
                if (!pattern.is_ground()) throw Error("unbound variable in " + pattern.to_string());
                join(std::move(rest), std::move(b), accept, emit);
                return;
            }
            auto it = by_predicate_.find(predicate_label(pattern));
            if (it == by_predicate_.end()) return;
            const auto label = it->first;
            for (std::size_t j = 0; j < by_predicate_[label].size(); ++j) {
                Atom candidate = by_predicate_[label][j];
                Binding next = b;
                if (!match(pattern, candidate, next.sigma)) continue;
                next.depth = std::max(next.depth, depth_.at(candidate));
                join(rest, std::move(next), accept, emit);
            }
            return;
        }
        throw Error("cannot bind all variables of a rule; is it safe?");
    }

    std::optional<Draft> make_draft(std::size_t pos, const Substitution& sigma, std::vector<Term> key) {
        const Rule& rule = program_.rules[pos];
        Draft d;
        d.rule_pos = pos;
        d.source_index = rule.source_index;
        d.bindings = std::move(key);
        if (const auto* a = std::get_if<Atom>(&rule.head)) {
            auto h = ground_atom(*a, sigma, rule);
            if (!h) return std::nullopt;
            d.head.push_back(std::move(*h));
        } else {
            const auto& c = std::get<Choice>(rule.head);
            d.choice = true;
            auto lo = ground_term(c.lower, sigma, rule);
            auto hi = ground_term(c.upper, sigma, rule);
            if (!lo || !hi) return std::nullopt;
            if (!lo->is_integer() || !hi->is_integer()) {
                throw Error("choice bounds must be integers in rule " + to_string(rule));
            }
            d.lower = std::max<std::int64_t>(0, lo->int_value());
            d.upper = hi->int_value();
            for (const auto& atom : c.atoms) {
                auto h = ground_atom(atom, sigma, rule);
                if (!h) return std::nullopt;
                if (std::find(d.head.begin(), d.head.end(), *h) == d.head.end()) d.head.push_back(std::move(*h));
            }
        }
        for (const auto* a : rule.positive_body()) {
            auto g = ground_atom(*a, sigma, rule);
            if (!g) return std::nullopt;
            if (std::find(d.pos.begin(), d.pos.end(), *g) == d.pos.end()) d.pos.push_back(std::move(*g));
        }
        for (const auto* a : rule.negative_body()) {
            auto g = ground_atom(*a, sigma, rule);
            if (!g) return std::nullopt;
            if (std::find(d.neg.begin(), d.neg.end(), *g) == d.neg.end()) d.neg.push_back(std::move(*g));
        }
        const auto aggs = rule.aggregates();
        for (std::size_t i = 0; i < aggs.size(); ++i) {
            Aggregate g = *aggs[i];
            g.weight = g.weight.substitute(sigma);
            for (auto& t : g.tuple) t = t.substitute(sigma);
            g.condition = g.condition.substitute(sigma);
            for (auto& t : g.condition.args) {
                auto v = partial_eval(t);
                if (!v) return std::nullopt;
                t = std::move(*v);
            }
            auto guard = ground_term(g.guard, sigma, rule);
            if (!guard) return std::nullopt;
            g.guard = std::move(*guard);
            d.aggregates.emplace_back(aggregate_numbers_[pos][i], std::move(g));
        }
        return d;
    }

    GroundProgram finish() {
        std::stable_sort(drafts_.begin(), drafts_.end(), [](const Draft& a, const Draft& b) {
            if (a.source_index != b.source_index) return a.source_index < b.source_index;
            return a.bindings < b.bindings;
        });
        std::set<Atom> base(seeds_.begin(), seeds_.end());
        for (const auto& [a, d] : depth_) base.insert(a);
        for (const auto& d : drafts_) {
            base.insert(d.head.begin(), d.head.end());
            base.insert(d.pos.begin(), d.pos.end());
            base.insert(d.neg.begin(), d.neg.end());
        }

        GroundProgram out;
        out.atoms.assign(base.begin(), base.end());
        std::map<Atom, AtomId> ids;
        for (AtomId i = 0; i < out.atoms.size(); ++i) ids.emplace(out.atoms[i], i);
        std::map<std::string, std::vector<Atom>> base_by_predicate;
        for (const auto& a : out.atoms) base_by_predicate[predicate_label(a)].push_back(a);

        for (const auto& d : drafts_) {
            GroundRule r;
            r.id = rule_id(d.source_index, d.bindings);
            r.source_index = d.source_index;
            r.bindings = d.bindings;
            r.choice = d.choice;
            r.lower = d.lower;
            r.upper = d.upper;
            for (const auto& a : d.head) r.head.push_back(ids.at(a));
            if (program_.rules[d.rule_pos].is_constraint()) r.head.clear();
            for (const auto& a : d.pos) r.pos.push_back(ids.at(a));
            for (const auto& a : d.neg) r.neg.push_back(ids.at(a));
            for (const auto& [number, pattern] : d.aggregates) {
                GroundAggregate g;
                g.id = rule_id(number, d.bindings, "agg");
                g.number = number;
                g.pattern = pattern;
                static const std::vector<Atom> none;
                auto it = base_by_predicate.find(predicate_label(pattern.condition));
                std::map<std::pair<std::int64_t, std::vector<Term>>, std::size_t> keys;
                for (auto& inst : aggregate_instances(pattern, it == base_by_predicate.end() ? none : it->second)) {
                    auto [k, fresh] = keys.emplace(std::make_pair(inst.weight, inst.tuple), g.key_weights.size());
                    if (fresh) g.key_weights.push_back(inst.weight);
                    g.elements.push_back({ids.at(inst.atom), inst.weight, std::move(inst.tuple), k->second});
                }
                r.aggregates.push_back(out.aggregates.size());
                out.aggregates.push_back(std::move(g));
            }
            out.rules.push_back(std::move(r));
        }
        out.build_index();
        return out;
    }

    const Program& program_;
    const std::vector<Atom>& seeds_;
    GroundingOptions options_;
    std::vector<std::vector<std::size_t>> aggregate_numbers_;
    std::map<Atom, std::size_t> depth_;
    std::map<std::string, std::vector<Atom>> by_predicate_;
    std::set<std::pair<std::size_t, std::vector<Term>>> produced_;
    std::vector<Draft> drafts_;
    std::vector<Term> constants_;
};

}  // namespace

GroundProgram instantiate(const Program& program, const std::vector<Atom>& seeds,
                          const GroundingOptions& options) {
    return Grounder(program, seeds, options).run();
}

std::vector<Atom> herbrand_base(const GroundProgram& ground, const std::vector<Atom>& seeds) {
    std::set<Atom> out(ground.atoms.begin(), ground.atoms.end());
    out.insert(seeds.begin(), seeds.end());
    return {out.begin(), out.end()};
}

}  // namespace whyasp
