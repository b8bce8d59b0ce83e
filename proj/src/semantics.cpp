#include "whyasp/semantics.hpp"

#include <algorithm>
#include <deque>

namespace whyasp {

const char* to_string(Truth value) noexcept {
    switch (value) {
        case Truth::f: return "f";
        case Truth::t: return "t";
        case Truth::u: return "u";
    }
    return "?";
}

bool refines(const ThreeValued& a, const ThreeValued& b) {
    return a.lower.is_subset_of(b.lower) && b.lower.is_subset_of(b.upper) && b.upper.is_subset_of(a.upper);
}

std::int64_t aggregate_sum(const GroundAggregate& agg, const AtomSet& interp) {
    std::vector<bool> counted(agg.key_weights.size(), false);
    std::int64_t sum = 0;
    for (const auto& e : agg.elements) {
        if (!interp.test(e.atom) || counted[e.key]) continue;
        counted[e.key] = true;
        if (__builtin_add_overflow(sum, e.weight, &sum)) throw Error("integer overflow in " + agg.id);
    }
    return sum;
}

bool satisfies(const AtomSet& interp, const GroundAggregate& agg) {
    return compare(aggregate_sum(agg, interp), agg.pattern.op, agg.pattern.guard);
}

bool satisfies_head(const AtomSet& interp, const GroundRule& rule) {
    if (!rule.choice) return interp.test(rule.head.front());
    std::int64_t n = 0;
    for (auto a : rule.head) n += interp.test(a) ? 1 : 0;
    return rule.lower <= n && n <= rule.upper;
}

bool satisfies_body(const GroundProgram& ground, const AtomSet& interp, const GroundRule& rule) {
    for (auto a : rule.pos) {
        if (!interp.test(a)) return false;
    }
    for (auto a : rule.neg) {
        if (interp.test(a)) return false;
    }
    for (auto g : rule.aggregates) {
        if (!satisfies(interp, ground.aggregates[g])) return false;
    }
    return true;
}

bool satisfies(const GroundProgram& ground, const AtomSet& interp, const GroundRule& rule) {
    return !satisfies_body(ground, interp, rule) || satisfies_head(interp, rule);
}

bool satisfies(const GroundProgram& ground, const AtomSet& interp) {
    return std::all_of(ground.rules.begin(), ground.rules.end(),
                       [&](const GroundRule& r) { return satisfies(ground, interp, r); });
}

std::vector<GroundRule> reduct(const GroundProgram& ground, const AtomSet& interp) {
    std::vector<GroundRule> out;
    for (const auto& r : ground.rules) {
        if (!satisfies_body(ground, interp, r)) continue;
        auto e = expand(r, interp);
        out.insert(out.end(), std::make_move_iterator(e.begin()), std::make_move_iterator(e.end()));
    }
    return out;
}

AtomSet least_model(const GroundProgram& ground, const std::vector<GroundRule>& rules) {
    AtomSet model = ground.empty_set();
    std::vector<std::size_t> missing(rules.size());
    std::vector<std::vector<std::size_t>> watch(ground.size());
    std::deque<AtomId> queue;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        missing[i] = rules[i].pos.size();
        for (auto a : rules[i].pos) watch[a].push_back(i);
        if (missing[i] == 0 && !model.test(rules[i].head.front())) {
            model.set(rules[i].head.front());
            queue.push_back(rules[i].head.front());
        }
    }
    while (!queue.empty()) {
        auto a = queue.front();
        queue.pop_front();
        for (auto i : watch[a]) {
            if (--missing[i] != 0) continue;
            auto h = rules[i].head.front();
            if (!model.test(h)) {
                model.set(h);
                queue.push_back(h);
            }
        }
    }
    return model;
}

bool is_answer_set(const GroundProgram& ground, const AtomSet& candidate) {
    if (!satisfies(ground, candidate)) return false;
    return least_model(ground, reduct(ground, candidate)) == candidate;
}

bool is_answer_set_by_enumeration(const GroundProgram& ground, const AtomSet& candidate) {
    if (!satisfies(ground, candidate)) return false;
    const auto rules = reduct(ground, candidate);
    std::vector<AtomId> members;
    for (auto i = candidate.find_first(); i != AtomSet::npos; i = candidate.find_next(i)) {
        members.push_back(static_cast<AtomId>(i));
    }
    if (members.size() > 24) throw Error("too many atoms for subset enumeration");
    const std::uint64_t total = std::uint64_t{1} << members.size();
    for (std::uint64_t mask = 0; mask + 1 < total; ++mask) {
        AtomSet sub = ground.empty_set();
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (mask >> i & 1) sub.set(members[i]);
        }
        bool model = std::all_of(rules.begin(), rules.end(), [&](const GroundRule& r) {
            return satisfies(ground, sub, r);
        });
        if (model) return false;
    }
    return true;
}

Truth eval_atom(AtomId atom, const ThreeValued& tv) {
    if (tv.lower.test(atom)) return Truth::t;
    return tv.upper.test(atom) ? Truth::u : Truth::f;
}

Truth eval_literal(AtomId atom, bool negated, const ThreeValued& tv) {
    auto v = eval_atom(atom, tv);
    if (!negated || v == Truth::u) return v;
    return v == Truth::t ? Truth::f : Truth::t;
}

Truth eval(const GroundAggregate& agg, const ThreeValued& tv) {
    for (const auto& e : agg.elements) {
        if (tv.upper.test(e.atom) && !tv.lower.test(e.atom)) return Truth::u;
    }
    return satisfies(tv.lower, agg) ? Truth::t : Truth::f;
}

Truth eval_head(const GroundRule& rule, const ThreeValued& tv) {
    if (!rule.choice) return eval_atom(rule.head.front(), tv);
    for (auto a : rule.head) {
        if (eval_atom(a, tv) == Truth::u) return Truth::u;
    }
    return satisfies_head(tv.lower, rule) ? Truth::t : Truth::f;
}

namespace {

Truth conjoin(const GroundProgram& ground, const GroundRule& rule, const ThreeValued& tv,
              const AtomId* skip) {
    Truth out = Truth::t;
    for (auto a : rule.pos) {
        if (skip && a == *skip) continue;
        auto v = eval_atom(a, tv);
        if (v == Truth::f) return Truth::f;
        if (v == Truth::u) out = Truth::u;
    }
    for (auto a : rule.neg) {
        auto v = eval_literal(a, true, tv);
        if (v == Truth::f) return Truth::f;
        if (v == Truth::u) out = Truth::u;
    }
    for (auto g : rule.aggregates) {
        auto v = eval(ground.aggregates[g], tv);
        if (v == Truth::f) return Truth::f;
        if (v == Truth::u) out = Truth::u;
    }
    return out;
}

}  // namespace

Truth eval_body(const GroundProgram& ground, const GroundRule& rule, const ThreeValued& tv) {
    return conjoin(ground, rule, tv, nullptr);
}

Truth eval_body_except(const GroundProgram& ground, const GroundRule& rule, AtomId atom,
                       const ThreeValued& tv) {
    return conjoin(ground, rule, tv, &atom);
}

const char* to_string(ReasonKind kind) noexcept {
    switch (kind) {
        case ReasonKind::assumption: return "assumption";
        case ReasonKind::initial_well_founded: return "initial_well_founded";
        case ReasonKind::support: return "support";
        case ReasonKind::lack_of_support: return "lack_of_support";
        case ReasonKind::required_to_falsify_body: return "required_to_falsify_body";
        case ReasonKind::choice_rule: return "choice_rule";
    }
    return "?";
}

std::string Reason::to_string() const {
    if (rule.empty()) return whyasp::to_string(kind);
    return std::string("(") + whyasp::to_string(kind) + ", " + rule + ")";
}

Reason Reason::parse(const std::string& text) {
    static const ReasonKind kinds[] = {ReasonKind::assumption,      ReasonKind::initial_well_founded,
                                       ReasonKind::support,         ReasonKind::lack_of_support,
                                       ReasonKind::required_to_falsify_body, ReasonKind::choice_rule};
    std::string name = text;
    std::string rule;
    if (!text.empty() && text.front() == '(') {
        auto comma = text.find(',');
        if (comma == std::string::npos || text.back() != ')') throw Error("bad reason: " + text);
        name = text.substr(1, comma - 1);
        rule = text.substr(comma + 1, text.size() - comma - 2);
        while (!rule.empty() && rule.front() == ' ') rule.erase(rule.begin());
    }
    for (auto k : kinds) {
        if (name == whyasp::to_string(k)) return Reason{k, rule};
    }
    throw Error("bad reason: " + text);
}

std::vector<Inference> infer_true_by_support(const ThreeValued& tv, const GroundProgram& ground,
                                             const AtomSet& answer_set) {
    std::vector<Inference> out;
    for (std::size_t r = 0; r < ground.rules.size(); ++r) {
        const auto& rule = ground.rules[r];
        bool candidate = std::any_of(rule.head.begin(), rule.head.end(), [&](AtomId a) {
            return answer_set.test(a) && eval_atom(a, tv) == Truth::u;
        });
        if (!candidate || eval_body(ground, rule, tv) != Truth::t) continue;
        for (auto a : rule.head) {
            if (answer_set.test(a) && eval_atom(a, tv) == Truth::u) out.push_back({a, ReasonKind::support, r});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Inference> infer_false(const ThreeValued& tv, const GroundProgram& ground) {
    std::vector<Inference> out;
    std::vector<Truth> body(ground.rules.size());
    for (std::size_t r = 0; r < ground.rules.size(); ++r) body[r] = eval_body(ground, ground.rules[r], tv);

    const auto undefined = tv.undefined();
    for (auto a = undefined.find_first(); a != AtomSet::npos; a = undefined.find_next(a)) {
        const auto& rules = ground.head_rules[a];
        if (std::all_of(rules.begin(), rules.end(), [&](std::size_t r) { return body[r] == Truth::f; })) {
            out.push_back({static_cast<AtomId>(a), ReasonKind::lack_of_support, no_rule});
        }
    }
    for (std::size_t r = 0; r < ground.rules.size(); ++r) {
        const auto& rule = ground.rules[r];
        if (body[r] == Truth::f) continue;
        if (eval_head(rule, tv) == Truth::f) {
            for (auto a : rule.pos) {
                if (eval_atom(a, tv) == Truth::u && eval_body_except(ground, rule, a, tv) == Truth::t) {
                    out.push_back({a, ReasonKind::required_to_falsify_body, r});
                }
            }
        }
        if (rule.choice && body[r] == Truth::t) {
            std::int64_t n = 0;
            for (auto a : rule.head) n += tv.lower.test(a) ? 1 : 0;
            if (n < rule.upper) continue;
            for (auto a : rule.head) {
                if (eval_atom(a, tv) == Truth::u) out.push_back({a, ReasonKind::choice_rule, r});
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

AtomSet find_unfounded_set(const ThreeValued& tv, const GroundProgram& ground) {
    const AtomSet candidates = tv.undefined();
    AtomSet supported = ground.empty_set();
    std::vector<std::size_t> missing(ground.rules.size(), 0);
    std::deque<AtomId> queue;

    auto fire = [&](std::size_t r) {
        for (auto h : ground.rules[r].head) {
            if (candidates.test(h) && !supported.test(h)) {
                supported.set(h);
                queue.push_back(h);
            }
        }
    };
    std::vector<bool> live(ground.rules.size(), false);
    for (std::size_t r = 0; r < ground.rules.size(); ++r) {
        const auto& rule = ground.rules[r];
        if (eval_body(ground, rule, tv) == Truth::f) continue;
        live[r] = true;
        for (auto a : rule.pos) missing[r] += candidates.test(a) ? 1 : 0;
        if (missing[r] == 0) fire(r);
    }
    while (!queue.empty()) {
        auto a = queue.front();
        queue.pop_front();
        for (auto r : ground.pos_rules[a]) {
            if (live[r] && --missing[r] == 0) fire(r);
        }
    }
    return candidates - supported;
}

std::vector<AtomSet> oracle_answer_sets(const GroundProgram& ground, std::size_t cap) {
    AtomSet facts = ground.empty_set();
    AtomSet heads = ground.empty_set();
    for (const auto& r : ground.rules) {
        for (auto a : r.head) heads.set(a);
        if (!r.choice && r.pos.empty() && r.neg.empty() && r.aggregates.empty()) facts.set(r.head.front());
    }
    const AtomSet open = heads - facts;
    std::vector<AtomId> free;
    for (auto a = open.find_first(); a != AtomSet::npos; a = open.find_next(a)) free.push_back(static_cast<AtomId>(a));
    if (free.size() > cap) {
        throw Error("answer set oracle: " + std::to_string(free.size()) + " atoms to guess exceed the cap of " +
                    std::to_string(cap));
    }
    std::vector<AtomSet> out;
    const std::uint64_t total = std::uint64_t{1} << free.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        AtomSet candidate = facts;
        for (std::size_t i = 0; i < free.size(); ++i) {
            if (mask >> i & 1) candidate.set(free[i]);
        }
        if (is_answer_set(ground, candidate)) out.push_back(std::move(candidate));
    }
    auto members = [](const AtomSet& s) {
        std::vector<std::size_t> v;
        for (auto i = s.find_first(); i != AtomSet::npos; i = s.find_next(i)) v.push_back(i);
        return v;
    };
    std::sort(out.begin(), out.end(), [&](const AtomSet& a, const AtomSet& b) { return members(a) < members(b); });
    return out;
}

}  // namespace whyasp
