#include "whyasp/explanation.hpp"

#include <algorithm>
#include <set>

namespace whyasp {

namespace {

void decide(const ThreeValued& tv, const GroundProgram& ground, const AtomSet& answer_set, AtomSet& add,
            AtomSet& remove) {
    add = ground.empty_set();
    remove = ground.empty_set();
    const auto undefined = tv.undefined();
    std::vector<Truth> body(ground.rules.size());
    for (std::size_t r = 0; r < ground.rules.size(); ++r) {
        const auto& rule = ground.rules[r];
        body[r] = eval_body(ground, rule, tv);
        if (body[r] == Truth::f) continue;
        if (body[r] == Truth::t) {
            for (auto a : rule.head) {
                if (undefined.test(a) && answer_set.test(a)) add.set(a);
            }
            if (rule.choice) {
                std::int64_t n = 0;
                for (auto a : rule.head) n += tv.lower.test(a) ? 1 : 0;
                if (n >= rule.upper) {
                    for (auto a : rule.head) {
                        if (undefined.test(a)) remove.set(a);
                    }
                }
            }
        }
        if (eval_head(rule, tv) == Truth::f) {
            for (auto a : rule.pos) {
                if (undefined.test(a) && eval_body_except(ground, rule, a, tv) == Truth::t) remove.set(a);
            }
        }
    }
    for (auto a = undefined.find_first(); a != AtomSet::npos; a = undefined.find_next(a)) {
        const auto& rules = ground.head_rules[a];
        if (std::all_of(rules.begin(), rules.end(), [&](std::size_t r) { return body[r] == Truth::f; })) {
            remove.set(a);
        }
    }
}

ThreeValued fixpoint(ThreeValued tv, const GroundProgram& ground, const AtomSet& answer_set) {
    AtomSet add, remove;
    while (true) {
        decide(tv, ground, answer_set, add, remove);
        if (add.none() && remove.none()) return tv;
        tv.lower |= add;
        tv.upper -= remove;
        if (!tv.lower.is_subset_of(tv.upper)) return tv;
    }
}

Reason aggregate_reason(const GroundAggregate& agg, Truth truth) {
    if (truth == Truth::t) return Reason{ReasonKind::support, agg.id};
    return Reason{ReasonKind::lack_of_support, {}};
}

}  // namespace

ThreeValued well_founded_derivation(const GroundProgram& ground, const AtomSet& answer_set) {
    ThreeValued tv{ground.empty_set(), ground.full_set()};
    while (true) {
        bool changed = false;
        for (const auto& inf : infer_true_by_support(tv, ground, answer_set)) {
            if (!tv.lower.test(inf.atom)) {
                tv.lower.set(inf.atom);
                changed = true;
            }
        }
        auto unfounded = find_unfounded_set(tv, ground);
        if (unfounded.any()) {
            tv.upper -= unfounded;
            changed = true;
        }
        if (!changed) return tv;
    }
}

ThreeValued explaining_step(const ThreeValued& tv, const GroundProgram& ground, const AtomSet& answer_set) {
    AtomSet add, remove;
    decide(tv, ground, answer_set, add, remove);
    return ThreeValued{tv.lower | add, tv.upper - remove};
}

std::vector<DerivationRecord> Derivation::all() const {
    auto out = initial;
    out.insert(out.end(), records.begin(), records.end());
    return out;
}

const DerivationRecord* Derivation::find(const std::string& text) const {
    for (const auto* list : {&initial, &records}) {
        for (const auto& r : *list) {
            if (r.text == text) return &r;
        }
    }
    return nullptr;
}

Derivation explaining_derivation(const ThreeValued& start, const GroundProgram& ground, const AtomSet& answer_set) {
    Derivation d;
    ThreeValued tv = start;
    std::vector<Truth> agg_truth(ground.aggregates.size(), Truth::u);
    auto aggregate_pending = [&] {
        for (std::size_t g = 0; g < ground.aggregates.size(); ++g) {
            if (agg_truth[g] == Truth::u && eval(ground.aggregates[g], tv) != Truth::u) return true;
        }
        return false;
    };

    auto record_aggregates = [&](const ThreeValued& state, std::vector<DerivationRecord>& step) {
        for (std::size_t g = 0; g < ground.aggregates.size(); ++g) {
            if (agg_truth[g] != Truth::u) continue;
            agg_truth[g] = eval(ground.aggregates[g], state);
            if (agg_truth[g] == Truth::u) continue;
            const auto& agg = ground.aggregates[g];
            step.push_back({0, d.steps, true, g, agg.id, agg_truth[g], aggregate_reason(agg, agg_truth[g])});
        }
    };

    std::size_t index = 0;
    while (true) {
        auto support = infer_true_by_support(tv, ground, answer_set);
        auto falsity = infer_false(tv, ground);
        if (support.empty() && falsity.empty() && !aggregate_pending()) break;
        ++d.steps;
        ThreeValued next = tv;
        std::vector<DerivationRecord> step;
        if (d.steps == 1) record_aggregates(tv, step);

        for (std::size_t i = 0; i < support.size(); ++i) {
            if (i > 0 && support[i].atom == support[i - 1].atom) continue;
            const auto a = support[i].atom;
            next.lower.set(a);
            step.push_back({0, d.steps, false, a, ground.atoms[a].to_string(), Truth::t,
                            Reason{ReasonKind::support, ground.rules[support[i].rule].id}});
        }
        for (std::size_t i = 0; i < falsity.size();) {
            std::size_t j = i;
            const Inference* best = nullptr;
            for (; j < falsity.size() && falsity[j].atom == falsity[i].atom; ++j) {
                const auto& f = falsity[j];
                if (f.kind == ReasonKind::lack_of_support) {
                    best = &f;
                    break;
                }
                if (!best || f.rule < best->rule || (f.rule == best->rule && f.kind < best->kind)) best = &f;
            }
            while (j < falsity.size() && falsity[j].atom == falsity[i].atom) ++j;
            const auto a = best->atom;
            next.upper.reset(a);
            Reason reason{best->kind, best->rule == no_rule ? std::string{} : ground.rules[best->rule].id};
            step.push_back({0, d.steps, false, a, ground.atoms[a].to_string(), Truth::f, std::move(reason)});
            i = j;
        }
        if (!next.lower.is_subset_of(next.upper)) {
            throw Error("explaining derivation reached an inconsistent state; the interpretation is not "
                        "compatible with the answer set");
        }
        record_aggregates(next, step);
        for (auto& r : step) {
            r.index = ++index;
            d.records.push_back(std::move(r));
        }
        tv = std::move(next);
    }
    d.result = std::move(tv);
    return d;
}

Derivation explain(const GroundProgram& ground, const AtomSet& answer_set, const ThreeValued& wf,
                   const AtomSet& assumptions) {
    ThreeValued start{ground.empty_set(), wf.upper - assumptions};
    auto d = explaining_derivation(start, ground, answer_set);
    std::vector<DerivationRecord> atoms;
    for (AtomId a = 0; a < ground.size(); ++a) {
        if (!wf.upper.test(a)) {
            atoms.push_back({0, 0, false, a, ground.atoms[a].to_string(), Truth::f,
                             Reason{ReasonKind::initial_well_founded, {}}});
        } else if (assumptions.test(a)) {
            atoms.push_back({0, 0, false, a, ground.atoms[a].to_string(), Truth::f, Reason{ReasonKind::assumption, {}}});
        }
    }
    d.initial.insert(d.initial.begin(), atoms.begin(), atoms.end());
    return d;
}

bool is_assumption_set(const AtomSet& assumptions, const GroundProgram& ground, const AtomSet& answer_set,
                       const ThreeValued& wf) {
    auto tv = fixpoint(ThreeValued{ground.empty_set(), wf.upper - assumptions}, ground, answer_set);
    return tv.lower == answer_set && tv.upper == answer_set;
}

AssumptionCost assumption_cost(const AtomSet& assumptions, AtomId query) {
    return AssumptionCost{assumptions.test(query) ? 1u : 0u, assumptions.count()};
}

AtomSet assumption_candidates(const GroundProgram& ground, const AtomSet& answer_set, const ThreeValued& wf) {
    (void)ground;
    return wf.upper - answer_set;
}

namespace {

class AssumptionSearch {
public:
    AssumptionSearch(const GroundProgram& ground, const AtomSet& answer_set, const ThreeValued& wf,
                     std::size_t limit)
        : ground_(ground), answer_set_(answer_set), wf_(wf), limit_(limit) {}

    std::vector<AtomSet> run(AtomId query) {
        const AtomSet candidates = assumption_candidates(ground_, answer_set_, wf_);
        AtomSet pool = candidates;
        if (query < pool.size()) pool.reset(query);

        AtomSet chosen = ground_.empty_set();
        ThreeValued start{ground_.empty_set(), wf_.upper};
        if (!complete(fixpoint(ThreeValued{start.lower, start.upper - pool}, ground_, answer_set_))) {
            // every assumption set contains the query atom
            chosen.set(query);
            start.upper.reset(query);
        }
        const auto base_state = fixpoint(start, ground_, answer_set_);
        for (std::size_t k = 0; k <= pool.count(); ++k) {
            dfs(chosen, base_state, pool, k, 0);
            if (!found_.empty()) break;
        }
        return std::move(found_);
    }

private:
    bool complete(const ThreeValued& tv) const { return tv.lower == answer_set_ && tv.upper == answer_set_; }

    void dfs(const AtomSet& chosen, const ThreeValued& state, const AtomSet& pool, std::size_t need,
             std::size_t from) {
        if (found_.size() >= limit_) return;
        if (need == 0) {
            if (complete(state)) found_.push_back(chosen);
            return;
        }
        AtomSet rest = pool & state.undefined();
        for (std::size_t i = rest.find_first(); i != AtomSet::npos && i < from; i = rest.find_next(i)) rest.reset(i);
        if (rest.count() < need) return;
        if (!complete(fixpoint(ThreeValued{state.lower, state.upper - rest}, ground_, answer_set_))) return;
        for (auto c = rest.find_first(); c != AtomSet::npos; c = rest.find_next(c)) {
            ThreeValued next = state;
            next.upper.reset(c);
            AtomSet more = chosen;
            more.set(c);
            dfs(more, fixpoint(std::move(next), ground_, answer_set_), pool, need - 1, c + 1);
            if (found_.size() >= limit_) return;
        }
    }

    const GroundProgram& ground_;
    const AtomSet& answer_set_;
    const ThreeValued& wf_;
    std::size_t limit_;
    std::vector<AtomSet> found_;
};

}  // namespace

std::vector<AtomSet> enumerate_assumption_sets(const GroundProgram& ground, const AtomSet& answer_set,
                                               AtomId query, const ThreeValued& wf, std::size_t limit) {
    if (limit == 0) throw Error("enumeration limit must be at least 1");
    return AssumptionSearch(ground, answer_set, wf, limit).run(query);
}

AtomSet minimal_assumption_set(const GroundProgram& ground, const AtomSet& answer_set, AtomId query,
                               const ThreeValued& wf) {
    auto sets = enumerate_assumption_sets(ground, answer_set, query, wf, 1);
    if (sets.empty()) throw Error("no assumption set found; is the interpretation an answer set?");
    return sets.front();
}

std::string trace_text(const Derivation& derivation, const std::vector<std::string>* keep) {
    std::set<std::string> allowed;
    if (keep) allowed.insert(keep->begin(), keep->end());
    std::string out;
    for (const auto& r : derivation.all()) {
        if (keep && !allowed.count(r.text)) continue;
        out += "explained_by(" + std::to_string(r.index) + ", " + r.text + ", " + r.reason.to_string() + ").\n";
    }
    return out;
}

}  // namespace whyasp
