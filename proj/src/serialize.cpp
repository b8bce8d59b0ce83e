#include "whyasp/serialize.hpp"

#include <algorithm>
#include <set>

namespace whyasp {

std::string export_serialized_facts(const GroundProgram& ground, const AtomSet& answer_set, AtomId query,
                                    const ThreeValued& wf) {
    std::set<std::string> facts;
    auto fact = [&](const std::string& name, const std::string& args) { facts.insert(name + "(" + args + ")."); };
    auto truth = [&](const std::string& subject, bool value) { fact(value ? "true" : "false", subject); };

    for (AtomId a = 0; a < ground.size(); ++a) {
        const auto text = ground.atoms[a].to_string();
        fact("atom", text);
        truth(text, answer_set.test(a));
        if (!wf.upper.test(a)) fact("explained_by", text + ",initial_well_founded");
    }
    fact("explain", ground.atoms[query].to_string());

    for (const auto& r : ground.rules) {
        fact("rule", r.id);
        for (auto h : r.head) fact("head", r.id + "," + ground.atoms[h].to_string());
        for (auto a : r.pos) fact("pos_body", r.id + "," + ground.atoms[a].to_string());
        for (auto a : r.neg) fact("neg_body", r.id + "," + ground.atoms[a].to_string());
        if (r.choice && !r.is_constraint()) {
            fact("choice", r.id + "," + std::to_string(r.lower) + "," + std::to_string(r.upper));
        }
        for (auto g : r.aggregates) fact("pos_body", r.id + "," + ground.aggregates[g].id);
    }

    for (const auto& agg : ground.aggregates) {
        const bool value = satisfies(answer_set, agg);
        fact("aggregate", agg.id);
        truth(agg.id, value);
        std::set<AtomId> instances;
        for (const auto& e : agg.elements) instances.insert(e.atom);
        if (value) {
            fact("rule", agg.id);
            fact("head", agg.id + "," + agg.id);
            for (auto a : instances) {
                fact(answer_set.test(a) ? "pos_body" : "neg_body", agg.id + "," + ground.atoms[a].to_string());
            }
        } else {
            for (auto a : instances) {
                const auto text = ground.atoms[a].to_string();
                const auto id = "(" + agg.id + "," + text + ")";
                fact("rule", id);
                fact("head", id + "," + agg.id);
                fact(answer_set.test(a) ? "neg_body" : "pos_body", id + "," + text);
            }
        }
    }

    std::string out;
    for (const auto& f : facts) out += f + "\n";
    return out;
}

}  // namespace whyasp
