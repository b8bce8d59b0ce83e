#include "whyasp/pipeline.hpp"

#include <set>

#include "whyasp/analysis.hpp"
#include "whyasp/parser.hpp"
#include "whyasp/serialize.hpp"

namespace whyasp {

OutputFormat parse_format(const std::string& name) {
    if (name == "dot") return OutputFormat::dot;
    if (name == "json") return OutputFormat::json;
    if (name == "trace") return OutputFormat::trace;
    if (name == "facts") return OutputFormat::facts;
    throw Error("unknown output format: " + name);
}

namespace {

std::set<std::string> known_predicates(const Program& program) {
    std::set<std::string> out;
    for (const auto& r : program.rules) {
        for (const auto* h : r.head_atoms()) out.insert(predicate_label(*h));
        for (const auto& e : r.body) {
            if (const auto* l = std::get_if<Literal>(&e)) out.insert(predicate_label(l->atom));
            if (const auto* g = std::get_if<Aggregate>(&e)) out.insert(predicate_label(g->condition));
        }
    }
    return out;
}

}  // namespace

Instance prepare(const RunConfig& config) {
    Instance inst;
    inst.program = parse_program(config.program);
    validate_program(inst.program);

    const Atom query = parse_ground_atom(config.query);
    std::vector<Atom> seeds;
    std::vector<Atom> given;
    if (config.answer_set) given = parse_answer_set(*config.answer_set, inst.program);
    seeds = given;
    for (const auto& text : config.extra_atoms) seeds.push_back(parse_ground_atom(text));

    auto known = known_predicates(inst.program);
    for (const auto& a : seeds) known.insert(predicate_label(a));
    if (!known.count(predicate_label(query))) {
        throw QueryError("query " + query.to_string() + ": predicate " + predicate_label(query) +
                         " occurs neither in the program nor in the given atoms");
    }
    seeds.push_back(query);

    GroundingOptions options;
    options.arith_depth = config.arith_depth;
    options.full = config.full_instantiation;
    inst.ground = instantiate(inst.program, seeds, options);
    inst.query = inst.ground.id(query);

    if (config.answer_set) {
        inst.answer_set = inst.ground.to_set(given);
        if (!config.trust_answer_set && !is_answer_set(inst.ground, inst.answer_set)) {
            throw AnswerSetError("the given interpretation is not an answer set of the program");
        }
    } else {
        auto sets = oracle_answer_sets(inst.ground, config.oracle_cap);
        if (sets.empty()) throw AnswerSetError("the program has no answer set");
        inst.answer_set = std::move(sets.front());
    }
    inst.wf = well_founded_derivation(inst.ground, inst.answer_set);
    return inst;
}

std::vector<Explanation> explain_query(const Instance& instance, std::size_t count) {
    std::vector<Explanation> out;
    const auto& g = instance.ground;
    const auto root = g.atoms[instance.query].to_string();
    for (auto& x : enumerate_assumption_sets(g, instance.answer_set, instance.query, instance.wf, count)) {
        Explanation e;
        e.derivation = explain(g, instance.answer_set, instance.wf, x);
        e.assumptions = std::move(x);
        e.dag = build_dag(e.derivation, g, instance.answer_set);
        e.restricted = restrict_reachable(e.dag, root);
        if (auto cycle = check_acyclic(e.restricted)) throw Error("internal error: explanation graph has a cycle");
        out.push_back(std::move(e));
    }
    return out;
}

std::string render(const Instance& instance, const Explanation& explanation, OutputFormat format) {
    switch (format) {
        case OutputFormat::dot:
            return to_dot(explanation.restricted);
        case OutputFormat::json:
            return to_json(explanation.restricted) + "\n";
        case OutputFormat::trace: {
            std::vector<std::string> keep;
            for (const auto& v : explanation.restricted.vertices) keep.push_back(v.id);
            return trace_text(explanation.derivation, &keep);
        }
        case OutputFormat::facts:
            return export_serialized_facts(instance.ground, instance.answer_set, instance.query, instance.wf);
    }
    return {};
}

RunResult run(const RunConfig& config) {
    RunResult result;
    try {
        if (config.count == 0) throw Error("--count must be at least 1");
        auto instance = prepare(config);
        if (config.format == OutputFormat::facts) {
            result.output = export_serialized_facts(instance.ground, instance.answer_set, instance.query, instance.wf);
            return result;
        }
        auto explanations = explain_query(instance, config.count);
        for (std::size_t i = 0; i < explanations.size(); ++i) {
            if (i) result.output += "---\n";
            result.output += render(instance, explanations[i], config.format);
        }
    } catch (const AnswerSetError& e) {
        result.status = 2;
        result.message = e.what();
    } catch (const QueryError& e) {
        result.status = 3;
        result.message = e.what();
    } catch (const Error& e) {
        result.status = 1;
        result.message = e.what();
    }
    return result;
}

}  // namespace whyasp
