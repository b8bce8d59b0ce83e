#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "support/dag_checks.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "support/properties.hpp"
#include "whyasp/pipeline.hpp"

using namespace whyasp;
using testing_support::Loaded;

namespace {

constexpr double run_seconds = 1.0;
constexpr double universality_seconds = 10.0;
constexpr double property_seconds = 60.0;
constexpr double blocksworld_seconds = 5.0;
constexpr std::size_t random_programs = 500;
constexpr std::uint64_t random_seed = 20231;

const std::string blocks_query = R"(occurs(("putdown",constant("a")),0))";
const std::string blocks_blocker = R"(non_exec(("putdown",constant("a")),0))";
const std::string blocks_precondition = R"(h(variable(("holding",constant("a"))),0))";

struct Outcome {
    std::vector<std::string> problems;

    void require(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool has_link(const ExplanationDag& dag, const std::string& from, const std::string& to) {
    return std::find(dag.links.begin(), dag.links.end(), std::pair{from, to}) != dag.links.end();
}

bool has_record(const Derivation& d, const std::string& atom, ReasonKind kind, const std::string& rule) {
    const auto* r = d.find(atom);
    return r && r->reason == Reason{kind, rule};
}

RunConfig run_config(OutputFormat format) {
    RunConfig c;
    c.program = testing_support::read_data("run.lp");
    c.answer_set = testing_support::read_data("run.as");
    c.query = "arc(a,b)";
    c.format = format;
    return c;
}

RunConfig blocks_config(OutputFormat format) {
    RunConfig c;
    c.program = testing_support::read_data("blocksworld.lp");
    c.answer_set = testing_support::read_data("blocksworld.as");
    c.query = blocks_query;
    c.format = format;
    return c;
}

const testing_support::PropertyReport& property_report(double* elapsed = nullptr) {
    static std::optional<testing_support::PropertyReport> report;
    static double took = 0;
    if (!report) {
        auto start = std::chrono::steady_clock::now();
        report = testing_support::check_random_programs(random_programs, random_seed);
        took = seconds_since(start);
    }
    if (elapsed) *elapsed = took;
    return *report;
}

Outcome criterion1() {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    auto inst = prepare(run_config(OutputFormat::dot));
    auto ex = explain_query(inst, 1);
    auto took = seconds_since(start);
    o.require(ex.size() == 1, "expected one explanation");
    if (ex.empty()) return o;
    const auto& e = ex.front();
    o.require(e.assumptions.none(), "minimal assumption set is not empty");
    o.require(has_record(e.derivation, "edge(a,b)", ReasonKind::support, "r6"), "missing edge(a,b) (support, r6)");
    o.require(has_record(e.derivation, "arc(b,a)", ReasonKind::support, "r1(a,b)"),
              "missing arc(b,a) (support, r1(a,b))");
    o.require(has_record(e.derivation, "arc(a,b)", ReasonKind::choice_rule, "r1(a,b)"),
              "missing arc(a,b) (choice_rule, r1(a,b))");
    o.require(has_link(e.dag, "arc(b,a)", "edge(a,b)"), "missing link arc(b,a) -> edge(a,b)");
    o.require(has_link(e.dag, "arc(a,b)", "arc(b,a)"), "missing link arc(a,b) -> arc(b,a)");
    o.require(has_link(e.dag, "arc(a,b)", "edge(a,b)"), "missing link arc(a,b) -> edge(a,b)");
    o.require(!check_acyclic(e.restricted), "restricted DAG has a cycle");
    o.require(took < run_seconds, "took " + std::to_string(took) + " s");
    return o;
}

Outcome criterion2() {
    Outcome o;
    auto run = testing_support::load_run();
    for (const auto* a : {"edge(a,b)", "edge(a,d)", "edge(d,c)", "source(a)", "source(b)", "sink(c)", "threshold(0)",
                          "arc(b,a)", "arc(a,d)", "arc(d,c)", "reach(a,a)", "reach(b,b)", "reach(a,d)", "reach(a,c)",
                          "reach(b,a)", "reach(b,c)", "reach(b,d)"}) {
        o.require(run.wf.lower.test(run.id(a)), std::string(a) + " not in the lower bound");
    }
    for (const auto* a : {"arc(a,b)", "arc(d,a)", "arc(c,d)"}) {
        o.require(run.wf.upper.test(run.id(a)) && !run.wf.lower.test(run.id(a)),
                  std::string(a) + " not undefined in the well-founded derivation");
    }
    o.require(oracle::from(run.wf) == oracle::well_founded(run.ground, oracle::from(run.answer)),
              "differs from the brute-force well-founded derivation");
    return o;
}

Outcome criterion3() {
    Outcome o;
    auto run = testing_support::load_run();
    const auto& agg = run.ground.aggregates.at(*run.ground.find_aggregate("agg1(0)"));
    auto fac = testing_support::set_of(run, {"fail(a,c)"});
    auto none = run.ground.empty_set();
    o.require(eval(agg, ThreeValued{none, fac}) == Truth::u, "(∅, {fail(a,c)}) is not u");
    o.require(eval(agg, ThreeValued{fac, fac}) == Truth::t, "({fail(a,c)}, {fail(a,c)}) is not t");
    o.require(eval(agg, ThreeValued{none, none}) == Truth::f, "(∅, ∅) is not f");
    return o;
}

Outcome criterion4() {
    Outcome o;
    auto run = testing_support::load_run(true);
    const auto& g = run.ground;
    auto rule_of = [&](const std::string& id) {
        for (std::size_t i = 0; i < g.rules.size(); ++i) {
            if (g.rules[i].id == id) return i;
        }
        return no_rule;
    };
    auto inferred = [&](const std::vector<Inference>& infs, const std::string& atom, ReasonKind kind,
                        std::size_t rule) {
        auto id = run.id(atom);
        return std::any_of(infs.begin(), infs.end(), [&](const Inference& i) {
            return i.atom == id && i.kind == kind && (rule == no_rule || i.rule == rule);
        });
    };

    ThreeValued base{g.empty_set(), g.full_set()};
    o.require(inferred(infer_false(base, g), "edge(a,a)", ReasonKind::lack_of_support, no_rule),
              "edge(a,a) not false by lack of support at (∅, base)");
    o.require(inferred(infer_true_by_support(base, g, run.answer), "source(a)", ReasonKind::support, no_rule),
              "source(a) not true by support at (∅, base)");
    auto unfounded = find_unfounded_set(base, g);
    o.require(unfounded.test(run.id("edge(a,a)")) && unfounded.test(run.id("arc(a,a)")),
              "{edge(a,a), arc(a,a)} not unfounded at (∅, base)");

    auto upper = g.full_set();
    upper.reset(run.id("reach(a,c)"));
    ThreeValued pair{testing_support::set_of(run, {"arc(d,c)"}), upper};
    auto falsity = infer_false(pair, g);
    o.require(inferred(falsity, "reach(a,d)", ReasonKind::required_to_falsify_body, rule_of("r3(a,c,d)")),
              "reach(a,d) not false by the constraint-like rule r3(a,c,d) at ({arc(d,c)}, base \\ {reach(a,c)})");
    o.require(inferred(falsity, "arc(c,d)", ReasonKind::choice_rule, rule_of("r1(d,c)")),
              "arc(c,d) not false by the choice rule r1(d,c) at ({arc(d,c)}, base \\ {reach(a,c)}): "
              "edge(d,c) is undefined there, so the body of r1(d,c) is not true");
    return o;
}

Outcome criterion5() {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    auto run = testing_support::load_run();
    std::size_t checked = 0;
    for (AtomId a = 0; a < run.ground.size(); ++a) {
        auto mas = minimal_assumption_set(run.ground, run.answer, a, run.wf);
        o.require(mas.none(), "non-empty minimal assumption set for " + run.ground.atoms[a].to_string());
        ++checked;
    }
    o.require(checked == run.ground.size(), "not every atom checked");
    auto took = seconds_since(start);
    o.require(took < universality_seconds, "took " + std::to_string(took) + " s");
    return o;
}

Outcome criterion6() {
    Outcome o;
    double took = 0;
    const auto& report = property_report(&took);
    o.require(report.programs == random_programs, "only " + std::to_string(report.programs) + " programs");
    for (const auto& f : report.failures) o.require(false, f);
    o.require(took < property_seconds, "took " + std::to_string(took) + " s");
    return o;
}

Outcome criterion7() {
    Outcome o;
    auto check = [&](const Loaded& l, const std::string& label) {
        auto d = explain(l.ground, l.answer, l.wf, l.ground.empty_set());
        auto dag = build_dag(d, l.ground, l.answer);
        for (const auto& v : testing_support::dag_violations(dag, d, l.ground, l.answer)) o.require(false, label + ": " + v);
    };
    check(testing_support::load_run(), "running example");
    check(testing_support::load_blocksworld(), "blocksworld");
    for (auto config : {run_config(OutputFormat::dot), blocks_config(OutputFormat::dot)}) {
        auto inst = prepare(config);
        for (const auto& e : explain_query(inst, 1)) {
            for (const auto& v : testing_support::dag_violations(e.dag, e.derivation, inst.ground, inst.answer_set)) {
                o.require(false, config.query + ": " + v);
            }
            o.require(!check_acyclic(e.restricted), config.query + ": restricted DAG has a cycle");
        }
    }
    for (const auto& f : property_report().dag_failures) o.require(false, f);
    return o;
}

Outcome criterion8() {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    auto inst = prepare(blocks_config(OutputFormat::dot));
    auto ex = explain_query(inst, 1);
    auto took = seconds_since(start);
    o.require(!inst.answer_set.test(inst.query), "the queried action occurs in the answer set");
    o.require(ex.size() == 1, "expected one explanation");
    if (ex.empty()) return o;
    const auto& e = ex.front();
    const auto& dag = e.restricted;
    const auto* root = dag.find(blocks_query);
    o.require(root && root->truth == Truth::f, "root is not the false query atom");
    if (root) {
        o.require(root->reason.kind == ReasonKind::required_to_falsify_body &&
                      root->reason.rule.rfind("r7(", 0) == 0,
                  "root is not explained by the executability constraint");
        auto latest = std::max_element(dag.vertices.begin(), dag.vertices.end(),
                                       [](const DagVertex& a, const DagVertex& b) { return a.index < b.index; });
        o.require(latest->id == root->id, "root is not the last explained vertex");
    }
    o.require(has_link(dag, blocks_query, blocks_blocker), "no link from the query into non_exec");
    o.require(has_link(dag, blocks_blocker, blocks_precondition), "no link from non_exec to the holding precondition");
    const auto* pre = dag.find(blocks_precondition);
    o.require(pre && pre->truth == Truth::f && dag.successors(pre->id).empty(),
              "holding precondition is not a false sink");

    auto answer = oracle::from(inst.answer_set);
    oracle::Bounds begin{{}, oracle::from(inst.wf.upper - e.assumptions)};
    auto end = oracle::fixpoint(inst.ground, answer, begin);
    o.require(end.lower == answer && end.upper == answer,
              "brute-force derivation from the assumption set does not reconstruct the answer set");
    o.require(took < blocksworld_seconds, "took " + std::to_string(took) + " s");
    return o;
}

Outcome criterion9() {
    Outcome o;
    for (auto make : {run_config, blocks_config}) {
        for (auto format : {OutputFormat::dot, OutputFormat::json, OutputFormat::trace}) {
            auto first = run(make(format));
            auto second = run(make(format));
            o.require(first.status == 0 && second.status == 0, "pipeline failed: " + first.message);
            o.require(first.output == second.output, "outputs differ for " + make(format).query);
        }
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                         criterion6, criterion7, criterion8, criterion9};
    std::vector<std::size_t> selected;
    for (int i = 1; i < argc; ++i) {
        auto n = std::strtoul(argv[i], nullptr, 10);
        if (n < 1 || n > criteria.size()) {
            std::cerr << "usage: " << argv[0] << " [criterion 1-9]...\n";
            return 2;
        }
        selected.push_back(n);
    }
    if (selected.empty()) {
        for (std::size_t n = 1; n <= criteria.size(); ++n) selected.push_back(n);
    }
    bool all_passed = true;
    for (auto n : selected) {
        Outcome outcome;
        try {
            outcome = criteria[n - 1]();
        } catch (const std::exception& e) {
            outcome.problems.push_back(std::string("exception: ") + e.what());
        }
        const bool passed = outcome.problems.empty();
        all_passed = all_passed && passed;
        std::cout << "criterion " << n << ": " << (passed ? "PASS" : "FAIL") << "\n";
        for (const auto& p : outcome.problems) std::cout << "  " << p << "\n";
    }
    return all_passed ? 0 : 1;
}
