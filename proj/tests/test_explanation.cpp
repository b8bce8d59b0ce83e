#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "whyasp/explanation.hpp"

using namespace whyasp;
using testing_support::load;
using testing_support::load_run;
using testing_support::set_of;

namespace {

std::vector<std::string> names(const GroundProgram& g, const AtomSet& s) {
    std::vector<std::string> out;
    for (const auto& a : g.to_atoms(s)) out.push_back(a.to_string());
    return out;
}

}  // namespace

TEST_CASE("well-founded derivation of the running example") {
    auto run = load_run();
    const auto& g = run.ground;
    for (const auto* a : {"arc(b,a)", "arc(a,d)", "arc(d,c)", "reach(a,a)", "reach(b,b)", "reach(a,d)", "reach(a,c)",
                          "reach(b,a)", "reach(b,c)", "reach(b,d)", "edge(a,b)", "threshold(0)"}) {
        CHECK(run.wf.lower.test(run.id(a)));
    }
    CHECK(names(g, run.wf.undefined()) ==
          std::vector<std::string>{"arc(a,b)", "arc(c,d)", "arc(d,a)", "reach(a,b)"});
    CHECK(oracle::from(run.wf) == oracle::well_founded(g, oracle::from(run.answer)));
}

TEST_CASE("well-founded derivation of facts") {
    auto l = load("a. b.", "a b");
    CHECK(l.wf.lower == l.answer);
    CHECK(l.wf.upper == l.answer);
}

TEST_CASE("one explaining step") {
    auto run = load_run();
    const auto& g = run.ground;
    ThreeValued start{g.empty_set(), run.wf.upper};
    auto next = explaining_step(start, g, run.answer);
    CHECK(oracle::from(next) == oracle::step(g, oracle::from(run.answer), oracle::from(start)));
    for (const auto* fact : {"edge(a,b)", "edge(a,d)", "edge(d,c)", "source(a)", "source(b)", "sink(c)", "threshold(0)"}) {
        CHECK(next.lower.test(run.id(fact)));
    }
    ThreeValued done{run.answer, run.answer};
    CHECK(explaining_step(done, g, run.answer) == done);
}

TEST_CASE("explaining derivation of the running example") {
    auto run = load_run();
    const auto& g = run.ground;
    auto d = explaining_derivation(ThreeValued{g.empty_set(), run.wf.upper}, g, run.answer);
    CHECK(d.result.lower == run.answer);
    CHECK(d.result.upper == run.answer);
    CHECK(d.steps <= g.size());

    auto e = explain(g, run.answer, run.wf, g.empty_set());
    auto trace = trace_text(e);
    CHECK(trace.find("explained_by(2, edge(a,b), (support, r6)).") != std::string::npos);
    REQUIRE(e.find("arc(b,a)"));
    CHECK(e.find("arc(b,a)")->reason == Reason{ReasonKind::support, "r1(a,b)"});
    REQUIRE(e.find("arc(a,b)"));
    CHECK(e.find("arc(a,b)")->reason == Reason{ReasonKind::choice_rule, "r1(a,b)"});
    REQUIRE(e.find("fail(a,c)"));
    CHECK(e.find("fail(a,c)")->reason.kind == ReasonKind::initial_well_founded);
    CHECK(e.find("fail(a,c)")->index == 0);
    REQUIRE(e.find("agg1(0)"));
    CHECK(e.find("agg1(0)")->reason.kind == ReasonKind::lack_of_support);
    CHECK(e.find("agg1(0)")->index > 0);

    std::size_t last = 0;
    for (const auto& r : e.records) {
        CHECK(r.index == last + 1);
        last = r.index;
    }
    CHECK(e.initial.size() + e.records.size() == g.size() + g.aggregates.size());

    auto settled = explaining_derivation(ThreeValued{run.answer, run.answer}, g, run.answer);
    CHECK(std::all_of(settled.records.begin(), settled.records.end(),
                      [](const DerivationRecord& r) { return r.aggregate; }));
    CHECK(settled.steps <= 1);
    CHECK(settled.result == ThreeValued{run.answer, run.answer});

    auto plain = load("a. b :- a.", "a b");
    auto none = explaining_derivation(ThreeValued{plain.answer, plain.answer}, plain.ground, plain.answer);
    CHECK(none.records.empty());
    CHECK(none.steps == 0);
}

TEST_CASE("assumption sets of the running example") {
    auto run = load_run();
    const auto& g = run.ground;
    CHECK(is_assumption_set(g.empty_set(), g, run.answer, run.wf));
    CHECK(is_assumption_set(g.full_set() - run.answer, g, run.answer, run.wf));
    auto mas = minimal_assumption_set(g, run.answer, run.id("arc(a,b)"), run.wf);
    CHECK(mas.none());
    auto all = enumerate_assumption_sets(g, run.answer, run.id("arc(a,b)"), run.wf, 3);
    REQUIRE(all.size() == 1);
    CHECK(all.front().none());
    CHECK_THROWS_AS(enumerate_assumption_sets(g, run.answer, run.id("arc(a,b)"), run.wf, 0), Error);
}

TEST_CASE("all-true programs need no assumption") {
    auto l = load("a. b :- a.", "a b");
    CHECK(is_assumption_set(l.ground.empty_set(), l.ground, l.answer, l.wf));
    CHECK(minimal_assumption_set(l.ground, l.answer, l.id("b"), l.wf).none());
}

TEST_CASE("two optimal assumption sets are both enumerated") {
    auto l = load("{p; q}. :- p, not q. :- q, not p. r :- p.", "");
    const auto& g = l.ground;
    auto sets = enumerate_assumption_sets(g, l.answer, l.id("r"), l.wf, 5);
    REQUIRE(sets.size() == 2);
    CHECK(names(g, sets[0]) == std::vector<std::string>{"p"});
    CHECK(names(g, sets[1]) == std::vector<std::string>{"q"});
    CHECK(minimal_assumption_set(g, l.answer, l.id("r"), l.wf) == sets.front());
    auto best = oracle::min_assumption_cost(g, oracle::from(l.answer), l.id("r"));
    REQUIRE(best);
    CHECK(best->size == 1);
    CHECK(best->query == 0);
}

TEST_CASE("an atom left open by a choice must be assumed") {
    auto l = load("0 {p; q} 2. r :- p. r :- q.", "");
    auto sets = enumerate_assumption_sets(l.ground, l.answer, l.id("r"), l.wf, 5);
    REQUIRE(sets.size() == 1);
    CHECK(names(l.ground, sets.front()) == std::vector<std::string>{"p", "q"});
    auto best = oracle::min_assumption_cost(l.ground, oracle::from(l.answer), l.id("r"));
    REQUIRE(best);
    CHECK(best->size == 2);
}

TEST_CASE("the queried atom is assumed only when unavoidable") {
    auto l = load("{p}.", "");
    auto p = l.id("p");
    auto mas = minimal_assumption_set(l.ground, l.answer, p, l.wf);
    CHECK(names(l.ground, mas) == std::vector<std::string>{"p"});
    CHECK(assumption_cost(mas, p) == AssumptionCost{1, 1});

    auto pair = load("{p; q}. :- p, not q. :- q, not p.", "");
    auto sets = enumerate_assumption_sets(pair.ground, pair.answer, pair.id("p"), pair.wf, 5);
    REQUIRE(sets.size() == 1);
    CHECK(names(pair.ground, sets.front()) == std::vector<std::string>{"q"});
}

TEST_CASE("trace filtering") {
    auto run = load_run();
    auto d = explain(run.ground, run.answer, run.wf, run.ground.empty_set());
    std::vector<std::string> keep{"arc(a,b)"};
    CHECK(trace_text(d, &keep) == "explained_by(16, arc(a,b), (choice_rule, r1(a,b))).\n");
}
