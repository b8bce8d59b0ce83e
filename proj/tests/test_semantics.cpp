#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "support/random_program.hpp"
#include "whyasp/semantics.hpp"

using namespace whyasp;
using testing_support::load_run;
using testing_support::set_of;

namespace {

GroundProgram ground(const std::string& text) {
    auto p = parse_program(text);
    validate_program(p);
    return instantiate(p, {});
}

const GroundRule& rule_by_id(const GroundProgram& g, const std::string& id) {
    auto it = std::find_if(g.rules.begin(), g.rules.end(), [&](const GroundRule& r) { return r.id == id; });
    REQUIRE(it != g.rules.end());
    return *it;
}

bool has_inference(const std::vector<Inference>& infs, AtomId atom, ReasonKind kind, std::size_t rule = no_rule) {
    return std::any_of(infs.begin(), infs.end(), [&](const Inference& i) {
        return i.atom == atom && i.kind == kind && (rule == no_rule || i.rule == rule);
    });
}

std::size_t rule_index(const GroundProgram& g, const std::string& id) {
    return static_cast<std::size_t>(&rule_by_id(g, id) - g.rules.data());
}

}  // namespace

TEST_CASE("aggregate evaluation golden values") {
    auto run = load_run();
    const auto& agg = run.ground.aggregates.at(*run.ground.find_aggregate("agg1(0)"));
    auto fac = set_of(run, {"fail(a,c)"});
    auto none = run.ground.empty_set();
    CHECK(eval(agg, ThreeValued{none, fac}) == Truth::u);
    CHECK(eval(agg, ThreeValued{fac, fac}) == Truth::t);
    CHECK(eval(agg, ThreeValued{none, none}) == Truth::f);
}

TEST_CASE("two-valued satisfaction on the running example") {
    auto run = load_run();
    const auto& g = run.ground;
    CHECK(satisfies_head(run.answer, rule_by_id(g, "r1(a,b)")));
    CHECK_FALSE(satisfies(run.answer, g.aggregates.at(*g.find_aggregate("agg1(0)"))));
    CHECK_FALSE(run.answer.test(run.id("fail(a,c)")));
    CHECK(is_answer_set(g, run.answer));
    CHECK_FALSE(is_answer_set(g, g.empty_set()));
    CHECK_FALSE(is_answer_set(ground("p :- p."), ground("p :- p.").full_set()));
}

TEST_CASE("reduct of the running example") {
    auto run = load_run();
    const auto& g = run.ground;
    auto red = reduct(g, run.answer);
    CHECK(std::any_of(red.begin(), red.end(),
                      [&](const GroundRule& r) { return g.rule_text(r) == "arc(b,a) :- edge(a,b)."; }));
    auto empty = reduct(g, g.empty_set());
    CHECK(empty.empty());
    CHECK(least_model(g, red) == run.answer);
}

TEST_CASE("body evaluation") {
    auto g = ground("a. b :- a, not c. d :- .");
    const auto& with_body = rule_by_id(g, "r2");
    auto a = g.id(parse_ground_atom("a"));
    auto c = g.id(parse_ground_atom("c"));
    auto all = g.full_set();
    auto la = g.empty_set();
    la.set(a);
    CHECK(eval_body(g, rule_by_id(g, "r1"), ThreeValued{g.empty_set(), all}) == Truth::t);
    CHECK(eval_body(g, with_body, ThreeValued{la, all}) == Truth::u);
    auto no_a = all;
    no_a.reset(a);
    CHECK(eval_body(g, with_body, ThreeValued{g.empty_set(), no_a}) == Truth::f);
    auto no_c = all;
    no_c.reset(c);
    CHECK(eval_body(g, with_body, ThreeValued{la, no_c}) == Truth::t);
}

TEST_CASE("inference golden values at (empty, base)") {
    auto run = load_run(true);
    const auto& g = run.ground;
    ThreeValued tv{g.empty_set(), g.full_set()};
    auto support = infer_true_by_support(tv, g, run.answer);
    CHECK(has_inference(support, run.id("source(a)"), ReasonKind::support));
    auto falsity = infer_false(tv, g);
    CHECK(has_inference(falsity, run.id("edge(a,a)"), ReasonKind::lack_of_support));
    auto unfounded = find_unfounded_set(tv, g);
    CHECK(unfounded.test(run.id("edge(a,a)")));
    CHECK(unfounded.test(run.id("arc(a,a)")));
}

TEST_CASE("constraint-like inference on the running example") {
    auto run = load_run(true);
    const auto& g = run.ground;
    auto upper = g.full_set();
    upper.reset(run.id("reach(a,c)"));
    ThreeValued tv{set_of(run, {"arc(d,c)"}), upper};
    auto falsity = infer_false(tv, g);
    CHECK(has_inference(falsity, run.id("reach(a,d)"), ReasonKind::required_to_falsify_body,
                        rule_index(g, "r3(a,c,d)")));
}

TEST_CASE("choice rule inference once the upper bound is reached") {
    auto g = ground("e. 1 {x; y} 1 :- e.");
    auto x = g.id(parse_ground_atom("x"));
    auto y = g.id(parse_ground_atom("y"));
    auto e = g.id(parse_ground_atom("e"));
    auto lower = g.empty_set();
    lower.set(x);
    lower.set(e);
    auto falsity = infer_false(ThreeValued{lower, g.full_set()}, g);
    CHECK(has_inference(falsity, y, ReasonKind::choice_rule));
    lower.reset(e);
    CHECK_FALSE(has_inference(infer_false(ThreeValued{lower, g.full_set()}, g), y, ReasonKind::choice_rule));
}

TEST_CASE("support is restricted to the answer set") {
    auto run = load_run();
    auto support = infer_true_by_support(ThreeValued{run.answer, run.answer}, run.ground, run.answer);
    CHECK(support.empty());
}

TEST_CASE("unfounded sets") {
    auto loop = ground("p :- q. q :- p.");
    CHECK(find_unfounded_set(ThreeValued{loop.empty_set(), loop.full_set()}, loop) == loop.full_set());
    auto run = load_run();
    CHECK(find_unfounded_set(ThreeValued{run.answer, run.answer}, run.ground).none());
}

TEST_CASE("answer set oracle") {
    auto run = load_run();
    auto sets = oracle_answer_sets(run.ground);
    REQUIRE(sets.size() == 1);
    CHECK(sets.front() == run.answer);
    auto fact = ground("p.");
    CHECK(oracle_answer_sets(fact) == std::vector<AtomSet>{fact.full_set()});
    auto choice = ground("0 {p} 1.");
    CHECK(oracle_answer_sets(choice) == std::vector<AtomSet>{choice.empty_set(), choice.full_set()});
    auto many = ground("{a; b; c; d}.");
    CHECK_THROWS_AS(oracle_answer_sets(many, 3), Error);
}

TEST_CASE("random programs agree with brute-force definitions") {
    testing_support::RandomProgram gen(2024);
    std::mt19937_64 rng(7);
    int programs = 0;
    while (programs < 150) {
        auto text = gen.next(8);
        auto g = instantiate(parse_program(text), {});
        if (g.size() > 10) continue;
        ++programs;
        INFO(text);

        auto expected = oracle::answer_sets(g);
        std::vector<std::set<AtomId>> actual;
        for (const auto& a : oracle_answer_sets(g)) actual.push_back(oracle::from(a));
        std::sort(actual.begin(), actual.end());
        std::sort(expected.begin(), expected.end());
        CHECK(actual == expected);

        for (int k = 0; k < 8; ++k) {
            auto lower = g.empty_set();
            auto upper = g.empty_set();
            for (AtomId a = 0; a < g.size(); ++a) {
                auto roll = rng() % 3;
                if (roll == 0) lower.set(a);
                if (roll != 2) upper.set(a);
            }
            ThreeValued tv{lower, upper};
            auto b = oracle::from(tv);
            CHECK(oracle::from(find_unfounded_set(tv, g)) == oracle::greatest_unfounded(g, b));
            for (const auto& r : g.rules) CHECK(eval_body(g, r, tv) == oracle::body(g, r, b));
            for (const auto& agg : g.aggregates) CHECK(eval(agg, tv) == oracle::value(agg, b));
            for (const auto& agg : g.aggregates) {
                CHECK((eval(agg, ThreeValued{lower, lower}) == Truth::t) == satisfies(lower, agg));
            }
            CHECK(is_answer_set(g, lower) == is_answer_set_by_enumeration(g, lower));
        }
    }
}

TEST_CASE("truth and reason rendering") {
    CHECK(std::string(to_string(Truth::u)) == "u");
    CHECK(Reason{ReasonKind::support, "r1(a,b)"}.to_string() == "(support, r1(a,b))");
    CHECK(Reason{ReasonKind::lack_of_support, {}}.to_string() == "lack_of_support");
    CHECK(Reason::parse("(choice_rule, r1(a,b))") == Reason{ReasonKind::choice_rule, "r1(a,b)"});
    CHECK(Reason::parse("initial_well_founded") == Reason{ReasonKind::initial_well_founded, {}});
}
