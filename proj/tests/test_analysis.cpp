#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "whyasp/analysis.hpp"
#include "whyasp/parser.hpp"

using namespace whyasp;

namespace {

Rule rule(const std::string& text) { return parse_program(text).rules.front(); }

}  // namespace

TEST_CASE("aggregate variables are local, the guard variable global") {
    auto report = check_safety(rule(":- threshold(T), #sum{1,X,Y : fail(X,Y)} > T."));
    CHECK(report.ok());
    CHECK(report.global == std::vector<std::string>{"T"});
    CHECK(report.local == std::vector<std::string>{"X", "Y"});
}

TEST_CASE("unsafe variables are reported") {
    auto head_only = check_safety(rule("p(X)."));
    CHECK(head_only.unsafe == std::vector<std::string>{"X"});
    auto negative_only = check_safety(rule("p(X) :- not q(X)."));
    CHECK(negative_only.unsafe == std::vector<std::string>{"X"});
    auto arithmetic_only = check_safety(rule("p(Y) :- q(X+1), Y = X."));
    CHECK_FALSE(arithmetic_only.ok());
    CHECK_THROWS_AS(validate_program(parse_program("p(X).")), SafetyError);
}

TEST_CASE("equality binds variables from global ones") {
    auto report = check_safety(rule("p(Y) :- q(X), Y = X*2+1."));
    CHECK(report.ok());
    CHECK(report.global == std::vector<std::string>{"Y", "X"});
    CHECK(global_variables(rule("1 {arc(X,Y); arc(Y,X)} 1 :- edge(X,Y).")) == std::vector<std::string>{"X", "Y"});
}

TEST_CASE("dependency graph of the running example") {
    auto g = dependency_graph(parse_program(testing_support::read_data("run.lp")));
    CHECK(g.has_edge("reach/2", "arc/2"));
    CHECK(g.has_edge("reach/2", "reach/2"));
    CHECK(g.has_edge("fail/2", "source/1"));
    CHECK_FALSE(g.is_aggregate_edge("fail/2", "source/1"));
    CHECK_FALSE(g.has_edge("fail/2", "reach/2"));
    for (const auto& [edge, aggregate] : g.edges) CHECK_FALSE(aggregate);
    CHECK(dependency_graph(Program{}).vertices.empty());
    CHECK(dependency_graph(Program{}).edges.empty());
}

TEST_CASE("stratification") {
    CHECK(check_stratification(parse_program(testing_support::read_data("run.lp"))).ok());
    auto self = check_stratification(parse_program("p :- #sum{1 : p} > 0."));
    CHECK(self.cycle == std::vector<std::string>{"p/0", "p/0"});
    auto two = check_stratification(parse_program("p(1) :- q. q :- #sum{1,X : p(X)} > 0."));
    CHECK_FALSE(two.ok());
    CHECK_THROWS_AS(validate_program(parse_program("p :- #sum{1 : p} > 0.")), StratificationError);
    CHECK(check_stratification(parse_program("a :- not b. b :- not a. c :- #sum{1 : a} > 0.")).ok());
}
