#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "whyasp/analysis.hpp"
#include "whyasp/explanation.hpp"
#include "whyasp/parser.hpp"

#ifndef WHYASP_TEST_DATA
#define WHYASP_TEST_DATA "tests/data"
#endif

namespace testing_support {

inline std::string read_data(const std::string& name) {
    std::ifstream in(std::string(WHYASP_TEST_DATA) + "/" + name);
    if (!in) throw std::runtime_error("missing test data " + name);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Loaded {
    whyasp::Program program;
    whyasp::GroundProgram ground;
    whyasp::AtomSet answer;
    whyasp::ThreeValued wf;

    whyasp::AtomId id(const std::string& atom) const { return ground.id(whyasp::parse_ground_atom(atom)); }
    bool has(const std::string& atom) const { return ground.find(whyasp::parse_ground_atom(atom)).has_value(); }
};

inline Loaded load(const std::string& program_text, const std::string& answer_text,
                   const std::vector<std::string>& extra = {}, bool full = false) {
    Loaded l;
    l.program = whyasp::parse_program(program_text);
    whyasp::validate_program(l.program);
    auto atoms = whyasp::parse_answer_set(answer_text, l.program);
    auto seeds = atoms;
    for (const auto& e : extra) seeds.push_back(whyasp::parse_ground_atom(e));
    whyasp::GroundingOptions options;
    options.full = full;
    l.ground = whyasp::instantiate(l.program, seeds, options);
    l.answer = l.ground.to_set(atoms);
    l.wf = whyasp::well_founded_derivation(l.ground, l.answer);
    return l;
}

inline Loaded load_run(bool full = false) {
    return load(read_data("run.lp"), read_data("run.as"), {"arc(a,b)"}, full);
}

inline Loaded load_blocksworld() {
    return load(read_data("blocksworld.lp"), read_data("blocksworld.as"),
                {R"(occurs(("putdown",constant("a")),0))"});
}

inline whyasp::AtomSet set_of(const Loaded& l, const std::vector<std::string>& atoms) {
    auto s = l.ground.empty_set();
    for (const auto& a : atoms) s.set(l.id(a));
    return s;
}

}  // namespace testing_support
