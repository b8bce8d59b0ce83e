#pragma once

#include <string>

#include "whyasp/semantics.hpp"

namespace whyasp {

/// Ground fact base describing (program, answer set, query): atom/1, true/1,
/// false/1, explain/1, explained_by/2 for wf-false atoms, rule/1, head/2,
/// pos_body/2, neg_body/2, choice/3 and aggregate/1. One fact per line, sorted.
std::string export_serialized_facts(const GroundProgram& ground, const AtomSet& answer_set, AtomId query,
                                    const ThreeValued& wf);

}  // namespace whyasp
