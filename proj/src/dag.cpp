#include "whyasp/dag.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "json.hpp"

namespace whyasp {

std::string DagVertex::label() const { return truth == Truth::f ? "not " + id : id; }

const DagVertex* ExplanationDag::find(const std::string& id) const {
    for (const auto& v : vertices) {
        if (v.id == id) return &v;
    }
    return nullptr;
}

std::vector<std::string> ExplanationDag::successors(const std::string& id) const {
    std::vector<std::string> out;
    for (const auto& [from, to] : links) {
        if (from == id) out.push_back(to);
    }
    return out;
}

void ExplanationDag::normalize() {
    std::sort(vertices.begin(), vertices.end(), [](const DagVertex& a, const DagVertex& b) {
        return std::tie(a.index, a.id) < std::tie(b.index, b.id);
    });
    std::map<std::string, std::size_t> index;
    for (const auto& v : vertices) index.emplace(v.id, v.index);
    auto rank = [&](const std::string& id) {
        auto it = index.find(id);
        return it == index.end() ? std::size_t{0} : it->second;
    };
    std::sort(links.begin(), links.end(), [&](const auto& a, const auto& b) {
        return std::forward_as_tuple(rank(a.first), a.first, rank(a.second), a.second) <
               std::forward_as_tuple(rank(b.first), b.first, rank(b.second), b.second);
    });
    links.erase(std::unique(links.begin(), links.end()), links.end());
}

namespace {

class DagBuilder {
public:
    DagBuilder(const Derivation& derivation, const GroundProgram& ground, const AtomSet& answer_set)
        : ground_(ground), answer_set_(answer_set) {
        for (const auto& r : derivation.all()) {
            if (r.aggregate) {
                aggregates_.emplace(r.subject, r);
            } else {
                atoms_.emplace(static_cast<AtomId>(r.subject), r);
            }
            dag_.vertices.push_back({r.text, r.aggregate, r.truth, r.reason, r.index});
        }
    }

    ExplanationDag build(const Derivation& derivation) {
        for (const auto& r : derivation.all()) {
            if (r.aggregate) {
                link_aggregate(r);
            } else {
                link_atom(r);
            }
        }
        dag_.normalize();
        return std::move(dag_);
    }

private:
    const DerivationRecord& atom_record(AtomId a, const DerivationRecord& from) const {
        auto it = atoms_.find(a);
        if (it == atoms_.end()) {
            throw Error("internal error: " + from.text + " links to unexplained atom " + ground_.atoms[a].to_string());
        }
        return it->second;
    }

    const DerivationRecord& aggregate_record(std::size_t g, const DerivationRecord& from) const {
        auto it = aggregates_.find(g);
        if (it == aggregates_.end()) {
            throw Error("internal error: " + from.text + " links to unexplained aggregate " +
                        ground_.aggregates[g].id);
        }
        return it->second;
    }

    void link(const DerivationRecord& from, const DerivationRecord& to) { dag_.links.emplace_back(from.text, to.text); }

    void link_body(const DerivationRecord& from, const GroundRule& rule, const AtomId* skip) {
        for (auto a : rule.pos) {
            if (skip && a == *skip) continue;
            link(from, atom_record(a, from));
        }
        for (auto a : rule.neg) link(from, atom_record(a, from));
        for (auto g : rule.aggregates) link(from, aggregate_record(g, from));
    }

    const GroundRule& rule_of(const DerivationRecord& r) const {
        for (const auto& rule : ground_.rules) {
            if (rule.id == r.reason.rule) return rule;
        }
        throw Error("internal error: unknown rule " + r.reason.rule);
    }

    void link_aggregate(const DerivationRecord& r) {
        std::set<AtomId> seen;
        for (const auto& e : ground_.aggregates[r.subject].elements) {
            if (seen.insert(e.atom).second) link(r, atom_record(e.atom, r));
        }
    }

    void link_atom(const DerivationRecord& r) {
        const auto atom = static_cast<AtomId>(r.subject);
        switch (r.reason.kind) {
            case ReasonKind::assumption:
            case ReasonKind::initial_well_founded:
                return;
            case ReasonKind::support:
                link_body(r, rule_of(r), nullptr);
                return;
            case ReasonKind::required_to_falsify_body: {
                const auto& rule = rule_of(r);
                for (auto h : rule.head) link(r, atom_record(h, r));
                link_body(r, rule, &atom);
                return;
            }
            case ReasonKind::choice_rule: {
                const auto& rule = rule_of(r);
                for (auto h : rule.head) {
                    if (answer_set_.test(h)) link(r, atom_record(h, r));
                }
                link_body(r, rule, nullptr);
                return;
            }
            case ReasonKind::lack_of_support:
                for (auto ri : ground_.head_rules[atom]) link_false_element(r, ground_.rules[ri]);
                return;
        }
    }

    void link_false_element(const DerivationRecord& r, const GroundRule& rule) {
        const DerivationRecord* best = nullptr;
        auto consider = [&](const DerivationRecord* c, Truth wanted) {
            if (!c || c->truth != wanted || c->index >= r.index) return;
            if (!best || std::tie(c->index, c->text) < std::tie(best->index, best->text)) best = c;
        };
        for (auto a : rule.pos) {
            auto it = atoms_.find(a);
            consider(it == atoms_.end() ? nullptr : &it->second, Truth::f);
        }
        for (auto a : rule.neg) {
            auto it = atoms_.find(a);
            consider(it == atoms_.end() ? nullptr : &it->second, Truth::t);
        }
        for (auto g : rule.aggregates) {
            auto it = aggregates_.find(g);
            consider(it == aggregates_.end() ? nullptr : &it->second, Truth::f);
        }
        if (!best) {
            throw Error("internal error: no earlier false body element of " + rule.id + " for " + r.text);
        }
        link(r, *best);
    }

    const GroundProgram& ground_;
    const AtomSet& answer_set_;
    std::map<AtomId, DerivationRecord> atoms_;
    std::map<std::size_t, DerivationRecord> aggregates_;
    ExplanationDag dag_;
};

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

ExplanationDag build_dag(const Derivation& derivation, const GroundProgram& ground, const AtomSet& answer_set) {
    return DagBuilder(derivation, ground, answer_set).build(derivation);
}

ExplanationDag restrict_reachable(const ExplanationDag& dag, const std::string& root) {
    if (!dag.find(root)) throw Error("not a vertex of the explanation: " + root);
    std::map<std::string, std::vector<std::string>> succ;
    for (const auto& [from, to] : dag.links) succ[from].push_back(to);
    std::set<std::string> seen{root};
    std::deque<std::string> queue{root};
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (const auto& w : succ[v]) {
            if (seen.insert(w).second) queue.push_back(w);
        }
    }
    ExplanationDag out;
    for (const auto& v : dag.vertices) {
        if (seen.count(v.id)) out.vertices.push_back(v);
    }
    for (const auto& l : dag.links) {
        if (seen.count(l.first)) out.links.push_back(l);
    }
    out.normalize();
    return out;
}

std::optional<std::vector<std::string>> check_acyclic(const ExplanationDag& dag) {
    std::map<std::string, std::vector<std::string>> succ;
    for (const auto& [from, to] : dag.links) succ[from].push_back(to);
    enum class Mark { white, grey, black };
    std::map<std::string, Mark> mark;
    std::vector<std::string> stack;
    std::optional<std::vector<std::string>> cycle;

    auto visit = [&](auto&& self, const std::string& v) -> bool {
        mark[v] = Mark::grey;
        stack.push_back(v);
        for (const auto& w : succ[v]) {
            auto m = mark.count(w) ? mark[w] : Mark::white;
            if (m == Mark::grey) {
                auto it = std::find(stack.begin(), stack.end(), w);
                cycle = std::vector<std::string>(it, stack.end());
                cycle->push_back(w);
                return true;
            }
            if (m == Mark::white && self(self, w)) return true;
        }
        stack.pop_back();
        mark[v] = Mark::black;
        return false;
    };
    std::vector<std::string> roots;
    for (const auto& v : dag.vertices) roots.push_back(v.id);
    for (const auto& [from, to] : dag.links) roots.push_back(from);
    for (const auto& v : roots) {
        if (!mark.count(v) && visit(visit, v)) return cycle;
    }
    return std::nullopt;
}

std::string to_dot(const ExplanationDag& dag) {
    if (dag.vertices.empty() && dag.links.empty()) return "digraph explanation {}\n";
    std::string out = "digraph explanation {\n";
    for (const auto& v : dag.vertices) {
        out += "  " + quote(v.id) + " [label=" + quote(v.label()) + ", reason=" + quote(v.reason.to_string()) + "];\n";
    }
    for (const auto& [from, to] : dag.links) out += "  " + quote(from) + " -> " + quote(to) + ";\n";
    return out + "}\n";
}

std::string to_json(const ExplanationDag& dag) {
    nlohmann::ordered_json doc;
    doc["nodes"] = nlohmann::ordered_json::array();
    doc["links"] = nlohmann::ordered_json::array();
    for (const auto& v : dag.vertices) {
        doc["nodes"].push_back({{"id", v.id},
                                {"truth", v.truth == Truth::t ? "true" : "false"},
                                {"reason", v.reason.to_string()},
                                {"index", v.index},
                                {"kind", v.aggregate ? "aggregate" : "atom"}});
    }
    for (const auto& [from, to] : dag.links) doc["links"].push_back({{"source", from}, {"target", to}});
    return doc.dump();
}

ExplanationDag from_json(const std::string& text) {
    ExplanationDag dag;
    try {
        auto doc = nlohmann::json::parse(text);
        for (const auto& n : doc.at("nodes")) {
            DagVertex v;
            v.id = n.at("id").get<std::string>();
            v.truth = n.at("truth").get<std::string>() == "true" ? Truth::t : Truth::f;
            v.reason = Reason::parse(n.at("reason").get<std::string>());
            v.index = n.at("index").get<std::size_t>();
            v.aggregate = n.at("kind").get<std::string>() == "aggregate";
            dag.vertices.push_back(std::move(v));
        }
        for (const auto& l : doc.at("links")) {
            dag.links.emplace_back(l.at("source").get<std::string>(), l.at("target").get<std::string>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid explanation JSON: ") + e.what());
    }
    dag.normalize();
    return dag;
}

}  // namespace whyasp
