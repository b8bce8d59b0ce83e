#include "whyasp/analysis.hpp"

#include <algorithm>
#include <deque>

namespace whyasp {

namespace {

void binding_variables(const Term& t, std::vector<std::string>& out) {
    if (t.is_variable()) {
        if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    } else if (t.kind() == Term::Kind::function) {
        for (const auto& a : t.args()) binding_variables(a, out);
    }
}

void all_variables(const Atom& a, std::vector<std::string>& out) {
    for (const auto& t : a.args) t.collect_variables(out);
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

void add_unique(std::vector<std::string>& v, const std::string& s) {
    if (!contains(v, s)) v.push_back(s);
}

std::vector<std::string> compute_globals(const Rule& rule) {
    std::vector<std::string> global;
    for (const auto* a : rule.positive_body()) {
        for (const auto& t : a->args) binding_variables(t, global);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto* c : rule.comparisons()) {
            if (c->op != CmpOp::eq) continue;
            auto try_bind = [&](const Term& var, const Term& other) {
                if (!var.is_variable() || contains(global, var.name())) return;
                std::vector<std::string> vs;
                other.collect_variables(vs);
                if (std::all_of(vs.begin(), vs.end(), [&](const auto& v) { return contains(global, v); })) {
                    global.push_back(var.name());
                    changed = true;
                }
            };
            try_bind(c->left, c->right);
            try_bind(c->right, c->left);
        }
    }
    return global;
}

std::vector<std::string> occurrence_order(const Rule& rule) {
    std::vector<std::string> order;
    for (const auto* a : rule.head_atoms()) all_variables(*a, order);
    if (const auto* c = std::get_if<Choice>(&rule.head)) {
        c->lower.collect_variables(order);
        c->upper.collect_variables(order);
    }
    for (const auto& e : rule.body) {
        if (const auto* l = std::get_if<Literal>(&e)) {
            all_variables(l->atom, order);
        } else if (const auto* g = std::get_if<Aggregate>(&e)) {
            g->weight.collect_variables(order);
            for (const auto& t : g->tuple) t.collect_variables(order);
            all_variables(g->condition, order);
            g->guard.collect_variables(order);
        } else {
            const auto& c = std::get<Comparison>(e);
            c.left.collect_variables(order);
            c.right.collect_variables(order);
        }
    }
    return order;
}

}  // namespace

std::vector<std::string> global_variables(const Rule& rule) {
    auto globals = compute_globals(rule);
    std::vector<std::string> out;
    for (const auto& v : occurrence_order(rule)) {
        if (contains(globals, v)) out.push_back(v);
    }
    return out;
}

SafetyReport check_safety(const Rule& rule) {
    SafetyReport report;
    report.source_index = rule.source_index;
    report.rule_text = to_string(rule);
    const auto globals = compute_globals(rule);

    auto need_global = [&](const std::vector<std::string>& vars) {
        for (const auto& v : vars) {
            if (!contains(globals, v)) add_unique(report.unsafe, v);
        }
    };

    std::vector<std::string> vars;
    for (const auto* a : rule.head_atoms()) all_variables(*a, vars);
    if (const auto* c = std::get_if<Choice>(&rule.head)) {
        c->lower.collect_variables(vars);
        c->upper.collect_variables(vars);
    }
    for (const auto* a : rule.positive_body()) all_variables(*a, vars);
    for (const auto* a : rule.negative_body()) all_variables(*a, vars);
    for (const auto* c : rule.comparisons()) {
        c->left.collect_variables(vars);
        c->right.collect_variables(vars);
    }
    need_global(vars);

    for (const auto* g : rule.aggregates()) {
        std::vector<std::string> bound = globals;
        std::vector<std::string> cond_vars;
        for (const auto& t : g->condition.args) binding_variables(t, cond_vars);
        for (const auto& v : cond_vars) {
            if (!contains(globals, v)) add_unique(report.local, v);
            add_unique(bound, v);
        }
        std::vector<std::string> elem_vars;
        g->weight.collect_variables(elem_vars);
        for (const auto& t : g->tuple) t.collect_variables(elem_vars);
        all_variables(g->condition, elem_vars);
        for (const auto& v : elem_vars) {
            if (!contains(bound, v)) add_unique(report.unsafe, v);
        }
        std::vector<std::string> guard_vars;
        g->guard.collect_variables(guard_vars);
        need_global(guard_vars);
    }

    for (const auto& v : occurrence_order(rule)) {
        if (contains(globals, v)) report.global.push_back(v);
    }
    return report;
}

std::string SafetyReport::message() const {
    std::string out = "rule " + std::to_string(source_index) + " (" + rule_text + "): unsafe variable";
    if (unsafe.size() > 1) out += "s";
    for (std::size_t i = 0; i < unsafe.size(); ++i) out += (i ? ", " : " ") + unsafe[i];
    return out;
}

std::string predicate_label(const Atom& atom) {
    return atom.predicate + "/" + std::to_string(atom.arity());
}

bool DependencyGraph::has_edge(const std::string& from, const std::string& to) const {
    return edges.count({from, to}) != 0;
}

bool DependencyGraph::is_aggregate_edge(const std::string& from, const std::string& to) const {
    auto it = edges.find({from, to});
    return it != edges.end() && it->second;
}

DependencyGraph dependency_graph(const Program& program) {
    DependencyGraph g;
    for (const auto& r : program.rules) {
        for (const auto* h : r.head_atoms()) g.vertices.insert(predicate_label(*h));
        for (const auto& e : r.body) {
            if (const auto* l = std::get_if<Literal>(&e)) {
                g.vertices.insert(predicate_label(l->atom));
            } else if (const auto* a = std::get_if<Aggregate>(&e)) {
                g.vertices.insert(predicate_label(a->condition));
            }
        }
        for (const auto* h : r.head_atoms()) {
            const auto from = predicate_label(*h);
            for (const auto* b : r.positive_body()) g.edges.try_emplace({from, predicate_label(*b)}, false);
            for (const auto* a : r.aggregates()) g.edges[{from, predicate_label(a->condition)}] = true;
        }
    }
    return g;
}

StratificationReport check_stratification(const Program& program) {
    const auto g = dependency_graph(program);
    std::map<std::string, std::vector<std::string>> succ;
    for (const auto& [edge, agg] : g.edges) succ[edge.first].push_back(edge.second);

    StratificationReport report;
    for (const auto& [edge, agg] : g.edges) {
        if (!agg) continue;
        const auto& [p, q] = edge;
        // breadth-first search for a path q ->* p
        std::map<std::string, std::string> parent{{q, q}};
        std::deque<std::string> queue{q};
        bool found = false;
        while (!queue.empty() && !found) {
            auto v = queue.front();
            queue.pop_front();
            if (v == p) {
                found = true;
                break;
            }
            for (const auto& w : succ[v]) {
                if (parent.emplace(w, v).second) queue.push_back(w);
            }
        }
        if (!found) continue;
        std::vector<std::string> path;
        for (std::string v = p; v != q; v = parent[v]) path.push_back(v);
        path.push_back(q);
        std::reverse(path.begin(), path.end());
        report.cycle.push_back(p);
        report.cycle.insert(report.cycle.end(), path.begin(), path.end());
        return report;
    }
    return report;
}

std::string StratificationReport::message() const {
    std::string out = "aggregate is not stratified: cycle";
    for (std::size_t i = 0; i < cycle.size(); ++i) out += (i ? " -> " : " ") + cycle[i];
    return out;
}

namespace {

std::string safety_message(const std::vector<SafetyReport>& reports) {
    std::string out;
    for (const auto& r : reports) {
        if (!out.empty()) out += "\n";
        out += r.message();
    }
    return out;
}

}  // namespace

SafetyError::SafetyError(std::vector<SafetyReport> reports)
    : Error(safety_message(reports)), reports_(std::move(reports)) {}

StratificationError::StratificationError(StratificationReport report)
    : Error(report.message()), report_(std::move(report)) {}

void validate_program(const Program& program) {
    std::vector<SafetyReport> bad;
    for (const auto& r : program.rules) {
        auto rep = check_safety(r);
        if (!rep.ok()) bad.push_back(std::move(rep));
    }
    if (!bad.empty()) throw SafetyError(std::move(bad));
    auto strat = check_stratification(program);
    if (!strat.ok()) throw StratificationError(std::move(strat));
}

}  // namespace whyasp
