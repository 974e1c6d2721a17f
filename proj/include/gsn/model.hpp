#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gsn/artifact.hpp"
#include "gsn/diagnostics.hpp"

namespace gsn {

class UnknownElement : public Error {
public:
    explicit UnknownElement(const std::string& id)
        : Error("unknown element \"" + id + "\"") {}
};

/// Identifier of one argument element, unique within a graph, e.g. "S:CtrlFloAn".
class ElementId {
public:
    explicit ElementId(std::string value) : value_(std::move(value)) {
        if (!is_valid(value_)) throw Error("invalid element id \"" + value_ + "\"");
    }

    static bool is_valid(std::string_view v) {
        return !v.empty() && !std::isspace(static_cast<unsigned char>(v.front())) &&
               !std::isspace(static_cast<unsigned char>(v.back()));
    }

    const std::string& str() const { return value_; }

    auto operator<=>(const ElementId&) const = default;

private:
    std::string value_;
};

enum class ElementKind { Goal, Strategy, Solution, Context, Assumption, Justification };

inline std::string_view to_string(ElementKind k) {
    switch (k) {
        case ElementKind::Goal: return "Goal";
        case ElementKind::Strategy: return "Strategy";
        case ElementKind::Solution: return "Solution";
        case ElementKind::Context: return "Context";
        case ElementKind::Assumption: return "Assumption";
        case ElementKind::Justification: return "Justification";
    }
    return "?";
}

inline std::optional<ElementKind> parse_element_kind(std::string_view text) {
    for (auto k : {ElementKind::Goal, ElementKind::Strategy, ElementKind::Solution,
                   ElementKind::Context, ElementKind::Assumption, ElementKind::Justification})
        if (text == to_string(k)) return k;
    return std::nullopt;
}

/// Evidence bookkeeping attached to every solution element: what the evidence
/// is, which version of it is cited, and what it was produced from.
struct SolutionAnnotation {
    std::string evidence_id;        // identity of the evidence item; may be shared
    Version evidence_version;
    InputManifest input_manifest;
    std::string lifecycle_phase;    // e.g. "Software Architecture Design"
    std::optional<std::string> standard_ref;  // stored and reported, never analyzed

    friend bool operator==(const SolutionAnnotation&, const SolutionAnnotation&) = default;
};

struct Element {
    ElementId id;
    ElementKind kind;
    std::string statement;
    std::optional<std::string> module;
    std::vector<ArtifactRef> artifact_refs;
    std::optional<SolutionAnnotation> solution;  // present iff kind == Solution

    friend bool operator==(const Element&, const Element&) = default;
};

struct Edge {
    ElementId from;
    ElementId to;

    auto operator<=>(const Edge&) const = default;
};

/// A GSN argument: elements plus the two edge relations. Edges are stored as
/// id pairs so that structurally broken graphs stay representable; whether
/// the graph is well formed is validate_graph's business.
class ArgumentGraph {
public:
    void add_element(Element e) {
        auto [it, inserted] = elements_.emplace(e.id, std::move(e));
        if (!inserted) throw Error("duplicate element id \"" + it->first.str() + "\"");
    }

    void add_supported_by(ElementId parent, ElementId child) {
        supported_by_.push_back({std::move(parent), std::move(child)});
    }

    void add_in_context_of(ElementId subject, ElementId context) {
        in_context_of_.push_back({std::move(subject), std::move(context)});
    }

    const std::map<ElementId, Element>& elements() const { return elements_; }
    const std::vector<Edge>& supported_by() const { return supported_by_; }
    const std::vector<Edge>& in_context_of() const { return in_context_of_; }

    const Element* find(const ElementId& id) const {
        auto it = elements_.find(id);
        return it == elements_.end() ? nullptr : &it->second;
    }

    bool contains(const ElementId& id) const { return elements_.count(id) != 0; }

    friend bool operator==(const ArgumentGraph&, const ArgumentGraph&) = default;

private:
    std::map<ElementId, Element> elements_;
    std::vector<Edge> supported_by_;
    std::vector<Edge> in_context_of_;
};

namespace detail {

inline bool supported_by_kinds_ok(ElementKind parent, ElementKind child) {
    bool source_ok = parent == ElementKind::Goal || parent == ElementKind::Strategy;
    bool target_ok = child == ElementKind::Goal || child == ElementKind::Strategy ||
                     child == ElementKind::Solution;
    return source_ok && target_ok;
}

inline bool in_context_of_kinds_ok(ElementKind subject, ElementKind context) {
    bool source_ok = subject == ElementKind::Goal || subject == ElementKind::Strategy;
    bool target_ok = context == ElementKind::Context || context == ElementKind::Assumption ||
                     context == ElementKind::Justification;
    return source_ok && target_ok;
}

/// Finds one cycle in the supported_by relation, if any. Returns its members.
inline std::vector<ElementId> find_support_cycle(const ArgumentGraph& graph) {
    std::map<ElementId, std::vector<ElementId>> next;
    for (const auto& e : graph.supported_by())
        if (graph.contains(e.from) && graph.contains(e.to)) next[e.from].push_back(e.to);

    enum class Mark { Unseen, Active, Done };
    std::map<ElementId, Mark> mark;
    std::vector<ElementId> stack;
    std::vector<ElementId> cycle;

    auto dfs = [&](auto&& self, const ElementId& node) -> bool {
        mark[node] = Mark::Active;
        stack.push_back(node);
        for (const auto& succ : next[node]) {
            Mark m = mark.count(succ) ? mark[succ] : Mark::Unseen;
            if (m == Mark::Active) {
                auto start = std::find(stack.begin(), stack.end(), succ);
                cycle.assign(start, stack.end());
                return true;
            }
            if (m == Mark::Unseen && self(self, succ)) return true;
        }
        stack.pop_back();
        mark[node] = Mark::Done;
        return false;
    };

    for (const auto& [id, element] : graph.elements()) {
        (void)element;
        Mark m = mark.count(id) ? mark[id] : Mark::Unseen;
        if (m == Mark::Unseen && dfs(dfs, id)) {
            std::sort(cycle.begin(), cycle.end());
            return cycle;
        }
    }
    return {};
}

}  // namespace detail

/// Checks every well-formedness rule and reports the broken ones as data.
/// Deterministic: violations come back sorted by rule id, then subject.
inline std::vector<StructuralViolation> validate_graph(const ArgumentGraph& graph) {
    std::vector<StructuralViolation> out;

    auto edge_str = [](const Edge& e) { return e.from.str() + " -> " + e.to.str(); };

    auto check_edges = [&](const std::vector<Edge>& edges, bool support) {
        const char* relation = support ? "supported_by" : "in_context_of";
        std::set<Edge> seen;
        for (const Edge& e : edges) {
            const Element* from = graph.find(e.from);
            const Element* to = graph.find(e.to);
            if (!from || !to) {
                const ElementId& missing = !from ? e.from : e.to;
                out.push_back({"edge-endpoint", Severity::Violation, missing.str(),
                               std::string(relation) + " edge " + edge_str(e) +
                                   " names unknown element \"" + missing.str() + "\"",
                               {}});
                continue;
            }
            bool kinds_ok = support ? detail::supported_by_kinds_ok(from->kind, to->kind)
                                    : detail::in_context_of_kinds_ok(from->kind, to->kind);
            if (!kinds_ok) {
                out.push_back({"edge-kind", Severity::Violation, e.from.str(),
                               std::string(relation) + " edge " + edge_str(e) +
                                   " connects " + std::string(to_string(from->kind)) + " to " +
                                   std::string(to_string(to->kind)),
                               {}});
            }
            if (!seen.insert(e).second) {
                out.push_back({"duplicate-edge", Severity::Violation, e.from.str(),
                               std::string("duplicate ") + relation + " edge " + edge_str(e), {}});
            }
        }
    };

    check_edges(graph.supported_by(), true);
    check_edges(graph.in_context_of(), false);

    for (const auto& [id, element] : graph.elements()) {
        bool is_solution = element.kind == ElementKind::Solution;
        if (is_solution && !element.solution) {
            out.push_back({"solution-annotation", Severity::Violation, id.str(),
                           "solution \"" + id.str() + "\" has no evidence annotation", {}});
        } else if (!is_solution && element.solution) {
            out.push_back({"solution-annotation", Severity::Violation, id.str(),
                           std::string(to_string(element.kind)) + " \"" + id.str() +
                               "\" carries an evidence annotation",
                           {}});
        }
    }

    auto cycle = detail::find_support_cycle(graph);
    if (!cycle.empty()) {
        std::string names;
        std::vector<std::string> members;
        for (const auto& id : cycle) {
            if (!names.empty()) names += ", ";
            names += id.str();
            members.push_back(id.str());
        }
        out.push_back({"support-cycle", Severity::Violation, cycle.front().str(),
                       "supported_by cycle through {" + names + "}", members});
    }

    std::sort(out.begin(), out.end(), [](const StructuralViolation& a, const StructuralViolation& b) {
        return std::tie(a.rule, a.subject, a.message) < std::tie(b.rule, b.subject, b.message);
    });
    return out;
}

/// All solution elements, sorted by id.
inline std::vector<Element> solutions_of(const ArgumentGraph& graph) {
    std::vector<Element> out;
    for (const auto& [id, element] : graph.elements())
        if (element.kind == ElementKind::Solution) out.push_back(element);
    return out;
}

/// Elements from which `id` is reachable over supported_by edges, excluding `id`.
inline std::set<ElementId> ancestors_of(const ArgumentGraph& graph, const ElementId& id) {
    if (!graph.contains(id)) throw UnknownElement(id.str());
    std::map<ElementId, std::vector<ElementId>> parents;
    for (const auto& e : graph.supported_by()) parents[e.to].push_back(e.from);

    std::set<ElementId> seen;
    std::vector<ElementId> frontier{id};
    while (!frontier.empty()) {
        ElementId node = frontier.back();
        frontier.pop_back();
        for (const auto& p : parents[node])
            if (p != id && seen.insert(p).second) frontier.push_back(p);
    }
    return seen;
}

/// Elements reachable from `id` over supported_by edges, excluding `id`,
/// plus the in_context_of targets of those reached elements: contextual
/// elements belong to the supporting argument.
inline std::set<ElementId> descendants_of(const ArgumentGraph& graph, const ElementId& id) {
    if (!graph.contains(id)) throw UnknownElement(id.str());
    std::map<ElementId, std::vector<ElementId>> children;
    for (const auto& e : graph.supported_by()) children[e.from].push_back(e.to);

    std::set<ElementId> seen;
    std::vector<ElementId> frontier{id};
    while (!frontier.empty()) {
        ElementId node = frontier.back();
        frontier.pop_back();
        for (const auto& c : children[node])
            if (c != id && seen.insert(c).second) frontier.push_back(c);
    }

    std::set<ElementId> contexts;
    for (const auto& e : graph.in_context_of())
        if (seen.count(e.from) && graph.contains(e.to)) contexts.insert(e.to);
    seen.insert(contexts.begin(), contexts.end());
    return seen;
}

}  // namespace gsn
