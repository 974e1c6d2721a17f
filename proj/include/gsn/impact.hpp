#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "gsn/model.hpp"
#include "gsn/registry.hpp"

namespace gsn {

enum class FindingKind {
    DuplicateEvidenceVersion,
    StaleManifestEntry,
    StaleManifestEntryTransitive,
    ChangedArtifactHit,
    StaleArtifactRef,
    VersionAmbiguity,
    Downgrade,
    UnknownArtifact,
};

inline std::string_view to_string(FindingKind kind) {
    switch (kind) {
        case FindingKind::DuplicateEvidenceVersion: return "duplicate-evidence-version";
        case FindingKind::StaleManifestEntry: return "stale-manifest-entry";
        case FindingKind::StaleManifestEntryTransitive: return "stale-manifest-entry-transitive";
        case FindingKind::ChangedArtifactHit: return "changed-artifact-hit";
        case FindingKind::StaleArtifactRef: return "stale-artifact-ref";
        case FindingKind::VersionAmbiguity: return "version-ambiguity";
        case FindingKind::Downgrade: return "downgrade";
        case FindingKind::UnknownArtifact: return "unknown-artifact";
    }
    return "?";
}

inline std::optional<FindingKind> parse_finding_kind(std::string_view text) {
    for (auto k : {FindingKind::DuplicateEvidenceVersion, FindingKind::StaleManifestEntry,
                   FindingKind::StaleManifestEntryTransitive, FindingKind::ChangedArtifactHit,
                   FindingKind::StaleArtifactRef, FindingKind::VersionAmbiguity,
                   FindingKind::Downgrade, FindingKind::UnknownArtifact})
        if (text == to_string(k)) return k;
    return std::nullopt;
}

/// Warnings surface anomalies without judging the evidence; they never make
/// elements suspect and never affect the exit status.
inline bool is_warning(FindingKind kind) {
    return kind == FindingKind::VersionAmbiguity || kind == FindingKind::Downgrade ||
           kind == FindingKind::UnknownArtifact;
}

/// One analysis result. `element` is absent only for registry-level
/// findings (a scenario downgrade has no annotated element to point at).
struct Finding {
    FindingKind kind;
    std::optional<ElementId> element;
    std::optional<std::string> artifact;
    std::optional<Version> cited_version;
    std::optional<Version> current_version;
    std::vector<std::string> via;  // provenance path, for transitive findings
    std::string message;

    friend bool operator==(const Finding&, const Finding&) = default;
};

namespace detail {

inline int kind_rank(FindingKind kind) { return static_cast<int>(kind); }

inline std::string version_key(const std::optional<Version>& v) {
    return v ? v->str() : std::string();
}

inline auto finding_sort_key(const Finding& f) {
    return std::make_tuple(kind_rank(f.kind), f.element ? f.element->str() : std::string(),
                           f.artifact.value_or(std::string()), version_key(f.cited_version),
                           version_key(f.current_version), f.via, f.message);
}

/// Identity used when merging findings from several checks.
inline auto finding_dedup_key(const Finding& f) {
    return std::make_tuple(f.kind, f.element ? f.element->str() : std::string(),
                           f.artifact.value_or(std::string()), version_key(f.cited_version),
                           version_key(f.current_version));
}

inline void sort_findings(std::vector<Finding>& findings) {
    std::sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
        return finding_sort_key(a) < finding_sort_key(b);
    });
}

}  // namespace detail

enum class Direction { Upward, Downward };

inline std::string_view to_string(Direction d) {
    return d == Direction::Upward ? "upward" : "downward";
}

struct PropagatedSuspect {
    ElementId element;
    ElementId cause;  // the directly flagged element this suspicion came from
    Direction direction;

    auto operator<=>(const PropagatedSuspect&) const = default;
};

/// Elements whose validity is in doubt: those named by findings plus those
/// reached by propagation. An element that is both is reported as direct only.
struct SuspectSet {
    std::set<ElementId> directly_flagged;
    std::set<PropagatedSuspect> propagated;

    bool contains(const ElementId& id) const {
        if (directly_flagged.count(id)) return true;
        for (const auto& p : propagated)
            if (p.element == id) return true;
        return false;
    }

    bool empty() const { return directly_flagged.empty() && propagated.empty(); }

    friend bool operator==(const SuspectSet&, const SuspectSet&) = default;
};

struct InputsSummary {
    std::string argument_name;
    std::string registry_name;
    std::string scenario_name;
    std::size_t element_count = 0;
    std::size_t artifact_count = 0;
    std::size_t change_count = 0;
    bool has_scenario = false;
    bool transitive = false;

    friend bool operator==(const InputsSummary&, const InputsSummary&) = default;
};

struct ImpactReport {
    std::vector<Finding> findings;  // sorted: kind, element, artifact, versions
    SuspectSet suspects;
    InputsSummary inputs;

    bool has_failures() const {
        for (const auto& f : findings)
            if (!is_warning(f.kind)) return true;
        return false;
    }

    friend bool operator==(const ImpactReport&, const ImpactReport&) = default;
};

namespace detail {

inline std::string path_suffix(const std::vector<std::string>& via) {
    if (via.empty()) return {};
    std::string out = " (via ";
    for (std::size_t i = 0; i < via.size(); ++i) {
        if (i > 0) out += " -> ";
        out += via[i];
    }
    return out + ")";
}

/// The paper's staleness predicate over one closed-or-direct manifest:
/// flag entry (a, v_i) whenever the registry's current v satisfies v > v_i.
/// `restrict_to` limits the scan to scenario artifacts (ChangedArtifactHit
/// searches); `exclude` removes them instead (so a combined run reports each
/// hit exactly once).
struct ManifestScanPolicy {
    const std::set<std::string>* restrict_to = nullptr;
    const std::set<std::string>* exclude = nullptr;
    FindingKind direct_kind = FindingKind::StaleManifestEntry;
    FindingKind transitive_kind = FindingKind::StaleManifestEntryTransitive;
    bool emit_unknown = true;

    bool wants(const std::string& artifact) const {
        if (restrict_to && !restrict_to->count(artifact)) return false;
        if (exclude && exclude->count(artifact)) return false;
        return true;
    }
};

inline std::vector<Finding> scan_manifests(const ArgumentGraph& graph, const ArtifactRegistry& reg,
                                           bool transitive, const ManifestScanPolicy& policy) {
    std::vector<Finding> out;
    for (const Element& solution : solutions_of(graph)) {
        const InputManifest& direct = solution.solution->input_manifest;

        std::vector<ClosureEntry> entries;
        if (transitive) {
            ManifestClosure closed = manifest_closure(reg, direct);
            entries = std::move(closed.entries);
            for (const auto& ambiguity : closed.ambiguities) {
                std::string versions;
                for (std::size_t i = 0; i < ambiguity.versions.size(); ++i) {
                    if (i > 0) versions += ", ";
                    versions += ambiguity.versions[i].str();
                }
                out.push_back({FindingKind::VersionAmbiguity, solution.id, ambiguity.artifact,
                               std::nullopt, std::nullopt, {},
                               "closure of \"" + solution.id.str() + "\" reaches " +
                                   ambiguity.artifact + " at versions " + versions});
            }
        } else {
            for (const auto& ref : direct.entries) entries.push_back({ref, {}});
        }

        for (const auto& entry : entries) {
            const std::string& artifact = entry.ref.artifact;
            if (!policy.wants(artifact)) continue;
            const Version* current = reg.current_version(artifact);
            if (!current) {
                if (policy.emit_unknown && entry.via.empty()) {
                    out.push_back({FindingKind::UnknownArtifact, solution.id, artifact,
                                   entry.ref.version, std::nullopt, {},
                                   "input " + artifact + " is not in the registry"});
                }
                continue;
            }
            if (compare(*current, entry.ref.version) != std::weak_ordering::greater) continue;
            FindingKind kind = entry.via.empty() ? policy.direct_kind : policy.transitive_kind;
            out.push_back({kind, solution.id, artifact, entry.ref.version, *current, entry.via,
                           "input " + artifact + " cited at " + entry.ref.version.str() +
                               ", registry now at " + current->str() +
                               path_suffix(entry.via)});
        }
    }
    detail::sort_findings(out);
    return out;
}

}  // namespace detail

/// Check: two different versions of the same item of evidence cited in one
/// argument. Emits one finding per citing solution, naming every version.
inline std::vector<Finding> check_duplicate_evidence(const ArgumentGraph& graph) {
    struct Citation {
        ElementId element;
        Version version;
    };
    std::map<std::string, std::vector<Citation>> by_evidence;
    for (const Element& solution : solutions_of(graph))
        by_evidence[solution.solution->evidence_id].push_back(
            {solution.id, solution.solution->evidence_version});

    std::vector<Finding> out;
    for (const auto& [evidence_id, citations] : by_evidence) {
        std::vector<Version> distinct;
        for (const auto& c : citations) {
            bool known = std::any_of(distinct.begin(), distinct.end(),
                                     [&](const Version& v) { return v == c.version; });
            if (!known) distinct.push_back(c.version);
        }
        if (distinct.size() < 2) continue;
        std::sort(distinct.begin(), distinct.end(), structurally_less);

        std::string versions;
        for (std::size_t i = 0; i < distinct.size(); ++i) {
            if (i > 0) versions += ", ";
            versions += distinct[i].str();
        }
        for (const auto& c : citations) {
            out.push_back({FindingKind::DuplicateEvidenceVersion, c.element, evidence_id,
                           c.version, std::nullopt, {},
                           "evidence " + evidence_id + " is cited at versions " + versions +
                               " across this argument; this solution cites " + c.version.str()});
        }
    }
    detail::sort_findings(out);
    return out;
}

/// Check: out-of-date evidence. Scans every solution's input manifest (its
/// closure when transitive) for entries strictly older than the registry.
inline std::vector<Finding> check_stale_manifests(const ArgumentGraph& graph,
                                                  const ArtifactRegistry& reg,
                                                  bool transitive = false) {
    return detail::scan_manifests(graph, reg, transitive, {});
}

/// Check: known changes. Applies the scenario, then searches manifests for
/// old versions of exactly the changed artifacts. Scenario downgrades are
/// reported as warnings, not interpreted.
inline std::vector<Finding> check_changed_artifacts(const ArgumentGraph& graph,
                                                    const ArtifactRegistry& reg,
                                                    const ChangeScenario& scenario,
                                                    bool transitive = false) {
    std::vector<Finding> out;
    std::set<std::string> changed;
    for (const auto& change : scenario.changes) {
        changed.insert(change.artifact);
        const Version* previous = reg.current_version(change.artifact);
        if (previous && compare(change.new_version, *previous) == std::weak_ordering::less) {
            out.push_back({FindingKind::Downgrade, std::nullopt, change.artifact, *previous,
                           change.new_version, {},
                           "scenario lowers " + change.artifact + " from " + previous->str() +
                               " to " + change.new_version.str()});
        }
    }
    if (changed.empty()) return out;

    ArtifactRegistry updated = apply_scenario(reg, scenario);
    detail::ManifestScanPolicy policy;
    policy.restrict_to = &changed;
    policy.direct_kind = FindingKind::ChangedArtifactHit;
    policy.transitive_kind = FindingKind::ChangedArtifactHit;
    policy.emit_unknown = false;  // scenario artifacts are always registered after apply
    auto hits = detail::scan_manifests(graph, updated, transitive, policy);
    out.insert(out.end(), hits.begin(), hits.end());
    detail::sort_findings(out);
    return out;
}

/// Check: element annotations citing an out-of-date artifact version.
inline std::vector<Finding> check_artifact_refs(const ArgumentGraph& graph,
                                                const ArtifactRegistry& reg) {
    std::vector<Finding> out;
    for (const auto& [id, element] : graph.elements()) {
        for (const auto& ref : element.artifact_refs) {
            const Version* current = reg.current_version(ref.artifact);
            if (!current) {
                out.push_back({FindingKind::UnknownArtifact, id, ref.artifact, ref.version,
                               std::nullopt, {},
                               "reference " + ref.artifact + " is not in the registry"});
                continue;
            }
            if (compare(*current, ref.version) != std::weak_ordering::greater) continue;
            out.push_back({FindingKind::StaleArtifactRef, id, ref.artifact, ref.version, *current,
                           {},
                           "reference " + ref.artifact + " cited at " + ref.version.str() +
                               ", registry now at " + current->str()});
        }
    }
    detail::sort_findings(out);
    return out;
}

/// Marks the argument elements whose validity a set of findings puts in
/// doubt. A flagged solution makes everything resting on it suspect
/// (upward); a flagged claim or context makes its own supporting argument
/// suspect as well (downward plus upward). Warnings do not propagate.
inline SuspectSet propagate_suspicion(const ArgumentGraph& graph,
                                      const std::vector<Finding>& findings) {
    SuspectSet out;
    for (const Finding& f : findings) {
        if (is_warning(f.kind) || !f.element) continue;
        if (graph.contains(*f.element)) out.directly_flagged.insert(*f.element);
    }

    for (const ElementId& cause : out.directly_flagged) {
        const Element* element = graph.find(cause);
        for (const ElementId& up : ancestors_of(graph, cause))
            out.propagated.insert({up, cause, Direction::Upward});
        if (element->kind != ElementKind::Solution) {
            for (const ElementId& down : descendants_of(graph, cause))
                out.propagated.insert({down, cause, Direction::Downward});
        }
    }

    // Directly flagged elements are reported as direct only.
    for (auto it = out.propagated.begin(); it != out.propagated.end();) {
        if (out.directly_flagged.count(it->element))
            it = out.propagated.erase(it);
        else
            ++it;
    }
    return out;
}

/// Runs every check and assembles the deterministic report.
///
/// With a scenario the analysis describes the post-change world: manifest
/// and reference checks run against the updated registry, and manifest hits
/// are partitioned so that entries citing a changed artifact surface as
/// ChangedArtifactHit and everything else as StaleManifestEntry. No hit is
/// reported twice.
inline ImpactReport run_all(const ArgumentGraph& graph, const ArtifactRegistry& reg,
                            const std::optional<ChangeScenario>& scenario = std::nullopt,
                            bool transitive = false) {
    ImpactReport report;
    report.inputs.element_count = graph.elements().size();
    report.inputs.artifact_count = reg.records().size();
    report.inputs.has_scenario = scenario.has_value();
    report.inputs.change_count = scenario ? scenario->changes.size() : 0;
    report.inputs.transitive = transitive;

    std::vector<Finding> findings = check_duplicate_evidence(graph);

    ArtifactRegistry effective = scenario ? apply_scenario(reg, *scenario) : reg;
    std::set<std::string> changed;
    if (scenario)
        for (const auto& change : scenario->changes) changed.insert(change.artifact);

    detail::ManifestScanPolicy stale_policy;
    if (!changed.empty()) stale_policy.exclude = &changed;
    auto stale = detail::scan_manifests(graph, effective, transitive, stale_policy);
    findings.insert(findings.end(), stale.begin(), stale.end());

    if (scenario) {
        auto hits = check_changed_artifacts(graph, reg, *scenario, transitive);
        findings.insert(findings.end(), hits.begin(), hits.end());
    }

    auto refs = check_artifact_refs(graph, effective);
    findings.insert(findings.end(), refs.begin(), refs.end());

    detail::sort_findings(findings);
    findings.erase(std::unique(findings.begin(), findings.end(),
                               [](const Finding& a, const Finding& b) {
                                   return detail::finding_dedup_key(a) ==
                                          detail::finding_dedup_key(b);
                               }),
                   findings.end());

    report.findings = std::move(findings);
    report.suspects = propagate_suspicion(graph, report.findings);
    return report;
}

}  // namespace gsn
