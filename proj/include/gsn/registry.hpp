#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gsn/artifact.hpp"
#include "gsn/diagnostics.hpp"

namespace gsn {

class ProvenanceCycle : public Error {
public:
    explicit ProvenanceCycle(const std::vector<std::string>& members)
        : Error(describe(members)), members_(members) {}

    const std::vector<std::string>& members() const { return members_; }

private:
    static std::string describe(const std::vector<std::string>& members) {
        std::string out = "provenance cycle through {";
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (i > 0) out += ", ";
            out += members[i];
        }
        return out + "}";
    }

    std::vector<std::string> members_;
};

/// Current version of one development artifact plus its own provenance.
/// An empty produced_from marks a source artifact.
struct ArtifactRecord {
    std::string artifact;
    Version current_version;
    InputManifest produced_from;

    friend bool operator==(const ArtifactRecord&, const ArtifactRecord&) = default;
};

class ArtifactRegistry {
public:
    void add_record(ArtifactRecord record) {
        auto [it, inserted] = records_.emplace(record.artifact, std::move(record));
        if (!inserted) throw Error("duplicate artifact \"" + it->first + "\"");
    }

    const std::map<std::string, ArtifactRecord>& records() const { return records_; }

    const ArtifactRecord* find(const std::string& artifact) const {
        auto it = records_.find(artifact);
        return it == records_.end() ? nullptr : &it->second;
    }

    const Version* current_version(const std::string& artifact) const {
        const ArtifactRecord* r = find(artifact);
        return r ? &r->current_version : nullptr;
    }

    void set_current_version(const std::string& artifact, Version version) {
        auto it = records_.find(artifact);
        if (it == records_.end()) throw Error("unknown artifact \"" + artifact + "\"");
        it->second.current_version = std::move(version);
    }

    friend bool operator==(const ArtifactRegistry&, const ArtifactRegistry&) = default;

private:
    std::map<std::string, ArtifactRecord> records_;
};

/// A declared set of artifact version bumps to analyze. Downgrades are
/// accepted; the impact engine reports them instead of interpreting them.
struct ChangeScenario {
    struct Change {
        std::string artifact;
        Version new_version;

        friend bool operator==(const Change&, const Change&) = default;
    };

    std::vector<Change> changes;

    bool names(const std::string& artifact) const {
        for (const auto& c : changes)
            if (c.artifact == artifact) return true;
        return false;
    }

    friend bool operator==(const ChangeScenario&, const ChangeScenario&) = default;
};

namespace detail {

/// One cycle in the produced_from relation, or empty. Self-references count.
inline std::vector<std::string> find_provenance_cycle(const ArtifactRegistry& reg) {
    enum class Mark { Unseen, Active, Done };
    std::map<std::string, Mark> mark;
    std::vector<std::string> stack;
    std::vector<std::string> cycle;

    auto dfs = [&](auto&& self, const std::string& node) -> bool {
        mark[node] = Mark::Active;
        stack.push_back(node);
        const ArtifactRecord* record = reg.find(node);
        if (record) {
            for (const auto& input : record->produced_from.entries) {
                if (!reg.find(input.artifact)) continue;
                Mark m = mark.count(input.artifact) ? mark[input.artifact] : Mark::Unseen;
                if (m == Mark::Active) {
                    auto start = std::find(stack.begin(), stack.end(), input.artifact);
                    cycle.assign(start, stack.end());
                    return true;
                }
                if (m == Mark::Unseen && self(self, input.artifact)) return true;
            }
        }
        stack.pop_back();
        mark[node] = Mark::Done;
        return false;
    };

    for (const auto& [id, record] : reg.records()) {
        (void)record;
        Mark m = mark.count(id) ? mark[id] : Mark::Unseen;
        if (m == Mark::Unseen && dfs(dfs, id)) {
            std::sort(cycle.begin(), cycle.end());
            return cycle;
        }
    }
    return {};
}

}  // namespace detail

/// Structural checks on a registry. Provenance cycles are violations;
/// manifest entries naming unregistered artifacts are warnings, because
/// safety arguments routinely cite artifacts outside configuration
/// management. Sorted by rule, then subject.
inline std::vector<StructuralViolation> validate_registry(const ArtifactRegistry& reg) {
    std::vector<StructuralViolation> out;

    auto cycle = detail::find_provenance_cycle(reg);
    if (!cycle.empty()) {
        std::string names;
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (i > 0) names += ", ";
            names += cycle[i];
        }
        out.push_back({"provenance-cycle", Severity::Violation, cycle.front(),
                       "produced_from cycle through {" + names + "}", cycle});
    }

    for (const auto& [id, record] : reg.records()) {
        for (const auto& input : record.produced_from.entries) {
            if (input.artifact == id) {
                out.push_back({"self-reference", Severity::Violation, id,
                               "artifact \"" + id + "\" lists itself as an input", {}});
            } else if (!reg.find(input.artifact)) {
                out.push_back({"unregistered-input", Severity::Warning, id,
                               "artifact \"" + id + "\" was produced from unregistered \"" +
                                   input.artifact + "\"",
                               {}});
            }
        }
    }

    std::sort(out.begin(), out.end(), [](const StructuralViolation& a, const StructuralViolation& b) {
        return std::tie(a.rule, a.subject, a.message) < std::tie(b.rule, b.subject, b.message);
    });
    return out;
}

/// Functional update: returns a registry with each changed artifact's current
/// version replaced. Artifacts the registry has never seen are inserted as
/// source artifacts.
inline ArtifactRegistry apply_scenario(const ArtifactRegistry& reg, const ChangeScenario& scenario) {
    ArtifactRegistry out = reg;
    for (const auto& change : scenario.changes) {
        if (out.find(change.artifact))
            out.set_current_version(change.artifact, change.new_version);
        else
            out.add_record({change.artifact, change.new_version, {}});
    }
    return out;
}

/// One entry of a closed manifest: the cited (artifact, version) plus the
/// provenance path it was reached through. Direct entries have an empty path.
struct ClosureEntry {
    ArtifactRef ref;
    std::vector<std::string> via;

    friend bool operator==(const ClosureEntry&, const ClosureEntry&) = default;
};

/// Same artifact reached at two or more versions along different paths.
struct VersionAmbiguity {
    std::string artifact;
    std::vector<Version> versions;  // sorted, distinct

    friend bool operator==(const VersionAmbiguity&, const VersionAmbiguity&) = default;
};

struct ManifestClosure {
    std::vector<ClosureEntry> entries;      // sorted by artifact id, then version
    std::vector<VersionAmbiguity> ambiguities;

    InputManifest manifest() const {
        InputManifest m;
        for (const auto& e : entries) m.entries.push_back(e.ref);
        return m;
    }

    friend bool operator==(const ManifestClosure&, const ManifestClosure&) = default;
};

/// The least manifest containing `m` and, for every registered entry, the
/// entries of its record's closed produced_from manifest. Indirect entries
/// carry the version recorded in the producing record's manifest. An artifact
/// reached at two versions keeps both entries and gains an ambiguity note.
inline ManifestClosure manifest_closure(const ArtifactRegistry& reg, const InputManifest& m) {
    // Entries are keyed by (artifact, version) with trailing zero components
    // stripped, so "1" and "1.0" of one artifact collapse to a single entry.
    // Stripped component lists order lexicographically exactly like the
    // zero-padded numeric comparison, which keeps the output sorted.
    struct Key {
        std::string artifact;
        std::vector<std::uint64_t> normalized;

        bool operator<(const Key& other) const {
            return std::tie(artifact, normalized) < std::tie(other.artifact, other.normalized);
        }
    };
    auto make_key = [](const ArtifactRef& ref) {
        Key key{ref.artifact, ref.version.components};
        while (!key.normalized.empty() && key.normalized.back() == 0) key.normalized.pop_back();
        return key;
    };

    struct Reached {
        ArtifactRef ref;
        std::vector<std::string> via;
    };
    std::map<Key, Reached> reached;
    std::vector<std::string> expansion_stack;

    auto expand = [&](auto&& self, const ArtifactRef& ref, std::vector<std::string> via) -> void {
        if (std::find(expansion_stack.begin(), expansion_stack.end(), ref.artifact) !=
            expansion_stack.end()) {
            std::vector<std::string> cycle = expansion_stack;
            cycle.push_back(ref.artifact);
            throw ProvenanceCycle(cycle);
        }

        auto [it, inserted] = reached.try_emplace(make_key(ref), Reached{ref, via});
        if (!inserted) {
            // Reached again along another path; keep the canonical via.
            if (via.size() < it->second.via.size() ||
                (via.size() == it->second.via.size() && via < it->second.via))
                it->second.via = std::move(via);
            return;
        }

        const ArtifactRecord* record = reg.find(ref.artifact);
        if (!record) return;  // unregistered inputs are opaque to closure

        expansion_stack.push_back(ref.artifact);
        via.push_back(ref.artifact);
        for (const auto& input : record->produced_from.entries) self(self, input, via);
        expansion_stack.pop_back();
    };

    for (const auto& entry : m.entries) expand(expand, entry, {});

    ManifestClosure out;
    std::map<std::string, std::vector<Version>> versions_by_artifact;
    for (const auto& [key, hit] : reached) {
        versions_by_artifact[key.artifact].push_back(hit.ref.version);
        out.entries.push_back({hit.ref, hit.via});
    }
    for (auto& [artifact, versions] : versions_by_artifact) {
        if (versions.size() < 2) continue;
        std::sort(versions.begin(), versions.end(), structurally_less);
        out.ambiguities.push_back({artifact, versions});
    }
    return out;
}

}  // namespace gsn
