#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gsn/version.hpp"

namespace gsn {

/// A (artifact id, version) pair: one citation of a development artifact.
struct ArtifactRef {
    std::string artifact;
    Version version;

    friend bool operator==(const ArtifactRef& a, const ArtifactRef& b) {
        return a.artifact == b.artifact && a.version == b.version;
    }
};

/// The set of inputs an item of evidence (or another artifact) was produced
/// from. Entries carry pairwise-distinct artifact ids; closure outputs relax
/// this to distinct (artifact, version) pairs.
struct InputManifest {
    std::vector<ArtifactRef> entries;

    const ArtifactRef* find(const std::string& artifact) const {
        for (const auto& e : entries)
            if (e.artifact == artifact) return &e;
        return nullptr;
    }

    bool empty() const { return entries.empty(); }

    friend bool operator==(const InputManifest&, const InputManifest&) = default;
};

}  // namespace gsn
