#pragma once

#include <cstdint>
#include <vector>

#include "mtlsh/scalar_field.hpp"

namespace mtlsh {

struct MergeTreeNode {
    double value = 0.0;
    std::uint32_t vertex_id = 0;
    std::int32_t parent = -1;               // -1 only at the root
    std::vector<std::int32_t> children;
};

/// Rooted tree of critical points. For sublevel trees, leaves are local
/// minima, internal nodes are merging saddles, and the root carries the
/// global maximum; node values increase strictly toward the root under the
/// symbolic (value, vertex_id) order, so flat regions stay resolved.
struct MergeTree {
    std::vector<MergeTreeNode> nodes;
    std::int32_t root = -1;

    std::size_t size() const { return nodes.size(); }
    bool is_leaf(std::int32_t i) const { return nodes[i].children.empty(); }
    std::size_t leaf_count() const;

    /// Edges on the longest root-to-leaf path (0 for a single node).
    int height() const;

    /// Structural invariants: exactly one parentless node (the root),
    /// mutually consistent acyclic links, and strict symbolic monotonicity
    /// along edges — increasing toward the root when increasing_to_root,
    /// decreasing otherwise (superlevel trees). Throws std::invalid_argument.
    void validate(bool increasing_to_root = true) const;
};

enum class SweepDirection { sublevel, superlevel };

/// Builds the merge tree of a field by a sorted union-find sweep.
/// Ties are broken symbolically: lower vertex index = lower value.
/// Connectivity is 4-neighborhood in 2D and 6-neighborhood in 3D.
/// superlevel processes -f and negates node values back, so its leaves are
/// local maxima and its root is the global minimum.
MergeTree compute_merge_tree(const ScalarField& field, SweepDirection direction);

} // namespace mtlsh
