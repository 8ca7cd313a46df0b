#pragma once

#include <cstdint>
#include <vector>

#include "mtlsh/merge_tree.hpp"

namespace mtlsh {

struct PersistencePair {
    std::int32_t leaf = -1;
    std::int32_t saddle = -1;       // the node where the branch dies
    double persistence = 0.0;       // |saddle value - leaf value|
    bool global = false;            // the min-max pair; never cancelled
};

/// Elder-rule pairing: at every merging saddle the branch whose minimum was
/// born latest (symbolically) dies; the overall oldest extremum pairs with
/// the root and is flagged global. Works for both orientations (sublevel and
/// superlevel trees). Returned in leaf-node-index order.
std::vector<PersistencePair> persistence_pairs(const MergeTree& tree);

/// Cancels every non-global pair with persistence < epsilon: the leaf's
/// branch is removed and saddles left with fewer than two surviving branches
/// are contracted. The root always survives. Idempotent at fixed epsilon and
/// monotone in epsilon (larger epsilon => node subset).
MergeTree simplify_by_persistence(const MergeTree& tree, double epsilon);

} // namespace mtlsh
