#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "mtlsh/labeled_tree.hpp"

namespace mtlsh {

/// Interleaving distance over a shared 1-based label universe {1..n}:
/// the entrywise infinity norm of the difference of the two LCA-induced
/// matrices. Both trees must carry every label exactly once;
/// std::invalid_argument otherwise. A pseudometric on labeled trees.
double interleaving_distance(const LabeledMergeTree& a, const LabeledMergeTree& b,
                             std::uint32_t n);

struct EditSequenceCost {
    std::uint32_t cost = 0;
};

/// Exact unit-cost edit distance (insert, delete, relabel) between unordered
/// rooted trees whose node "labels" are the full sorted label groups.
/// Implemented as a branch-and-bound search over ancestor-preserving
/// injective mappings (minimal mapping cost equals minimal script cost).
/// A test oracle only: both trees are capped at 8 nodes, larger inputs
/// throw std::invalid_argument. Scalar values are ignored.
EditSequenceCost ted_oracle(const LabeledMergeTree& a, const LabeledMergeTree& b);

/// Mean per-tree precision and recall of a candidate-pair set against class
/// ids (class_of[i] = class of tree i). Per tree: precision = same-class
/// matches / all matches (1 when it has no matches), recall = same-class
/// matches / (class size - 1) (0 when it is the only member of its class).
struct PrecisionRecall {
    double precision = 0.0;
    double recall = 0.0;
};

PrecisionRecall precision_recall(
    const std::set<std::pair<std::uint32_t, std::uint32_t>>& pairs,
    const std::vector<std::uint32_t>& class_of);

} // namespace mtlsh
