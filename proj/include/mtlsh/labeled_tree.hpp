#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "mtlsh/merge_tree.hpp"

namespace mtlsh {

/// A merge tree plus per-node label groups. Every leaf carries at least one
/// label; internal nodes may be unlabeled or carry several labels. Label
/// groups are kept sorted and deduplicated.
///
/// Uniqueness of label -> node is required only by the operations that treat
/// the labeling as a function (induced matrices, interleaving distance,
/// label transfer); signature hashing works on per-node groups and accepts
/// labels shared between nodes, which validate() therefore does not forbid.
struct LabeledMergeTree {
    MergeTree tree;
    std::vector<std::vector<std::uint32_t>> node_labels;

    std::size_t size() const { return tree.size(); }

    /// Sorts/dedups label groups and checks leaf coverage (and, optionally,
    /// label->node uniqueness). Throws std::invalid_argument.
    void normalize_and_validate(bool require_unique_labels = false,
                                bool increasing_to_root = true);

    /// label -> node index; throws std::invalid_argument if any label is
    /// attached to two nodes.
    std::unordered_map<std::uint32_t, std::int32_t> label_map() const;

    std::uint32_t max_label() const;
};

enum class LabelStrategy { mesh_index, euclidean };

struct LabelingOptions {
    bool label_saddles = false;                           // mesh-index only
    const LabeledMergeTree* reference = nullptr;          // euclidean only
    const std::vector<std::array<double, 3>>* positions = nullptr;      // this tree
    const std::vector<std::array<double, 3>>* reference_positions = nullptr;
};

/// mesh-index: each leaf (and each internal node if label_saddles) is
/// labeled by its grid vertex_id.
/// euclidean: minimum-total-cost assignment between this tree's leaves and
/// the reference's labeled leaves under the Euclidean distance of their
/// vertex positions; matched leaves inherit the reference leaf's label
/// group, unmatched leaves receive fresh labels past the reference's range.
LabeledMergeTree assign_labels(const MergeTree& tree, LabelStrategy strategy,
                               const LabelingOptions& options = {});

/// Per-vertex world positions for a grid field (index = vertex id).
std::vector<std::array<double, 3>> vertex_positions(const ScalarField& field);

/// JSON round-trip: {"nodes":[{"value","vertex_id","parent","labels"}...],
/// "root": i}. Values survive bit-exactly.
std::string labeled_tree_to_json(const LabeledMergeTree& lt);
LabeledMergeTree labeled_tree_from_json(const std::string& text);
void save_labeled_tree(const LabeledMergeTree& lt, const std::string& path);
LabeledMergeTree load_labeled_tree(const std::string& path);

} // namespace mtlsh
