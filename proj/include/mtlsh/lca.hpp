#pragma once

#include <cstdint>
#include <vector>

#include "mtlsh/labeled_tree.hpp"
#include "mtlsh/merge_tree.hpp"

namespace mtlsh {

/// Binary-lifting lowest-common-ancestor index over a merge tree.
/// Build is O(n log n); each query is O(log n).
class LcaIndex {
public:
    explicit LcaIndex(const MergeTree& tree);

    std::int32_t lca(std::int32_t u, std::int32_t v) const;
    int depth(std::int32_t v) const { return depth_.at(v); }

private:
    std::vector<int> depth_;
    std::vector<std::vector<std::int32_t>> up_;   // up_[k][v] = 2^k-th ancestor
};

/// One-shot convenience wrapper (builds the index each call).
std::int32_t lca(const MergeTree& tree, std::int32_t u, std::int32_t v);

/// n×n row-major matrix M with M[i][j] = value(lca(node(i+1), node(j+1)))
/// over the 1-based label universe {1..n}. Every label must be present and
/// attached to exactly one node; otherwise std::invalid_argument.
std::vector<double> induced_matrix(const LabeledMergeTree& lt, std::uint32_t n);

} // namespace mtlsh
