#include "mtlsh/simplify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mtlsh/tree_walk.hpp"

namespace mtlsh {

using detail::post_order;

namespace {

// +1 when values increase toward the root (sublevel convention), -1 when
// they decrease (superlevel trees). Ties fall back to sublevel; only strict
// inequalities matter to the pairing.
int orientation(const MergeTree& tree) {
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const auto& n = tree.nodes[i];
        if (n.parent < 0 || n.value == tree.nodes[n.parent].value) continue;
        return n.value < tree.nodes[n.parent].value ? 1 : -1;
    }
    return 1;
}

// "Born earlier": smaller value for sublevel trees, larger for superlevel;
// vertex index breaks ties in both orientations.
bool older(const MergeTreeNode& a, const MergeTreeNode& b, int orient) {
    if (a.value != b.value) return (orient > 0) == (a.value < b.value);
    return a.vertex_id < b.vertex_id;
}

} // namespace

std::vector<PersistencePair> persistence_pairs(const MergeTree& tree) {
    if (tree.nodes.empty()) throw std::invalid_argument("persistence of an empty tree");
    const int orient = orientation(tree);

    std::vector<std::int32_t> rep(tree.size(), -1);
    std::vector<PersistencePair> pairs;
    for (const std::int32_t v : post_order(tree)) {
        if (tree.is_leaf(v)) {
            rep[v] = v;
            continue;
        }
        std::int32_t oldest = -1;
        for (const std::int32_t c : tree.nodes[v].children) {
            const std::int32_t r = rep[c];
            if (oldest == -1 || older(tree.nodes[r], tree.nodes[oldest], orient)) oldest = r;
        }
        for (const std::int32_t c : tree.nodes[v].children) {
            const std::int32_t r = rep[c];
            if (r == oldest) continue;
            pairs.push_back({r, v, std::abs(tree.nodes[v].value - tree.nodes[r].value), false});
        }
        rep[v] = oldest;
    }
    pairs.push_back({rep[tree.root], tree.root,
                     std::abs(tree.nodes[tree.root].value - tree.nodes[rep[tree.root]].value),
                     true});
    std::sort(pairs.begin(), pairs.end(),
              [](const PersistencePair& a, const PersistencePair& b) { return a.leaf < b.leaf; });
    return pairs;
}

MergeTree simplify_by_persistence(const MergeTree& tree, double epsilon) {
    if (epsilon < 0) throw std::invalid_argument("persistence threshold must be >= 0");
    if (epsilon == 0) return tree;

    std::vector<bool> keep_leaf(tree.size(), false);
    for (const auto& pair : persistence_pairs(tree))
        keep_leaf[pair.leaf] = pair.global || pair.persistence >= epsilon;

    MergeTree out;
    // survivors[v] = indices (in `out`) of surviving branch tops inside v's
    // subtree that are still looking for a parent.
    std::vector<std::vector<std::int32_t>> survivors(tree.size());
    for (const std::int32_t v : post_order(tree)) {
        std::vector<std::int32_t> gathered;
        for (const std::int32_t c : tree.nodes[v].children) {
            gathered.insert(gathered.end(), survivors[c].begin(), survivors[c].end());
            survivors[c].clear();
            survivors[c].shrink_to_fit();
        }

        const bool is_root = v == tree.root;
        const bool keep_node = tree.is_leaf(v)
                                   ? keep_leaf[v]
                                   // A saddle stays only while >= 2 branches
                                   // still merge there; the root always stays.
                                   : (gathered.size() >= 2 || is_root);
        if (!keep_node) {
            survivors[v] = std::move(gathered);   // splice through (0 or 1 tops)
            continue;
        }
        const std::int32_t idx = static_cast<std::int32_t>(out.nodes.size());
        out.nodes.push_back({tree.nodes[v].value, tree.nodes[v].vertex_id, -1, {}});
        for (const std::int32_t top : gathered) {
            out.nodes[top].parent = idx;
            out.nodes[idx].children.push_back(top);
        }
        survivors[v] = {idx};
    }
    out.root = static_cast<std::int32_t>(out.nodes.size()) - 1;
    return out;
}

} // namespace mtlsh
