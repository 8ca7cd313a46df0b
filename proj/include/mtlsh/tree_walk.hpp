#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mtlsh/merge_tree.hpp"

namespace mtlsh::detail {

/// Iterative post-order (children before parents; the root comes last).
inline std::vector<std::int32_t> post_order(const MergeTree& tree) {
    std::vector<std::int32_t> order;
    order.reserve(tree.size());
    std::vector<std::pair<std::int32_t, std::size_t>> stack{{tree.root, 0}};
    while (!stack.empty()) {
        auto& [v, next_child] = stack.back();
        if (next_child < tree.nodes[v].children.size()) {
            const std::int32_t c = tree.nodes[v].children[next_child++];
            stack.emplace_back(c, 0);
        } else {
            order.push_back(v);
            stack.pop_back();
        }
    }
    return order;
}

} // namespace mtlsh::detail
