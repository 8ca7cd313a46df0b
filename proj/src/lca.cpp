#include "mtlsh/lca.hpp"

#include <stdexcept>

namespace mtlsh {

LcaIndex::LcaIndex(const MergeTree& tree) {
    const std::size_t n = tree.size();
    if (n == 0) throw std::invalid_argument("lca index over an empty tree");

    depth_.assign(n, 0);
    int levels = 1;
    while ((std::size_t{1} << levels) < n) ++levels;
    up_.assign(levels, std::vector<std::int32_t>(n, tree.root));

    // Depths and immediate ancestors, top-down.
    std::vector<std::int32_t> stack{tree.root};
    up_[0][tree.root] = tree.root;
    while (!stack.empty()) {
        const std::int32_t v = stack.back();
        stack.pop_back();
        for (std::int32_t c : tree.nodes[v].children) {
            depth_[c] = depth_[v] + 1;
            up_[0][c] = v;
            stack.push_back(c);
        }
    }
    for (int k = 1; k < levels; ++k)
        for (std::size_t v = 0; v < n; ++v) up_[k][v] = up_[k - 1][up_[k - 1][v]];
}

std::int32_t LcaIndex::lca(std::int32_t u, std::int32_t v) const {
    const auto n = static_cast<std::int32_t>(depth_.size());
    if (u < 0 || u >= n || v < 0 || v >= n)
        throw std::invalid_argument("lca query with an invalid node index");
    if (depth_[u] < depth_[v]) std::swap(u, v);
    int diff = depth_[u] - depth_[v];
    for (int k = 0; diff != 0; ++k, diff >>= 1)
        if (diff & 1) u = up_[k][u];
    if (u == v) return u;
    for (int k = static_cast<int>(up_.size()) - 1; k >= 0; --k) {
        if (up_[k][u] != up_[k][v]) {
            u = up_[k][u];
            v = up_[k][v];
        }
    }
    return up_[0][u];
}

std::int32_t lca(const MergeTree& tree, std::int32_t u, std::int32_t v) {
    return LcaIndex(tree).lca(u, v);
}

std::vector<double> induced_matrix(const LabeledMergeTree& lt, std::uint32_t n) {
    const auto map = lt.label_map();   // throws if a label is on two nodes
    std::vector<std::int32_t> node_of(n);
    for (std::uint32_t label = 1; label <= n; ++label) {
        const auto it = map.find(label);
        if (it == map.end())
            throw std::invalid_argument("label " + std::to_string(label) +
                                        " absent from tree (universe size " +
                                        std::to_string(n) + ")");
        node_of[label - 1] = it->second;
    }

    const LcaIndex index(lt.tree);
    std::vector<double> m(static_cast<std::size_t>(n) * n);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i; j < n; ++j) {
            const double v = lt.tree.nodes[index.lca(node_of[i], node_of[j])].value;
            m[static_cast<std::size_t>(i) * n + j] = v;
            m[static_cast<std::size_t>(j) * n + i] = v;
        }
    }
    return m;
}

} // namespace mtlsh
