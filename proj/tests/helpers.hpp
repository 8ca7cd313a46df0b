#pragma once

// Shared builders and independent oracles for the test suites.

#include <algorithm>
#include <cstdint>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtlsh/labeled_tree.hpp"
#include "mtlsh/merge_tree.hpp"
#include "mtlsh/rng.hpp"
#include "mtlsh/scalar_field.hpp"

namespace test_helpers {

/// Node spec for hand-built trees: value, parent index (-1 = root).
struct NodeSpec {
    double value;
    std::int32_t parent;
};

/// Builds a MergeTree from (value, parent) pairs; vertex_id = node index,
/// children derived, root = the single parentless node.
inline mtlsh::MergeTree make_tree(const std::vector<NodeSpec>& specs) {
    mtlsh::MergeTree tree;
    tree.nodes.resize(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        tree.nodes[i].value = specs[i].value;
        tree.nodes[i].vertex_id = static_cast<std::uint32_t>(i);
        tree.nodes[i].parent = specs[i].parent;
        if (specs[i].parent < 0)
            tree.root = static_cast<std::int32_t>(i);
        else
            tree.nodes[specs[i].parent].children.push_back(static_cast<std::int32_t>(i));
    }
    return tree;
}

/// Wraps a tree with per-node label groups (empty groups allowed on
/// internal nodes).
inline mtlsh::LabeledMergeTree make_labeled(
    mtlsh::MergeTree tree, std::vector<std::vector<std::uint32_t>> labels) {
    mtlsh::LabeledMergeTree lt;
    lt.tree = std::move(tree);
    lt.node_labels = std::move(labels);
    lt.normalize_and_validate();
    return lt;
}

inline mtlsh::ScalarField make_field_1d(const std::vector<double>& values) {
    mtlsh::ScalarField field;
    field.dims = {static_cast<std::uint32_t>(values.size()), 1, 1};
    field.spacing = {1.0, 1.0, 1.0};
    field.values = values;
    return field;
}

inline mtlsh::ScalarField make_field_2d(std::uint32_t nx, std::uint32_t ny,
                                        const std::vector<double>& values) {
    mtlsh::ScalarField field;
    field.dims = {nx, ny, 1};
    field.spacing = {1.0, 1.0, 1.0};
    field.values = values;
    return field;
}

// ---- random labeled trees ---------------------------------------------------

/// Random tree with strictly increasing values toward the root: values are
/// i + u(0,1) for node i, parent(i) drawn uniformly from (i, n). Node n-1 is
/// the root. Every leaf gets one fresh label from {1..}; with
/// extra_labels > 0, that many additional labels are sprinkled on random
/// leaves. Labels cover exactly {1..leaf_count+extra_labels}.
inline mtlsh::LabeledMergeTree random_labeled_tree(std::size_t n, std::uint64_t seed,
                                                   std::uint32_t extra_labels = 0) {
    if (n == 0) throw std::invalid_argument("random_labeled_tree: n must be >= 1");
    std::mt19937_64 rng(seed);
    mtlsh::MergeTree tree;
    tree.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        tree.nodes[i].value = static_cast<double>(i) + mtlsh::detail::unit_draw(rng);
        tree.nodes[i].vertex_id = static_cast<std::uint32_t>(i);
    }
    tree.root = static_cast<std::int32_t>(n - 1);
    tree.nodes[n - 1].parent = -1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto span = static_cast<std::uint64_t>(n - 1 - i);
        const auto parent =
            static_cast<std::int32_t>(i + 1 + mtlsh::detail::bounded_draw(rng, span));
        tree.nodes[i].parent = parent;
        tree.nodes[parent].children.push_back(static_cast<std::int32_t>(i));
    }

    std::vector<std::int32_t> leaves;
    for (std::size_t i = 0; i < n; ++i)
        if (tree.nodes[i].children.empty()) leaves.push_back(static_cast<std::int32_t>(i));

    std::vector<std::vector<std::uint32_t>> labels(n);
    std::uint32_t next = 1;
    for (std::int32_t leaf : leaves) labels[leaf].push_back(next++);
    for (std::uint32_t e = 0; e < extra_labels; ++e) {
        const auto pick = mtlsh::detail::bounded_draw(rng, leaves.size());
        labels[leaves[pick]].push_back(next++);
    }
    return make_labeled(std::move(tree), std::move(labels));
}

/// Random permutation of a labeled tree's node array (same shape, labels,
/// values; different node indices and child order).
inline mtlsh::LabeledMergeTree permute_nodes(const mtlsh::LabeledMergeTree& lt,
                                             std::uint64_t seed) {
    const std::size_t n = lt.tree.size();
    std::vector<std::int32_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::int32_t>(i);
    std::mt19937_64 rng(seed);
    mtlsh::detail::shuffle(perm, rng);

    mtlsh::LabeledMergeTree out;
    out.tree.nodes.resize(n);
    out.node_labels.resize(n);
    for (std::size_t old = 0; old < n; ++old) {
        const std::int32_t now = perm[old];
        out.tree.nodes[now].value = lt.tree.nodes[old].value;
        out.tree.nodes[now].vertex_id = lt.tree.nodes[old].vertex_id;
        out.tree.nodes[now].parent =
            lt.tree.nodes[old].parent < 0 ? -1 : perm[lt.tree.nodes[old].parent];
        out.node_labels[now] = lt.node_labels[old];
    }
    out.tree.root = perm[lt.tree.root];
    for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t parent = out.tree.nodes[i].parent;
        if (parent >= 0) out.tree.nodes[parent].children.push_back(static_cast<std::int32_t>(i));
    }
    out.normalize_and_validate();
    return out;
}

// ---- threshold-sweep merge-tree oracle (1-D fields) -------------------------

/// Independent merge-tree oracle for 1×n fields: grows intervals of admitted
/// vertices in symbolic (value, index) order; a fresh interval opens a leaf,
/// an interval join opens a saddle, and a final root is added only when the
/// raw maximum exceeds the last component node's value.
inline mtlsh::MergeTree sweep_oracle_1d(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] != values[b] ? values[a] < values[b] : a < b;
    });

    mtlsh::MergeTree tree;
    std::vector<bool> in(n, false);
    // Each maximal run [a,b] of admitted vertices stores, at both endpoints,
    // the other endpoint and the run's current top tree node.
    std::vector<std::size_t> other(n, 0);
    std::vector<std::int32_t> run_top(n, -1);
    auto set_run = [&](std::size_t a, std::size_t b, std::int32_t top_node) {
        other[a] = b;
        other[b] = a;
        run_top[a] = run_top[b] = top_node;
    };

    for (std::size_t v : order) {
        const bool left = v > 0 && in[v - 1];
        const bool right = v + 1 < n && in[v + 1];
        in[v] = true;
        if (!left && !right) {
            mtlsh::MergeTreeNode node;
            node.value = values[v];
            node.vertex_id = static_cast<std::uint32_t>(v);
            tree.nodes.push_back(node);
            set_run(v, v, static_cast<std::int32_t>(tree.nodes.size() - 1));
        } else if (left && !right) {
            set_run(other[v - 1], v, run_top[v - 1]);
        } else if (!left && right) {
            set_run(v, other[v + 1], run_top[v + 1]);
        } else {
            const std::int32_t a = run_top[v - 1];
            const std::int32_t b = run_top[v + 1];
            mtlsh::MergeTreeNode node;
            node.value = values[v];
            node.vertex_id = static_cast<std::uint32_t>(v);
            node.children = {std::min(a, b), std::max(a, b)};
            tree.nodes.push_back(node);
            const auto s = static_cast<std::int32_t>(tree.nodes.size() - 1);
            tree.nodes[a].parent = s;
            tree.nodes[b].parent = s;
            set_run(other[v - 1], other[v + 1], s);
        }
    }

    std::int32_t top = run_top[0];
    const std::size_t vmax = order.back();
    if (values[vmax] > tree.nodes[top].value) {
        mtlsh::MergeTreeNode node;
        node.value = values[vmax];
        node.vertex_id = static_cast<std::uint32_t>(vmax);
        node.children = {top};
        tree.nodes.push_back(node);
        tree.nodes[top].parent = static_cast<std::int32_t>(tree.nodes.size() - 1);
        top = static_cast<std::int32_t>(tree.nodes.size() - 1);
    }
    tree.root = top;
    return tree;
}

/// Shape-and-content equality up to node renumbering: canonical recursive
/// encoding of (value, vertex_id, children-as-multiset).
inline std::string canonical_tree(const mtlsh::MergeTree& tree, std::int32_t at) {
    std::string s = "(" + std::to_string(tree.nodes[at].value) + "#" +
                    std::to_string(tree.nodes[at].vertex_id);
    std::vector<std::string> kids;
    for (std::int32_t c : tree.nodes[at].children) kids.push_back(canonical_tree(tree, c));
    std::sort(kids.begin(), kids.end());
    for (const auto& k : kids) s += k;
    return s + ")";
}

inline std::string canonical_tree(const mtlsh::MergeTree& tree) {
    return canonical_tree(tree, tree.root);
}

// ---- BFS edit-script oracle (unordered labeled trees, <= 4 nodes) ----------

/// Plain rooted tree with label groups, for the edit-script search.
struct TinyTree {
    std::vector<std::int32_t> parent;                    // -1 = root
    std::vector<std::vector<std::uint32_t>> groups;      // sorted label groups

    std::size_t size() const { return parent.size(); }
};

inline TinyTree to_tiny(const mtlsh::LabeledMergeTree& lt) {
    TinyTree t;
    t.parent.resize(lt.tree.size());
    t.groups.resize(lt.tree.size());
    for (std::size_t i = 0; i < lt.tree.size(); ++i) {
        t.parent[i] = lt.tree.nodes[i].parent;
        t.groups[i] = lt.node_labels[i];
    }
    return t;
}

inline std::string canon_tiny(const TinyTree& t, std::int32_t at,
                              const std::vector<std::vector<std::int32_t>>& children) {
    std::string s = "(";
    for (std::uint32_t l : t.groups[at]) s += std::to_string(l) + ",";
    std::vector<std::string> kids;
    for (std::int32_t c : children[at]) kids.push_back(canon_tiny(t, c, children));
    std::sort(kids.begin(), kids.end());
    for (const auto& k : kids) s += k;
    return s + ")";
}

inline std::string canon_tiny(const TinyTree& t) {
    std::vector<std::vector<std::int32_t>> children(t.size());
    std::int32_t root = -1;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t.parent[i] < 0)
            root = static_cast<std::int32_t>(i);
        else
            children[t.parent[i]].push_back(static_cast<std::int32_t>(i));
    }
    return canon_tiny(t, root, children);
}

/// All trees one unit edit away from t, sizes capped at max_nodes.
/// Edits: relabel a node to a different group from `alphabet`; delete a node
/// (root only when it has <= 1 child), children reattach to the parent;
/// insert a node with any alphabet group — below an existing parent adopting
/// any subset of its children, or above the root.
inline std::vector<TinyTree> tiny_neighbors(
    const TinyTree& t, const std::vector<std::vector<std::uint32_t>>& alphabet,
    std::size_t max_nodes) {
    std::vector<TinyTree> out;
    const std::size_t n = t.size();

    for (std::size_t v = 0; v < n; ++v) {               // relabel
        for (const auto& g : alphabet) {
            if (g == t.groups[v]) continue;
            TinyTree nt = t;
            nt.groups[v] = g;
            out.push_back(std::move(nt));
        }
    }

    for (std::size_t v = 0; v < n; ++v) {               // delete
        if (n == 1) break;
        std::size_t child_count = 0;
        for (std::size_t u = 0; u < n; ++u)
            if (t.parent[u] == static_cast<std::int32_t>(v)) ++child_count;
        if (t.parent[v] < 0 && child_count > 1) continue;   // would create a forest
        TinyTree nt;
        std::vector<std::int32_t> remap(n, -1);
        std::int32_t next = 0;
        for (std::size_t u = 0; u < n; ++u)
            if (u != v) remap[u] = next++;
        nt.parent.resize(n - 1);
        nt.groups.resize(n - 1);
        for (std::size_t u = 0; u < n; ++u) {
            if (u == v) continue;
            std::int32_t p = t.parent[u];
            if (p == static_cast<std::int32_t>(v)) p = t.parent[v];
            nt.parent[remap[u]] = p < 0 ? -1 : remap[p];
            nt.groups[remap[u]] = t.groups[u];
        }
        out.push_back(std::move(nt));
    }

    if (n < max_nodes) {                                // insert
        for (const auto& g : alphabet) {
            {                                           // new root above the old one
                TinyTree nt = t;
                nt.parent.push_back(-1);
                nt.groups.push_back(g);
                for (std::size_t u = 0; u < n; ++u)
                    if (nt.parent[u] < 0 && u != n) nt.parent[u] = static_cast<std::int32_t>(n);
                out.push_back(std::move(nt));
            }
            for (std::size_t p = 0; p < n; ++p) {       // child of p, adopting a subset
                std::vector<std::int32_t> kids;
                for (std::size_t u = 0; u < n; ++u)
                    if (t.parent[u] == static_cast<std::int32_t>(p))
                        kids.push_back(static_cast<std::int32_t>(u));
                const std::size_t subsets = static_cast<std::size_t>(1) << kids.size();
                for (std::size_t mask = 0; mask < subsets; ++mask) {
                    TinyTree nt = t;
                    nt.parent.push_back(static_cast<std::int32_t>(p));
                    nt.groups.push_back(g);
                    for (std::size_t b = 0; b < kids.size(); ++b)
                        if (mask & (static_cast<std::size_t>(1) << b))
                            nt.parent[kids[b]] = static_cast<std::int32_t>(n);
                    out.push_back(std::move(nt));
                }
            }
        }
    }
    return out;
}

/// Exact unordered edit distance by breadth-first search over edit scripts,
/// using only insert/delete/relabel. Practical for trees of <= 4 nodes.
inline std::uint32_t bfs_edit_distance(const mtlsh::LabeledMergeTree& a,
                                       const mtlsh::LabeledMergeTree& b) {
    const TinyTree start = to_tiny(a);
    const TinyTree goal = to_tiny(b);
    const std::string target = canon_tiny(goal);
    if (canon_tiny(start) == target) return 0;

    std::set<std::vector<std::uint32_t>> group_set;
    for (const auto& g : start.groups) group_set.insert(g);
    for (const auto& g : goal.groups) group_set.insert(g);
    const std::vector<std::vector<std::uint32_t>> alphabet(group_set.begin(),
                                                           group_set.end());
    const std::size_t cap = std::max(start.size(), goal.size());

    std::queue<std::pair<TinyTree, std::uint32_t>> frontier;
    std::set<std::string> seen{canon_tiny(start)};
    frontier.emplace(start, 0);
    while (!frontier.empty()) {
        auto [tree, dist] = frontier.front();
        frontier.pop();
        for (auto& next : tiny_neighbors(tree, alphabet, cap)) {
            std::string key = canon_tiny(next);
            if (key == target) return dist + 1;
            if (seen.insert(std::move(key)).second) frontier.emplace(std::move(next), dist + 1);
        }
    }
    throw std::logic_error("bfs_edit_distance: target unreachable");
}

} // namespace test_helpers
