#include "mtlsh/merge_tree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mtlsh {

std::size_t MergeTree::leaf_count() const {
    std::size_t n = 0;
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(nodes.size()); ++i)
        if (is_leaf(i)) ++n;
    return n;
}

int MergeTree::height() const {
    if (nodes.empty()) return 0;
    // Children always have smaller node indices than their parent for trees
    // built by the sweep, but hand-built trees may not; walk top-down instead.
    std::vector<int> depth(nodes.size(), 0);
    std::vector<std::int32_t> stack{root};
    int best = 0;
    while (!stack.empty()) {
        const std::int32_t v = stack.back();
        stack.pop_back();
        best = std::max(best, depth[v]);
        for (std::int32_t c : nodes[v].children) {
            depth[c] = depth[v] + 1;
            stack.push_back(c);
        }
    }
    return best;
}

void MergeTree::validate(bool increasing_to_root) const {
    if (nodes.empty()) throw std::invalid_argument("merge tree has no nodes");
    if (root < 0 || root >= static_cast<std::int32_t>(nodes.size()))
        throw std::invalid_argument("merge tree root index out of range");

    std::size_t parentless = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        if (n.parent == -1) {
            ++parentless;
            if (static_cast<std::int32_t>(i) != root)
                throw std::invalid_argument("non-root node without a parent");
        } else {
            if (n.parent < 0 || n.parent >= static_cast<std::int32_t>(nodes.size()))
                throw std::invalid_argument("parent index out of range");
            const auto& siblings = nodes[n.parent].children;
            if (std::count(siblings.begin(), siblings.end(), static_cast<std::int32_t>(i)) != 1)
                throw std::invalid_argument("parent/children links are inconsistent");
        }
        for (std::int32_t c : n.children) {
            if (c < 0 || c >= static_cast<std::int32_t>(nodes.size()) ||
                nodes[c].parent != static_cast<std::int32_t>(i))
                throw std::invalid_argument("parent/children links are inconsistent");
        }
    }
    if (parentless != 1) throw std::invalid_argument("merge tree must have exactly one root");

    // Reachability from the root doubles as the acyclicity check.
    std::size_t seen = 0;
    std::vector<std::int32_t> stack{root};
    std::vector<bool> visited(nodes.size(), false);
    visited[root] = true;
    while (!stack.empty()) {
        const std::int32_t v = stack.back();
        stack.pop_back();
        ++seen;
        for (std::int32_t c : nodes[v].children) {
            if (visited[c]) throw std::invalid_argument("merge tree contains a cycle");
            visited[c] = true;
            stack.push_back(c);
        }
    }
    if (seen != nodes.size())
        throw std::invalid_argument("merge tree has nodes unreachable from the root");

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (static_cast<std::int32_t>(i) == root) continue;
        const auto& child = nodes[i];
        const auto& parent = nodes[child.parent];
        const bool strictly_ordered =
            child.value != parent.value
                ? (child.value < parent.value) == increasing_to_root
                : child.vertex_id < parent.vertex_id;
        if (!strictly_ordered)
            throw std::invalid_argument("edge violates symbolic monotonicity toward the root");
    }
}

namespace {

struct UnionFind {
    std::vector<std::int32_t> parent;
    // Tree node currently at the top of each component (indexed by DSU root).
    std::vector<std::int32_t> top;

    explicit UnionFind(std::size_t n) : parent(n, -1), top(n, -1) {}

    std::int32_t find(std::int32_t x) {
        std::int32_t r = x;
        while (parent[r] >= 0) r = parent[r];
        while (parent[x] >= 0) {
            const std::int32_t next = parent[x];
            parent[x] = r;
            x = next;
        }
        return r;
    }

    // Attach a's set under b's root; b keeps the component's top pointer.
    void absorb(std::int32_t a, std::int32_t b) { parent[find(a)] = find(b); }
};

void neighbors(const ScalarField& f, std::size_t v, std::size_t* out, int* count) {
    const auto c = f.coords(v);
    *count = 0;
    if (c[0] > 0) out[(*count)++] = v - 1;
    if (c[0] + 1 < f.dims[0]) out[(*count)++] = v + 1;
    if (c[1] > 0) out[(*count)++] = v - f.dims[0];
    if (c[1] + 1 < f.dims[1]) out[(*count)++] = v + f.dims[0];
    const std::size_t slab = static_cast<std::size_t>(f.dims[0]) * f.dims[1];
    if (c[2] > 0) out[(*count)++] = v - slab;
    if (c[2] + 1 < f.dims[2]) out[(*count)++] = v + slab;
}

MergeTree sublevel_sweep(const ScalarField& field) {
    const std::size_t n = field.size();
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    // Symbolic perturbation: ties broken by vertex index, so the sweep order
    // is the total order "value, then index".
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (field.values[a] != field.values[b]) return field.values[a] < field.values[b];
        return a < b;
    });

    MergeTree tree;
    UnionFind uf(n);
    std::vector<bool> processed(n, false);
    std::size_t nbr[6];
    int nbr_count = 0;
    std::int32_t roots[6];

    for (std::uint32_t v : order) {
        neighbors(field, v, nbr, &nbr_count);
        int distinct = 0;
        for (int i = 0; i < nbr_count; ++i) {
            if (!processed[nbr[i]]) continue;
            const std::int32_t r = uf.find(static_cast<std::int32_t>(nbr[i]));
            bool seen = false;
            for (int j = 0; j < distinct; ++j) seen = seen || roots[j] == r;
            if (!seen) roots[distinct++] = r;
        }

        if (distinct == 0) {
            // No lower neighbor: v is a (perturbed) local minimum — a leaf.
            const std::int32_t node = static_cast<std::int32_t>(tree.nodes.size());
            tree.nodes.push_back({field.values[v], v, -1, {}});
            uf.top[v] = node;
        } else if (distinct == 1) {
            uf.absorb(static_cast<std::int32_t>(v), roots[0]);
        } else {
            // v joins several components: a merging saddle.
            const std::int32_t node = static_cast<std::int32_t>(tree.nodes.size());
            tree.nodes.push_back({field.values[v], v, -1, {}});
            // Children attached in sweep order (ascending node index) so the
            // result is independent of neighbor enumeration order.
            std::sort(roots, roots + distinct,
                      [&](std::int32_t a, std::int32_t b) { return uf.top[a] < uf.top[b]; });
            for (int i = 0; i < distinct; ++i) {
                const std::int32_t child = uf.top[roots[i]];
                tree.nodes[child].parent = node;
                tree.nodes[node].children.push_back(child);
            }
            for (int i = 1; i < distinct; ++i) uf.absorb(roots[i], roots[0]);
            uf.absorb(static_cast<std::int32_t>(v), roots[0]);
            uf.top[uf.find(roots[0])] = node;
        }
        processed[v] = true;
    }

    const std::uint32_t vmax = order.back();
    const std::int32_t top = uf.top[uf.find(static_cast<std::int32_t>(vmax))];
    // The global maximum becomes the root; if its raw value does not exceed
    // the current top node's (constant field, flat summit) the top node
    // already represents that level and gains nothing from a duplicate.
    if (field.values[vmax] > tree.nodes[top].value) {
        const std::int32_t node = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.push_back({field.values[vmax], vmax, -1, {}});
        tree.nodes[top].parent = node;
        tree.nodes[node].children.push_back(top);
        tree.root = node;
    } else {
        tree.root = top;
    }
    return tree;
}

} // namespace

MergeTree compute_merge_tree(const ScalarField& field, SweepDirection direction) {
    field.validate();
    if (direction == SweepDirection::sublevel) return sublevel_sweep(field);
    ScalarField negated = field;
    for (double& v : negated.values) v = -v;
    MergeTree tree = sublevel_sweep(negated);
    for (auto& node : tree.nodes) node.value = -node.value;
    return tree;
}

} // namespace mtlsh
