#include "mtlsh/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mtlsh/lca.hpp"

namespace mtlsh {

double interleaving_distance(const LabeledMergeTree& a, const LabeledMergeTree& b,
                             std::uint32_t n) {
    if (n == 0) throw std::invalid_argument("label universe must be non-empty");
    const auto ma = induced_matrix(a, n);
    const auto mb = induced_matrix(b, n);
    double worst = 0.0;
    for (std::size_t i = 0; i < ma.size(); ++i)
        worst = std::max(worst, std::abs(ma[i] - mb[i]));
    return worst;
}

namespace {

constexpr std::size_t kOracleLimit = 8;

struct FlatTree {
    std::size_t n = 0;
    std::vector<std::vector<std::uint32_t>> label;      // sorted label group per node
    // anc[u] = bitmask of u's proper and improper ancestors (u included).
    std::vector<std::uint16_t> anc;
};

FlatTree flatten(const LabeledMergeTree& lt) {
    if (lt.size() > kOracleLimit)
        throw std::invalid_argument("edit-distance oracle accepts at most 8 nodes");
    FlatTree f;
    f.n = lt.size();
    f.label.resize(f.n);
    f.anc.assign(f.n, 0);
    for (std::size_t v = 0; v < f.n; ++v) {
        f.label[v] = lt.node_labels.empty() ? std::vector<std::uint32_t>{}
                                            : lt.node_labels[v];
        std::sort(f.label[v].begin(), f.label[v].end());
        std::int32_t cur = static_cast<std::int32_t>(v);
        while (cur >= 0) {
            f.anc[v] |= static_cast<std::uint16_t>(1u << cur);
            cur = lt.tree.nodes[cur].parent;
        }
    }
    return f;
}

// Depth-first search over partial mappings. Nodes of T1 are decided in index
// order: either deleted or mapped to a free T2 node that preserves the
// ancestor relation against every pair already chosen.
struct MappingSearch {
    const FlatTree& t1;
    const FlatTree& t2;
    std::vector<std::int8_t> image;     // T1 node -> T2 node or -1 (delete)
    std::uint16_t used = 0;             // T2 nodes taken
    std::uint32_t best;

    MappingSearch(const FlatTree& a, const FlatTree& b)
        : t1(a), t2(b), image(a.n, -1),
          best(static_cast<std::uint32_t>(a.n + b.n)) {}

    bool compatible(std::size_t u, std::size_t v) const {
        for (std::size_t u2 = 0; u2 < u; ++u2) {
            if (image[u2] < 0) continue;
            const auto v2 = static_cast<std::size_t>(image[u2]);
            const bool u_anc = (t1.anc[u2] >> u) & 1;      // u is ancestor of u2
            const bool u_desc = (t1.anc[u] >> u2) & 1;     // u2 is ancestor of u
            const bool v_anc = (t2.anc[v2] >> v) & 1;
            const bool v_desc = (t2.anc[v] >> v2) & 1;
            if (u_anc != v_anc || u_desc != v_desc) return false;
        }
        return true;
    }

    void search(std::size_t u, std::uint32_t cost, std::uint32_t mapped) {
        // Remaining T1 nodes can absorb at most that many of T2's free nodes;
        // everything else must be inserted or deleted.
        const std::uint32_t remaining1 = static_cast<std::uint32_t>(t1.n - u);
        const std::uint32_t free2 =
            static_cast<std::uint32_t>(t2.n) - (mapped);
        const std::uint32_t floor_cost =
            cost + (remaining1 > free2 ? remaining1 - free2 : free2 - remaining1);
        if (floor_cost >= best) return;
        if (u == t1.n) {
            best = cost + free2;        // leftover T2 nodes are insertions
            return;
        }
        for (std::size_t v = 0; v < t2.n; ++v) {
            if ((used >> v) & 1) continue;
            if (!compatible(u, v)) continue;
            const std::uint32_t relabel = t1.label[u] == t2.label[v] ? 0 : 1;
            image[u] = static_cast<std::int8_t>(v);
            used |= static_cast<std::uint16_t>(1u << v);
            search(u + 1, cost + relabel, mapped + 1);
            used &= static_cast<std::uint16_t>(~(1u << v));
            image[u] = -1;
        }
        search(u + 1, cost + 1, mapped);    // delete u
    }
};

} // namespace

EditSequenceCost ted_oracle(const LabeledMergeTree& a, const LabeledMergeTree& b) {
    const FlatTree t1 = flatten(a);
    const FlatTree t2 = flatten(b);
    if (t1.n == 0 || t2.n == 0)
        return {static_cast<std::uint32_t>(t1.n + t2.n)};
    MappingSearch search(t1, t2);
    search.search(0, 0, 0);
    return {search.best};
}

PrecisionRecall precision_recall(
    const std::set<std::pair<std::uint32_t, std::uint32_t>>& pairs,
    const std::vector<std::uint32_t>& class_of) {
    const std::size_t n = class_of.size();
    if (n == 0) throw std::invalid_argument("precision/recall needs a non-empty collection");
    for (const auto& [i, j] : pairs)
        if (i >= n || j >= n)
            throw std::invalid_argument("pair id outside the classed collection");

    std::vector<std::uint32_t> class_size(
        *std::max_element(class_of.begin(), class_of.end()) + 1, 0);
    for (std::uint32_t c : class_of) ++class_size[c];

    std::vector<std::uint32_t> matched(n, 0), matched_same(n, 0);
    for (const auto& [i, j] : pairs) {
        ++matched[i];
        ++matched[j];
        if (class_of[i] == class_of[j]) {
            ++matched_same[i];
            ++matched_same[j];
        }
    }

    double precision_sum = 0.0, recall_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        precision_sum += matched[i] == 0
                             ? 1.0
                             : static_cast<double>(matched_same[i]) / matched[i];
        const std::uint32_t peers = class_size[class_of[i]] - 1;
        recall_sum += peers == 0 ? 0.0 : static_cast<double>(matched_same[i]) / peers;
    }
    return {precision_sum / static_cast<double>(n), recall_sum / static_cast<double>(n)};
}

} // namespace mtlsh
