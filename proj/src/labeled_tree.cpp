#include "mtlsh/labeled_tree.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mtlsh/assignment.hpp"

namespace mtlsh {

void LabeledMergeTree::normalize_and_validate(bool require_unique_labels,
                                              bool increasing_to_root) {
    tree.validate(increasing_to_root);
    if (node_labels.size() != tree.size())
        throw std::invalid_argument("node_labels size does not match node count");
    for (auto& group : node_labels) {
        std::sort(group.begin(), group.end());
        group.erase(std::unique(group.begin(), group.end()), group.end());
    }
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(tree.size()); ++i) {
        if (tree.is_leaf(i) && node_labels[i].empty())
            throw std::invalid_argument("leaf node " + std::to_string(i) + " has no label");
    }
    if (require_unique_labels) label_map();
}

std::unordered_map<std::uint32_t, std::int32_t> LabeledMergeTree::label_map() const {
    std::unordered_map<std::uint32_t, std::int32_t> map;
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(tree.size()); ++i) {
        for (std::uint32_t label : node_labels[i]) {
            const auto [it, inserted] = map.emplace(label, i);
            if (!inserted)
                throw std::invalid_argument("label " + std::to_string(label) +
                                            " is attached to two nodes");
        }
    }
    return map;
}

std::uint32_t LabeledMergeTree::max_label() const {
    std::uint32_t best = 0;
    for (const auto& group : node_labels)
        for (std::uint32_t label : group) best = std::max(best, label);
    return best;
}

std::vector<std::array<double, 3>> vertex_positions(const ScalarField& field) {
    std::vector<std::array<double, 3>> out(field.size());
    for (std::size_t v = 0; v < field.size(); ++v) out[v] = field.position(v);
    return out;
}

namespace {

std::vector<std::int32_t> leaf_indices(const MergeTree& tree) {
    std::vector<std::int32_t> out;
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(tree.size()); ++i)
        if (tree.is_leaf(i)) out.push_back(i);
    return out;
}

double euclidean(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

const std::array<double, 3>& position_of(const std::vector<std::array<double, 3>>& positions,
                                         std::uint32_t vertex, const char* side) {
    if (vertex >= positions.size())
        throw std::invalid_argument(std::string("no position for ") + side + " vertex " +
                                    std::to_string(vertex));
    return positions[vertex];
}

LabeledMergeTree label_euclidean(const MergeTree& tree, const LabelingOptions& options) {
    if (!options.reference || !options.positions || !options.reference_positions)
        throw std::invalid_argument(
            "euclidean labeling requires a reference tree and positions for both trees");

    const auto leaves = leaf_indices(tree);
    std::vector<std::int32_t> ref_leaves;
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(options.reference->size()); ++i)
        if (options.reference->tree.is_leaf(i) && !options.reference->node_labels[i].empty())
            ref_leaves.push_back(i);
    if (ref_leaves.empty())
        throw std::invalid_argument("euclidean labeling reference has no labeled leaves");

    auto cost_at = [&](std::int32_t leaf, std::int32_t ref_leaf) {
        return euclidean(
            position_of(*options.positions, tree.nodes[leaf].vertex_id, "tree"),
            position_of(*options.reference_positions,
                        options.reference->tree.nodes[ref_leaf].vertex_id, "reference"));
    };

    LabeledMergeTree out;
    out.tree = tree;
    out.node_labels.assign(tree.size(), {});

    if (leaves.size() <= ref_leaves.size()) {
        std::vector<std::vector<double>> cost(leaves.size(),
                                              std::vector<double>(ref_leaves.size()));
        for (std::size_t i = 0; i < leaves.size(); ++i)
            for (std::size_t j = 0; j < ref_leaves.size(); ++j)
                cost[i][j] = cost_at(leaves[i], ref_leaves[j]);
        const auto match = min_cost_assignment(cost);
        for (std::size_t i = 0; i < leaves.size(); ++i)
            out.node_labels[leaves[i]] = options.reference->node_labels[ref_leaves[match[i]]];
    } else {
        // More leaves than reference labels: assign every reference leaf,
        // then invent labels for the leaves left over.
        std::vector<std::vector<double>> cost(ref_leaves.size(),
                                              std::vector<double>(leaves.size()));
        for (std::size_t j = 0; j < ref_leaves.size(); ++j)
            for (std::size_t i = 0; i < leaves.size(); ++i)
                cost[j][i] = cost_at(leaves[i], ref_leaves[j]);
        const auto match = min_cost_assignment(cost);
        for (std::size_t j = 0; j < ref_leaves.size(); ++j)
            out.node_labels[leaves[match[j]]] = options.reference->node_labels[ref_leaves[j]];
        std::uint32_t next = options.reference->max_label() + 1;
        for (std::int32_t leaf : leaves)
            if (out.node_labels[leaf].empty()) out.node_labels[leaf] = {next++};
    }
    return out;
}

} // namespace

LabeledMergeTree assign_labels(const MergeTree& tree, LabelStrategy strategy,
                               const LabelingOptions& options) {
    if (tree.nodes.empty()) throw std::invalid_argument("cannot label an empty tree");

    if (strategy == LabelStrategy::mesh_index) {
        LabeledMergeTree out;
        out.tree = tree;
        out.node_labels.assign(tree.size(), {});
        for (std::int32_t i = 0; i < static_cast<std::int32_t>(tree.size()); ++i) {
            if (tree.is_leaf(i) || options.label_saddles)
                out.node_labels[i] = {tree.nodes[i].vertex_id};
        }
        return out;
    }
    return label_euclidean(tree, options);
}

std::string labeled_tree_to_json(const LabeledMergeTree& lt) {
    nlohmann::json doc;
    doc["root"] = lt.tree.root;
    auto& nodes = doc["nodes"] = nlohmann::json::array();
    for (std::size_t i = 0; i < lt.tree.size(); ++i) {
        const auto& n = lt.tree.nodes[i];
        nlohmann::json jn;
        jn["value"] = n.value;
        jn["vertex_id"] = n.vertex_id;
        if (n.parent == -1)
            jn["parent"] = nullptr;
        else
            jn["parent"] = n.parent;
        jn["labels"] = lt.node_labels[i];
        nodes.push_back(std::move(jn));
    }
    return doc.dump();
}

LabeledMergeTree labeled_tree_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("labeled tree JSON is malformed: ") + e.what());
    }
    LabeledMergeTree lt;
    try {
        lt.tree.root = doc.at("root").get<std::int32_t>();
        const auto& nodes = doc.at("nodes");
        lt.tree.nodes.resize(nodes.size());
        lt.node_labels.resize(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const auto& jn = nodes[i];
            auto& n = lt.tree.nodes[i];
            n.value = jn.at("value").get<double>();
            n.vertex_id = jn.at("vertex_id").get<std::uint32_t>();
            n.parent = jn.at("parent").is_null() ? -1 : jn.at("parent").get<std::int32_t>();
            lt.node_labels[i] = jn.at("labels").get<std::vector<std::uint32_t>>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("labeled tree JSON is malformed: ") + e.what());
    }
    // Children are recovered from parents in ascending node order, which is
    // also the order construction produces (children are created before
    // their parent and attached in sweep order).
    for (std::size_t i = 0; i < lt.tree.nodes.size(); ++i) {
        const std::int32_t p = lt.tree.nodes[i].parent;
        if (p >= 0) {
            if (p >= static_cast<std::int32_t>(lt.tree.nodes.size()))
                throw std::runtime_error("labeled tree JSON: parent index out of range");
            lt.tree.nodes[p].children.push_back(static_cast<std::int32_t>(i));
        }
    }
    return lt;
}

void save_labeled_tree(const LabeledMergeTree& lt, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << labeled_tree_to_json(lt) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

LabeledMergeTree load_labeled_tree(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open labeled tree file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return labeled_tree_from_json(buf.str());
}

} // namespace mtlsh
