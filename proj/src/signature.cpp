#include "mtlsh/signature.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "mtlsh/subpath.hpp"
#include "mtlsh/tree_walk.hpp"

namespace mtlsh {

Signature ss_signature(const LabeledMergeTree& lt, std::uint32_t t,
                       const HashFamily& family) {
    if (family.mode() != HashMode::universal)
        throw std::invalid_argument("subpath signatures require a universal-mode family");
    const auto subpaths = generate_subpaths(lt, t);
    Signature s;
    s.flavor = SignatureFlavor::SS;
    s.seed = family.seed();
    s.k = family.count();
    s.t = t;
    s.values = minhash_bytes(subpaths.deduplicated(), family);
    return s;
}

Signature rmh_signature(const LabeledMergeTree& lt, const HashFamily& family) {
    if (lt.size() == 0) throw std::invalid_argument("signature of an empty tree");
    if (lt.node_labels.size() != lt.size())
        throw std::invalid_argument("node_labels size does not match node count");
    const std::uint32_t q = family.count();

    // state[v]: one q-vector for a leaf, q q-vectors for a node with children.
    std::vector<std::vector<std::vector<std::uint64_t>>> state(lt.size());
    // Scratch reused across nodes; clearing keeps the capacity.
    std::vector<std::vector<std::uint64_t>> pooled(q);
    std::vector<std::uint64_t> elements;
    for (const std::int32_t v : detail::post_order(lt.tree)) {
        if (lt.tree.is_leaf(v)) {
            if (lt.node_labels[v].empty())
                throw std::invalid_argument("leaf node " + std::to_string(v) +
                                            " has no label");
            elements.assign(lt.node_labels[v].begin(), lt.node_labels[v].end());
            state[v] = {minhash_u64(elements, family)};
            continue;
        }
        // Reorganize: pool the i-th components of every child vector into
        // set i — this is where two subtrees' signatures meet, at their
        // lowest common ancestor — then q-MinHash each pooled set.
        for (auto& pool : pooled) pool.clear();
        for (const std::int32_t c : lt.tree.nodes[v].children) {
            for (const auto& vec : state[c])
                for (std::uint32_t i = 0; i < q; ++i) pooled[i].push_back(vec[i]);
            state[c].clear();
            state[c].shrink_to_fit();
        }
        auto& own = state[v];
        own.resize(q);
        for (std::uint32_t i = 0; i < q; ++i) {
            std::sort(pooled[i].begin(), pooled[i].end());
            pooled[i].erase(std::unique(pooled[i].begin(), pooled[i].end()), pooled[i].end());
            own[i] = minhash_u64(pooled[i], family);
        }
    }

    Signature s;
    s.flavor = SignatureFlavor::RMH;
    s.seed = family.seed();
    s.q = q;
    s.k = q * q;
    s.values.reserve(static_cast<std::size_t>(q) * q);
    const auto& root_state = state[lt.tree.root];
    if (root_state.size() == 1) {
        // A lone leaf as root: no reorganization ever happens; the length
        // contract is met by repeating the leaf's q-vector q times.
        for (std::uint32_t i = 0; i < q; ++i)
            s.values.insert(s.values.end(), root_state[0].begin(), root_state[0].end());
    } else {
        for (const auto& vec : root_state)
            s.values.insert(s.values.end(), vec.begin(), vec.end());
    }
    return s;
}

double hamming_similarity(const Signature& a, const Signature& b) {
    if (!a.comparable_with(b))
        throw std::invalid_argument("signatures differ in flavor, params, or seed");
    if (a.values.size() != b.values.size() || a.values.empty())
        throw std::invalid_argument("signatures have mismatched or empty value arrays");
    std::size_t agree = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (a.values[i] == b.values[i]) ++agree;
    return static_cast<double>(agree) / static_cast<double>(a.values.size());
}

namespace {

const char* flavor_name(SignatureFlavor flavor) {
    return flavor == SignatureFlavor::SS ? "SS" : "RMH";
}

SignatureFlavor flavor_from_name(const std::string& name) {
    if (name == "SS") return SignatureFlavor::SS;
    if (name == "RMH") return SignatureFlavor::RMH;
    throw std::runtime_error("unknown signature flavor: " + name);
}

} // namespace

void write_signatures(const std::string& path,
                      const std::vector<std::pair<std::string, Signature>>& signatures) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (const auto& [tree_id, sig] : signatures) {
        nlohmann::json record;
        record["tree_id"] = tree_id;
        record["flavor"] = flavor_name(sig.flavor);
        nlohmann::json params;
        params["k"] = sig.k;
        if (sig.flavor == SignatureFlavor::SS)
            params["t"] = sig.t;
        else
            params["q"] = sig.q;
        record["params"] = std::move(params);
        record["seed"] = sig.seed;
        auto& values = record["values"] = nlohmann::json::array();
        for (std::uint64_t v : sig.values) values.push_back(std::to_string(v));
        out << record.dump() << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<std::pair<std::string, Signature>> read_signatures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open signature file: " + path);
    std::vector<std::pair<std::string, Signature>> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const auto record = nlohmann::json::parse(line);
            Signature sig;
            sig.flavor = flavor_from_name(record.at("flavor").get<std::string>());
            sig.seed = record.at("seed").get<std::uint64_t>();
            sig.k = record.at("params").at("k").get<std::uint32_t>();
            if (sig.flavor == SignatureFlavor::SS)
                sig.t = record.at("params").at("t").get<std::uint32_t>();
            else
                sig.q = record.at("params").at("q").get<std::uint32_t>();
            for (const auto& v : record.at("values"))
                sig.values.push_back(std::stoull(v.get<std::string>()));
            out.emplace_back(record.at("tree_id").get<std::string>(), std::move(sig));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                     ": bad signature record: " + e.what());
        }
    }
    return out;
}

} // namespace mtlsh
