#include "mtlsh/subpath.hpp"

#include <algorithm>
#include <stdexcept>

namespace mtlsh {

std::vector<std::string> SubpathMultiset::deduplicated() const {
    std::vector<std::string> out = encoded;
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

void append_u32_le(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

} // namespace

std::string encode_subpath(const std::vector<SubpathPosition>& positions) {
    std::string out;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (i > 0) out.push_back('\xff');
        const auto& pos = positions[i];
        if (!pos.has_value()) {
            out.push_back('\0');
            continue;
        }
        std::vector<std::uint32_t> group = *pos;
        std::sort(group.begin(), group.end());
        append_u32_le(out, static_cast<std::uint32_t>(group.size()));
        for (std::uint32_t label : group) append_u32_le(out, label);
    }
    return out;
}

SubpathMultiset generate_subpaths(const LabeledMergeTree& lt, std::uint32_t t) {
    if (t < 1) throw std::invalid_argument("subpath length t must be >= 1");
    if (lt.size() == 0) throw std::invalid_argument("subpaths of an empty tree");
    if (lt.node_labels.size() != lt.size())
        throw std::invalid_argument("node_labels size does not match node count");

    SubpathMultiset out;
    out.t = t;
    out.encoded.reserve(lt.size());
    std::vector<SubpathPosition> positions(t);
    for (std::int32_t v = 0; v < static_cast<std::int32_t>(lt.size()); ++v) {
        // Walk t-1 ancestors up from v, then flip to most-ancestral-first.
        std::int32_t cur = v;
        for (std::uint32_t slot = 0; slot < t; ++slot) {
            if (cur >= 0) {
                positions[t - 1 - slot] = lt.node_labels[cur];
                cur = lt.tree.nodes[cur].parent;
            } else {
                positions[t - 1 - slot] = std::nullopt;
            }
        }
        out.encoded.push_back(encode_subpath(positions));
    }
    std::sort(out.encoded.begin(), out.encoded.end());
    return out;
}

} // namespace mtlsh
