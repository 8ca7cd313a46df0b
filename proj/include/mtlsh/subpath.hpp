#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtlsh/labeled_tree.hpp"

namespace mtlsh {

/// One subpath position: a node's sorted label group, or a dummy marker
/// (nullopt) for padding above the root. An unlabeled internal node is an
/// empty group — distinct from a dummy.
using SubpathPosition = std::optional<std::vector<std::uint32_t>>;

/// The multiset of length-t downward label paths of a tree: one entry per
/// original node (the chain of t-1 ancestors ending at that node, padded
/// with dummies when the chain leaves the tree). Entries are stored in their
/// canonical byte encoding, sorted, duplicates retained.
struct SubpathMultiset {
    std::uint32_t t = 0;
    std::vector<std::string> encoded;

    /// Sorted encoding set with duplicates removed (hashing input).
    std::vector<std::string> deduplicated() const;

    bool operator==(const SubpathMultiset&) const = default;
};

/// Canonical byte encoding of one subpath, positions most-ancestral-first:
/// a dummy is the single byte 0x00; a label group is its size as
/// little-endian u32 followed by each label as little-endian u32; positions
/// are separated by 0xFF. Pinned so signatures reproduce across
/// implementations.
std::string encode_subpath(const std::vector<SubpathPosition>& positions);

/// All length-t subpaths of the tree (t >= 1; throws otherwise).
SubpathMultiset generate_subpaths(const LabeledMergeTree& lt, std::uint32_t t);

} // namespace mtlsh
