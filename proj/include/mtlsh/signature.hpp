#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtlsh/hashing.hpp"
#include "mtlsh/labeled_tree.hpp"

namespace mtlsh {

enum class SignatureFlavor { SS, RMH };

/// A fixed-length hash signature of one tree. SS signatures have length k
/// (subpath-set MinHash at path length t); RMH signatures have length q².
/// Two signatures are comparable only when flavor, parameters, and seed all
/// match.
struct Signature {
    SignatureFlavor flavor = SignatureFlavor::SS;
    std::uint64_t seed = 0;
    std::uint32_t k = 0;     // SS: signature length; RMH: q² (derived)
    std::uint32_t t = 0;     // SS only
    std::uint32_t q = 0;     // RMH only
    std::vector<std::uint64_t> values;

    bool comparable_with(const Signature& other) const {
        return flavor == other.flavor && seed == other.seed && k == other.k &&
               t == other.t && q == other.q;
    }
};

/// Subpath signature: MinHash of the deduplicated, canonically encoded
/// length-t subpath set. Requires a universal-mode family (k = family count).
Signature ss_signature(const LabeledMergeTree& lt, std::uint32_t t,
                       const HashFamily& family);

/// Recursive MinHash with q = family count. Leaves hash their label sets
/// into one q-vector; every node with children pools the i-th components of
/// all child vectors into set i and q-MinHashes each pooled set, yielding q
/// q-vectors; the root's q vectors concatenate to a length-q² signature. A
/// single-leaf tree repeats its one q-vector q times. Only labels are
/// hashed — scalar values shape the recursion solely through the tree
/// structure, and labels on internal nodes do not participate.
Signature rmh_signature(const LabeledMergeTree& lt, const HashFamily& family);

/// Fraction of agreeing positions; throws std::invalid_argument when the
/// signatures are not comparable. The matching distance is 1 - similarity.
double hamming_similarity(const Signature& a, const Signature& b);

/// JSON-lines persistence: one {tree_id, flavor, params, seed, values}
/// record per line, hash values as decimal strings.
void write_signatures(const std::string& path,
                      const std::vector<std::pair<std::string, Signature>>& signatures);
std::vector<std::pair<std::string, Signature>> read_signatures(const std::string& path);

} // namespace mtlsh
