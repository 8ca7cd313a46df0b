#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mtlsh {

namespace detail {

// splitmix64 finalizer. Used for all universal-mode hashing because its
// output is fully determined by the arithmetic below — no dependence on
// implementation-defined standard-library distributions.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace detail

enum class HashMode { permutation, universal };

/// A seeded family of MinHash hash functions. The same (seed, count, mode)
/// always reconstructs the same functions, across runs and platforms.
///
/// Permutation mode stores one priority list per function: a permutation of
/// the universe {1..U}, read as "elements earlier in the list hash lower".
/// min_over_* then returns the first list element contained in the query set
/// (the element itself, not its position). Universal mode derives function i
/// from (seed, i) via 64-bit mixing and returns the minimal mapped value.
class HashFamily {
public:
    /// Universal (mixing-based) family of `count` functions.
    static HashFamily universal(std::uint64_t seed, std::uint32_t count);

    /// Random permutation family over the universe {1..universe}.
    static HashFamily permutations(std::uint64_t seed, std::uint32_t count,
                                   std::uint32_t universe);

    /// Explicit permutation family; each list must be a permutation of
    /// {1..lists[0].size()}. Seed is recorded as 0.
    static HashFamily from_priority_lists(std::vector<std::vector<std::uint32_t>> lists);

    HashMode mode() const { return mode_; }
    std::uint32_t count() const { return count_; }
    std::uint64_t seed() const { return seed_; }
    std::uint32_t universe() const { return universe_; }
    const std::vector<std::uint32_t>& priority_list(std::uint32_t fn) const;

    /// Universal-mode value of function `fn` on a 64-bit element.
    std::uint64_t map_u64(std::uint32_t fn, std::uint64_t element) const {
        return detail::mix64(element ^ keys_[fn]);
    }

    /// Universal-mode value of function `fn` on a pre-digested byte string.
    std::uint64_t map_digest(std::uint32_t fn, std::uint64_t digest) const {
        return detail::mix64(digest ^ keys_[fn]);
    }

    /// MinHash of one function over a non-empty set of 64-bit elements.
    /// Permutation mode requires every element to lie in {1..universe}.
    std::uint64_t min_over_u64(std::uint32_t fn,
                               const std::vector<std::uint64_t>& set) const;

    /// MinHash of one function over a non-empty set of byte strings
    /// (universal mode only; strings are digested then mixed).
    std::uint64_t min_over_bytes(std::uint32_t fn,
                                 const std::vector<std::string>& set) const;

private:
    HashFamily() = default;

    HashMode mode_ = HashMode::universal;
    std::uint64_t seed_ = 0;
    std::uint32_t count_ = 0;
    std::uint32_t universe_ = 0;                      // permutation mode only
    std::vector<std::uint64_t> keys_;                 // universal mode, one per fn
    std::vector<std::vector<std::uint32_t>> lists_;   // permutation mode, one per fn
};

/// Full MinHash vector: position i = function i's minimum over the set.
/// Throws std::invalid_argument on an empty set or out-of-universe element.
std::vector<std::uint64_t> minhash_u64(const std::vector<std::uint64_t>& set,
                                       const HashFamily& family);

/// MinHash vector over byte-string elements (universal mode only).
std::vector<std::uint64_t> minhash_bytes(const std::vector<std::string>& set,
                                         const HashFamily& family);

} // namespace mtlsh
