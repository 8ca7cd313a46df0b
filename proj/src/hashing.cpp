#include "mtlsh/hashing.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mtlsh/rng.hpp"

namespace mtlsh {

HashFamily HashFamily::universal(std::uint64_t seed, std::uint32_t count) {
    if (count == 0) throw std::invalid_argument("hash family needs count >= 1");
    HashFamily f;
    f.mode_ = HashMode::universal;
    f.seed_ = seed;
    f.count_ = count;
    f.keys_.resize(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        // Distinct per-function key; the odd constant decorrelates adjacent i.
        f.keys_[i] = detail::mix64(seed ^ (0xa0761d6478bd642fULL * (i + 1ULL)));
    }
    return f;
}

HashFamily HashFamily::permutations(std::uint64_t seed, std::uint32_t count,
                                    std::uint32_t universe) {
    if (count == 0) throw std::invalid_argument("hash family needs count >= 1");
    if (universe == 0) throw std::invalid_argument("permutation universe must be non-empty");
    HashFamily f;
    f.mode_ = HashMode::permutation;
    f.seed_ = seed;
    f.count_ = count;
    f.universe_ = universe;
    f.lists_.resize(count);
    std::mt19937_64 rng(seed);
    for (std::uint32_t i = 0; i < count; ++i) {
        auto& list = f.lists_[i];
        list.resize(universe);
        std::iota(list.begin(), list.end(), 1u);
        detail::shuffle(list, rng);
    }
    return f;
}

HashFamily HashFamily::from_priority_lists(std::vector<std::vector<std::uint32_t>> lists) {
    if (lists.empty()) throw std::invalid_argument("hash family needs count >= 1");
    const std::uint32_t universe = static_cast<std::uint32_t>(lists[0].size());
    if (universe == 0) throw std::invalid_argument("permutation universe must be non-empty");
    for (const auto& list : lists) {
        if (list.size() != universe)
            throw std::invalid_argument("priority lists must share one universe size");
        std::vector<bool> seen(universe, false);
        for (std::uint32_t v : list) {
            if (v < 1 || v > universe || seen[v - 1])
                throw std::invalid_argument("priority list is not a permutation of 1..universe");
            seen[v - 1] = true;
        }
    }
    HashFamily f;
    f.mode_ = HashMode::permutation;
    f.seed_ = 0;
    f.count_ = static_cast<std::uint32_t>(lists.size());
    f.universe_ = universe;
    f.lists_ = std::move(lists);
    return f;
}

const std::vector<std::uint32_t>& HashFamily::priority_list(std::uint32_t fn) const {
    if (mode_ != HashMode::permutation)
        throw std::logic_error("priority_list is defined for permutation mode only");
    return lists_.at(fn);
}

std::uint64_t HashFamily::min_over_u64(std::uint32_t fn,
                                       const std::vector<std::uint64_t>& set) const {
    if (set.empty()) throw std::invalid_argument("minhash of an empty set");
    if (fn >= count_) throw std::invalid_argument("hash function index out of range");
    if (mode_ == HashMode::universal) {
        std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
        for (std::uint64_t x : set) best = std::min(best, map_u64(fn, x));
        return best;
    }
    for (std::uint64_t x : set) {
        if (x < 1 || x > universe_)
            throw std::invalid_argument("set element outside permutation universe");
    }
    // First element of the priority list that belongs to the set; the sets
    // seen here are small (label groups, pooled component sets), so a linear
    // membership test beats building a lookup structure.
    for (std::uint32_t candidate : lists_[fn]) {
        if (std::find(set.begin(), set.end(), static_cast<std::uint64_t>(candidate)) !=
            set.end())
            return candidate;
    }
    throw std::logic_error("permutation scan exhausted; universe invariant broken");
}

std::uint64_t HashFamily::min_over_bytes(std::uint32_t fn,
                                         const std::vector<std::string>& set) const {
    if (set.empty()) throw std::invalid_argument("minhash of an empty set");
    if (mode_ != HashMode::universal)
        throw std::invalid_argument("byte-string elements require universal mode");
    if (fn >= count_) throw std::invalid_argument("hash function index out of range");
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (const auto& s : set)
        best = std::min(best, map_digest(fn, detail::fnv1a(s.data(), s.size())));
    return best;
}

std::vector<std::uint64_t> minhash_u64(const std::vector<std::uint64_t>& set,
                                       const HashFamily& family) {
    std::vector<std::uint64_t> out(family.count());
    for (std::uint32_t i = 0; i < family.count(); ++i)
        out[i] = family.min_over_u64(i, set);
    return out;
}

std::vector<std::uint64_t> minhash_bytes(const std::vector<std::string>& set,
                                         const HashFamily& family) {
    if (set.empty()) throw std::invalid_argument("minhash of an empty set");
    if (family.mode() != HashMode::universal)
        throw std::invalid_argument("byte-string elements require universal mode");
    // Digest each element once; every function then only mixes the digest.
    std::vector<std::uint64_t> digests(set.size());
    for (std::size_t i = 0; i < set.size(); ++i)
        digests[i] = detail::fnv1a(set[i].data(), set[i].size());
    std::vector<std::uint64_t> out(family.count());
    for (std::uint32_t i = 0; i < family.count(); ++i) {
        std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
        for (std::uint64_t d : digests) best = std::min(best, family.map_digest(i, d));
        out[i] = best;
    }
    return out;
}

} // namespace mtlsh
