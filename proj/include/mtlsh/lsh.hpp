#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mtlsh/signature.hpp"

namespace mtlsh {

/// Banded LSH index: b = k/r band tables, band i keyed by the contiguous
/// rows [r*i, r*(i+1)) of each signature. Keys are compared exactly (no
/// second-level hashing), so candidates have no key-collision false
/// positives. Build is single-writer; lookups afterward are read-only.
struct LshIndex {
    std::uint32_t k = 0, r = 0, b = 0;
    SignatureFlavor flavor = SignatureFlavor::SS;
    std::uint64_t seed = 0;
    std::uint32_t entries = 0;
    std::vector<std::map<std::vector<std::uint64_t>, std::vector<std::uint32_t>>> bands;
};

/// Indexes signatures under tree ids 0..n-1 (their positions). All
/// signatures must be mutually comparable and r must divide k exactly;
/// otherwise std::invalid_argument.
LshIndex build_index(const std::vector<Signature>& signatures, std::uint32_t r);

/// Unordered id pairs sharing at least one band bucket (self-pairs excluded).
std::set<std::pair<std::uint32_t, std::uint32_t>> candidate_pairs(const LshIndex& index);

enum class MatrixKind { binary_collision, similarity, distance };

/// Symmetric matrix over a tree collection. Binary kind is 0/1 with unit
/// diagonal; distance kind has zero diagonal.
struct PairMatrix {
    std::uint32_t n = 0;
    MatrixKind kind = MatrixKind::binary_collision;
    std::vector<double> data;   // row-major n×n

    double& at(std::uint32_t i, std::uint32_t j) {
        return data[static_cast<std::size_t>(i) * n + j];
    }
    double at(std::uint32_t i, std::uint32_t j) const {
        return data[static_cast<std::size_t>(i) * n + j];
    }

    /// Symmetry plus the kind's diagonal convention; throws on violation.
    void validate() const;
};

/// 0/1 collision matrix of the reported pairs (diagonal forced to 1).
/// Throws std::invalid_argument when an id is outside 0..n-1.
PairMatrix binary_matrix(const std::set<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                         std::uint32_t n);

/// All-pairs Hamming similarity matrix (diagonal 1).
PairMatrix similarity_matrix(const std::vector<Signature>& signatures);

/// 1 - similarity, as a distance-kind matrix.
PairMatrix distance_from_similarity(const PairMatrix& similarity);

/// Probability that banding reports a pair whose per-row match probability
/// is s: 1 - (1 - s^r)^b. Throws std::invalid_argument outside [0,1].
double collision_probability(double s, std::uint32_t r, std::uint32_t b);

/// CSV export: n rows of n comma-separated values (integers for the binary
/// kind, shortest round-trip decimals otherwise).
void write_matrix_csv(const PairMatrix& m, const std::string& path);

/// Binary 8-bit PGM (P5): 0 maps to white and the maximum entry to black,
/// linearly in between (binary matrices therefore render 1 as black).
void write_matrix_pgm(const PairMatrix& m, const std::string& path);

} // namespace mtlsh
