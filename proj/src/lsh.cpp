#include "mtlsh/lsh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mtlsh {

LshIndex build_index(const std::vector<Signature>& signatures, std::uint32_t r) {
    if (signatures.empty()) throw std::invalid_argument("cannot index zero signatures");
    const Signature& first = signatures.front();
    if (first.values.empty()) throw std::invalid_argument("cannot index empty signatures");
    const std::uint32_t k = static_cast<std::uint32_t>(first.values.size());
    if (r == 0 || k % r != 0)
        throw std::invalid_argument("band rows r=" + std::to_string(r) +
                                    " must divide signature length k=" + std::to_string(k));
    for (const Signature& s : signatures) {
        if (!s.comparable_with(first) || s.values.size() != k)
            throw std::invalid_argument("signatures in one index must share flavor, params, and seed");
    }

    LshIndex index;
    index.k = k;
    index.r = r;
    index.b = k / r;
    index.flavor = first.flavor;
    index.seed = first.seed;
    index.entries = static_cast<std::uint32_t>(signatures.size());
    index.bands.resize(index.b);
    std::vector<std::uint64_t> key(r);
    for (std::uint32_t id = 0; id < signatures.size(); ++id) {
        const auto& values = signatures[id].values;
        for (std::uint32_t band = 0; band < index.b; ++band) {
            key.assign(values.begin() + static_cast<std::size_t>(band) * r,
                       values.begin() + static_cast<std::size_t>(band + 1) * r);
            index.bands[band][key].push_back(id);
        }
    }
    return index;
}

std::set<std::pair<std::uint32_t, std::uint32_t>> candidate_pairs(const LshIndex& index) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (const auto& band : index.bands) {
        for (const auto& [key, bucket] : band) {
            for (std::size_t i = 0; i < bucket.size(); ++i)
                for (std::size_t j = i + 1; j < bucket.size(); ++j)
                    pairs.emplace(std::min(bucket[i], bucket[j]),
                                  std::max(bucket[i], bucket[j]));
        }
    }
    return pairs;
}

void PairMatrix::validate() const {
    if (data.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("matrix data size does not match n");
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i; j < n; ++j) {
            if (at(i, j) != at(j, i)) throw std::invalid_argument("matrix is not symmetric");
        }
        if (kind == MatrixKind::binary_collision && at(i, i) != 1.0)
            throw std::invalid_argument("binary matrix diagonal must be 1");
        if (kind == MatrixKind::distance && at(i, i) != 0.0)
            throw std::invalid_argument("distance matrix diagonal must be 0");
        if (kind == MatrixKind::binary_collision) {
            for (std::uint32_t j = 0; j < n; ++j)
                if (at(i, j) != 0.0 && at(i, j) != 1.0)
                    throw std::invalid_argument("binary matrix entries must be 0 or 1");
        }
    }
}

PairMatrix binary_matrix(const std::set<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                         std::uint32_t n) {
    PairMatrix m;
    m.n = n;
    m.kind = MatrixKind::binary_collision;
    m.data.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (std::uint32_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    for (const auto& [i, j] : pairs) {
        if (i >= n || j >= n)
            throw std::invalid_argument("pair id " + std::to_string(std::max(i, j)) +
                                        " outside collection of size " + std::to_string(n));
        m.at(i, j) = 1.0;
        m.at(j, i) = 1.0;
    }
    return m;
}

PairMatrix similarity_matrix(const std::vector<Signature>& signatures) {
    const std::uint32_t n = static_cast<std::uint32_t>(signatures.size());
    PairMatrix m;
    m.n = n;
    m.kind = MatrixKind::similarity;
    m.data.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (std::uint32_t i = 0; i < n; ++i) {
        m.at(i, i) = 1.0;
        for (std::uint32_t j = i + 1; j < n; ++j) {
            const double s = hamming_similarity(signatures[i], signatures[j]);
            m.at(i, j) = s;
            m.at(j, i) = s;
        }
    }
    return m;
}

PairMatrix distance_from_similarity(const PairMatrix& similarity) {
    if (similarity.kind != MatrixKind::similarity)
        throw std::invalid_argument("expected a similarity matrix");
    PairMatrix m = similarity;
    m.kind = MatrixKind::distance;
    for (double& v : m.data) v = 1.0 - v;
    return m;
}

double collision_probability(double s, std::uint32_t r, std::uint32_t b) {
    if (!(s >= 0.0 && s <= 1.0))
        throw std::invalid_argument("per-row match probability must lie in [0,1]");
    if (r == 0 || b == 0) throw std::invalid_argument("banding needs r >= 1 and b >= 1");
    return 1.0 - std::pow(1.0 - std::pow(s, static_cast<double>(r)), static_cast<double>(b));
}

void write_matrix_csv(const PairMatrix& m, const std::string& path) {
    m.validate();
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    char num[64];
    for (std::uint32_t i = 0; i < m.n; ++i) {
        for (std::uint32_t j = 0; j < m.n; ++j) {
            if (j > 0) out << ',';
            if (m.kind == MatrixKind::binary_collision) {
                out << static_cast<int>(m.at(i, j));
            } else {
                std::snprintf(num, sizeof num, "%.17g", m.at(i, j));
                out << num;
            }
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_matrix_pgm(const PairMatrix& m, const std::string& path) {
    m.validate();
    double peak = 0.0;
    for (double v : m.data) peak = std::max(peak, v);
    if (peak <= 0.0) peak = 1.0;

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "P5\n" << m.n << ' ' << m.n << "\n255\n";
    std::vector<unsigned char> row(m.n);
    for (std::uint32_t i = 0; i < m.n; ++i) {
        for (std::uint32_t j = 0; j < m.n; ++j) {
            const double scaled = m.at(i, j) / peak;
            row[j] = static_cast<unsigned char>(255.0 - std::round(scaled * 255.0));
        }
        out.write(reinterpret_cast<const char*>(row.data()), row.size());
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace mtlsh
