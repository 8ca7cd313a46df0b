#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mtlsh/lsh.hpp"
#include "mtlsh/rng.hpp"

#include "../helpers.hpp"

using mtlsh::build_index;
using mtlsh::candidate_pairs;
using mtlsh::collision_probability;
using mtlsh::HashFamily;
using mtlsh::MatrixKind;
using mtlsh::PairMatrix;
using mtlsh::Signature;
using mtlsh::SignatureFlavor;

namespace {

Signature make_sig(std::vector<std::uint64_t> values, std::uint32_t t = 2,
                   std::uint64_t seed = 0) {
    Signature s;
    s.flavor = SignatureFlavor::SS;
    s.seed = seed;
    s.k = static_cast<std::uint32_t>(values.size());
    s.t = t;
    s.values = std::move(values);
    return s;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_SUITE("lsh") {

TEST_CASE("bands bucket exactly by contiguous rows") {
    // k=4, r=2 -> bands [0,2) and [2,4)
    const std::vector<Signature> sigs{
        make_sig({1, 2, 3, 4}),
        make_sig({1, 2, 9, 9}),   // shares band 0 with #0
        make_sig({8, 8, 3, 4}),   // shares band 1 with #0
        make_sig({7, 7, 7, 7}),   // shares nothing
    };
    const auto index = build_index(sigs, 2);
    CHECK(index.k == 4);
    CHECK(index.r == 2);
    CHECK(index.b == 2);
    CHECK(index.entries == 4);
    REQUIRE(index.bands.size() == 2);

    const auto pairs = candidate_pairs(index);
    const std::set<std::pair<std::uint32_t, std::uint32_t>> expected{{0, 1}, {0, 2}};
    CHECK(pairs == expected);
}

TEST_CASE("a full-width band requires total equality") {
    const std::vector<Signature> sigs{
        make_sig({1, 2, 3, 4}),
        make_sig({1, 2, 3, 4}),
        make_sig({1, 2, 3, 5}),
    };
    const auto index = build_index(sigs, 4);   // b = 1
    CHECK(index.b == 1);
    const auto pairs = candidate_pairs(index);
    CHECK(pairs == std::set<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}});
}

TEST_CASE("pairs are unordered, deduplicated, and never reflexive") {
    // identical signatures collide in both bands but appear once
    const std::vector<Signature> sigs{
        make_sig({5, 5, 5, 5}),
        make_sig({5, 5, 5, 5}),
    };
    const auto pairs = candidate_pairs(build_index(sigs, 2));
    REQUIRE(pairs.size() == 1);
    CHECK(pairs.begin()->first == 0);
    CHECK(pairs.begin()->second == 1);
}

TEST_CASE("wider bands can only lose candidates") {
    std::mt19937_64 rng(77);
    std::vector<Signature> sigs;
    for (int i = 0; i < 40; ++i) {
        std::vector<std::uint64_t> values(8);
        for (auto& v : values) v = mtlsh::detail::bounded_draw(rng, 3);
        sigs.push_back(make_sig(std::move(values)));
    }
    const auto p1 = candidate_pairs(build_index(sigs, 1));
    const auto p2 = candidate_pairs(build_index(sigs, 2));
    const auto p4 = candidate_pairs(build_index(sigs, 4));
    CHECK(std::includes(p1.begin(), p1.end(), p2.begin(), p2.end()));
    CHECK(std::includes(p2.begin(), p2.end(), p4.begin(), p4.end()));
    // the small alphabet makes narrow bands nearly all-pairs
    CHECK(p1.size() > p2.size());
    CHECK(p2.size() > p4.size());
    CHECK(!p4.empty());
}

TEST_CASE("index construction rejects bad input") {
    const std::vector<Signature> ok{make_sig({1, 2, 3, 4})};
    CHECK_THROWS_AS(build_index(ok, 3), std::invalid_argument);    // 3 does not divide 4
    CHECK_THROWS_AS(build_index(ok, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_index({}, 2), std::invalid_argument);    // nothing to index

    std::vector<Signature> mixed{make_sig({1, 2, 3, 4}), make_sig({1, 2, 3, 4}, 2, 9)};
    CHECK_THROWS_AS(build_index(mixed, 2), std::invalid_argument); // seeds differ
}

TEST_CASE("collision probability closed form") {
    CHECK(collision_probability(0.0, 4, 5) == 0.0);
    CHECK(collision_probability(1.0, 4, 5) == 1.0);
    CHECK(collision_probability(0.5, 1, 1) == 0.5);
    CHECK(collision_probability(0.5, 2, 1) == doctest::Approx(0.25));
    CHECK(collision_probability(0.5, 2, 3) ==
          doctest::Approx(1.0 - std::pow(1.0 - 0.25, 3)));
    // more bands raise it, wider rows lower it
    CHECK(collision_probability(0.3, 2, 10) > collision_probability(0.3, 2, 5));
    CHECK(collision_probability(0.3, 4, 5) < collision_probability(0.3, 2, 5));
    CHECK_THROWS_AS(collision_probability(-0.1, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(collision_probability(1.1, 2, 2), std::invalid_argument);
}

TEST_CASE("banding of synthetic signatures tracks the closed form") {
    // Signatures agree per-position with probability s: simulate and compare.
    const double s = 0.5;
    const std::uint32_t r = 2, b = 4, k = r * b;
    std::mt19937_64 rng(123);
    int collided = 0;
    const int trials = 20000;
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<std::uint64_t> va(k), vb(k);
        for (std::uint32_t i = 0; i < k; ++i) {
            va[i] = i + 1000;
            vb[i] = mtlsh::detail::unit_draw(rng) < s ? va[i] : 1u;
        }
        const auto pairs =
            candidate_pairs(build_index({make_sig(va), make_sig(vb)}, r));
        if (!pairs.empty()) ++collided;
    }
    const double expected = collision_probability(s, r, b);
    const double observed = static_cast<double>(collided) / trials;
    CHECK(std::abs(observed - expected) < 0.02);
}

TEST_CASE("binary matrix places pairs symmetrically with unit diagonal") {
    const std::set<std::pair<std::uint32_t, std::uint32_t>> pairs{{0, 2}, {1, 2}};
    const PairMatrix m = mtlsh::binary_matrix(pairs, 3);
    CHECK(m.n == 3);
    CHECK(m.kind == MatrixKind::binary_collision);
    m.validate();
    CHECK(m.at(0, 2) == 1.0);
    CHECK(m.at(2, 0) == 1.0);
    CHECK(m.at(1, 2) == 1.0);
    CHECK(m.at(0, 1) == 0.0);
    for (std::uint32_t i = 0; i < 3; ++i) CHECK(m.at(i, i) == 1.0);

    CHECK_THROWS_AS(mtlsh::binary_matrix({{0, 3}}, 3), std::invalid_argument);
}

TEST_CASE("similarity matrix is all-pairs hamming agreement") {
    const std::vector<Signature> sigs{
        make_sig({1, 2, 3, 4}),
        make_sig({1, 2, 3, 9}),
        make_sig({9, 9, 9, 9}),
    };
    const PairMatrix m = mtlsh::similarity_matrix(sigs);
    m.validate();
    CHECK(m.at(0, 1) == doctest::Approx(0.75));
    CHECK(m.at(1, 0) == doctest::Approx(0.75));
    CHECK(m.at(0, 2) == 0.0);
    CHECK(m.at(1, 2) == doctest::Approx(0.25));
    for (std::uint32_t i = 0; i < 3; ++i) CHECK(m.at(i, i) == 1.0);

    const PairMatrix d = mtlsh::distance_from_similarity(m);
    CHECK(d.kind == MatrixKind::distance);
    d.validate();
    CHECK(d.at(0, 1) == doctest::Approx(0.25));
    for (std::uint32_t i = 0; i < 3; ++i) CHECK(d.at(i, i) == 0.0);
}

TEST_CASE("matrix validate catches asymmetry and diagonal violations") {
    PairMatrix m;
    m.n = 2;
    m.kind = MatrixKind::binary_collision;
    m.data = {1, 0, 1, 1};   // asymmetric
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m.data = {0, 1, 1, 1};   // binary kind needs unit diagonal
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m.kind = MatrixKind::distance;
    m.data = {0, 1, 1, 0.5};   // distance kind needs zero diagonal
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m.data = {0, 1, 1, 0};
    m.validate();
    m.data = {0, 1, 1};   // wrong size
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}

TEST_CASE("csv export is exact and integer-formatted for binary matrices") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto bin_path = (dir / "m_bin.csv").string();
    const auto sim_path = (dir / "m_sim.csv").string();

    const PairMatrix bin = mtlsh::binary_matrix({{0, 1}}, 2);
    mtlsh::write_matrix_csv(bin, bin_path);
    CHECK(slurp(bin_path) == "1,1\n1,1\n");

    PairMatrix sim;
    sim.n = 2;
    sim.kind = MatrixKind::similarity;
    sim.data = {1.0, 0.1, 0.1, 1.0};   // 0.1 is not exactly representable
    mtlsh::write_matrix_csv(sim, sim_path);
    std::string text = slurp(sim_path);
    // shortest-round-trip formatting: parse back bit-exactly
    for (char& c : text)
        if (c == ',' || c == '\n') c = ' ';
    std::istringstream in(text);
    std::vector<double> parsed;
    for (double v; in >> v;) parsed.push_back(v);
    REQUIRE(parsed.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(parsed[i] == sim.data[i]);
}

TEST_CASE("pgm export maps zero to white and the maximum to black") {
    const auto path = (std::filesystem::temp_directory_path() / "m.pgm").string();
    PairMatrix m;
    m.n = 2;
    m.kind = MatrixKind::similarity;
    m.data = {1.0, 0.5, 0.5, 1.0};
    mtlsh::write_matrix_pgm(m, path);

    const std::string raw = slurp(path);
    // header: P5, dimensions, maxval 255, then 4 pixel bytes
    std::istringstream header(raw);
    std::string magic;
    int w = 0, h = 0, maxval = 0;
    header >> magic >> w >> h >> maxval;
    CHECK(magic == "P5");
    CHECK(w == 2);
    CHECK(h == 2);
    CHECK(maxval == 255);
    REQUIRE(raw.size() >= 4);
    const auto* pixels =
        reinterpret_cast<const unsigned char*>(raw.data() + raw.size() - 4);
    CHECK(pixels[0] == 0);     // 1.0 = max -> black
    CHECK(pixels[1] == 127);   // 255 - round(0.5 * 255)
    CHECK(pixels[2] == 127);
    CHECK(pixels[3] == 0);

    // an all-zero matrix renders white
    PairMatrix zero;
    zero.n = 2;
    zero.kind = MatrixKind::distance;
    zero.data = {0, 0, 0, 0};
    mtlsh::write_matrix_pgm(zero, path);
    const std::string wraw = slurp(path);
    const auto* wpix =
        reinterpret_cast<const unsigned char*>(wraw.data() + wraw.size() - 4);
    for (int i = 0; i < 4; ++i) CHECK(wpix[i] == 255);
}

}
