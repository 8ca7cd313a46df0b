#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace mtlsh {

/// A scalar function sampled on a structured 2D/3D grid (nz = 1 means 2D).
/// Values are stored row-major with x fastest. All values must be finite.
struct ScalarField {
    std::array<std::uint32_t, 3> dims{1, 1, 1};
    std::array<double, 3> spacing{1.0, 1.0, 1.0};
    std::vector<double> values;

    std::size_t size() const {
        return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
    }

    std::size_t index(std::uint32_t x, std::uint32_t y, std::uint32_t z) const {
        return (static_cast<std::size_t>(z) * dims[1] + y) * dims[0] + x;
    }

    std::array<std::uint32_t, 3> coords(std::size_t vertex) const {
        const std::uint32_t x = static_cast<std::uint32_t>(vertex % dims[0]);
        const std::uint32_t y = static_cast<std::uint32_t>((vertex / dims[0]) % dims[1]);
        const std::uint32_t z = static_cast<std::uint32_t>(vertex / (static_cast<std::size_t>(dims[0]) * dims[1]));
        return {x, y, z};
    }

    /// World-space position of a grid vertex (coords scaled by spacing).
    std::array<double, 3> position(std::size_t vertex) const {
        const auto c = coords(vertex);
        return {c[0] * spacing[0], c[1] * spacing[1], c[2] * spacing[2]};
    }

    bool is_2d() const { return dims[2] == 1; }

    /// Throws std::invalid_argument on dimension/value-count mismatch or
    /// non-finite values.
    void validate() const;
};

enum class FieldFormat { raw_binary, csv };

/// Reads a field from disk. Errors carry the byte offset (raw binary) or the
/// line number (CSV) of the offending datum.
ScalarField load_field(const std::string& path, FieldFormat format);

/// Writes a field; raw binary round-trips bit-exactly.
void save_field(const ScalarField& field, const std::string& path, FieldFormat format);

/// Picks the format from the file extension (.mtlf = raw binary, .csv = CSV).
FieldFormat field_format_for_path(const std::string& path);

} // namespace mtlsh
