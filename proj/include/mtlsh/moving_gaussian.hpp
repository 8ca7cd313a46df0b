#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mtlsh/scalar_field.hpp"

namespace mtlsh {

/// Resolved geometry of one Moving Gaussian sequence: three equal-amplitude
/// isotropic Gaussians on the unit square — two fixed on the horizontal
/// mid-line, one tracing a counterclockwise circle around the center, one
/// full revolution over the sequence. The seed jitters the center, the
/// fixed-peak offset, and the start angle slightly; the jitter ranges are
/// chosen so the per-step phase classification below never changes.
struct MovingGaussianGeometry {
    int steps = 12;
    double amplitude = 1.0;
    // Width of the domain. Narrow enough that, at the 0.05-radius scale, the
    // moving peak's tail gradient near a fixed peak stays well below one
    // grid-cell drop of the fixed Gaussian itself — the restricted argmax of
    // each fixed peak is then the same vertex at every step, even at the
    // minimum 32x32 grid.
    double sigma = 1.0 / 20.0;
    double orbit_radius = 0.25;       // of the domain width
    std::array<double, 2> center{0.5, 0.5};
    double fixed_offset = 0.097;      // fixed peaks at center.x -+ fixed_offset
    double start_angle = 0.0;         // radians

    std::array<double, 2> fixed_peak(int which) const;     // which in {0, 1}
    std::array<double, 2> moving_peak(int step) const;

    /// Which merge happens first in the superlevel tree of this step:
    /// 0 = moving peak joins the left fixed peak, 1 = the right one,
    /// 2 = the two fixed peaks join each other first. Decided by the closest
    /// peak pair, which for equal-width equal-height Gaussians is the pair
    /// with the highest connecting saddle.
    int phase(int step) const;
};

/// Deterministic geometry for (steps, seed); independent of the grid.
MovingGaussianGeometry moving_gaussian_geometry(int steps, std::uint64_t seed);

/// Samples the sequence on an nx×ny grid over the unit square. steps >= 1;
/// both grid dimensions must be at least 32 so three peaks stay resolved.
std::vector<ScalarField> generate_moving_gaussian(int steps,
                                                  std::array<std::uint32_t, 2> grid,
                                                  std::uint64_t seed);

} // namespace mtlsh
