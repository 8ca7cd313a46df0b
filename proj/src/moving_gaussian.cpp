#include "mtlsh/moving_gaussian.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "mtlsh/rng.hpp"

namespace mtlsh {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

double squared_distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1];
    return dx * dx + dy * dy;
}

} // namespace

std::array<double, 2> MovingGaussianGeometry::fixed_peak(int which) const {
    return {center[0] + (which == 0 ? -fixed_offset : fixed_offset), center[1]};
}

std::array<double, 2> MovingGaussianGeometry::moving_peak(int step) const {
    const double angle = start_angle + kTau * step / steps;
    return {center[0] + orbit_radius * std::cos(angle),
            center[1] + orbit_radius * std::sin(angle)};
}

int MovingGaussianGeometry::phase(int step) const {
    const auto m = moving_peak(step);
    const double to_left = squared_distance(m, fixed_peak(0));
    const double to_right = squared_distance(m, fixed_peak(1));
    const double between_fixed = squared_distance(fixed_peak(0), fixed_peak(1));
    if (between_fixed <= to_left && between_fixed <= to_right) return 2;
    return to_left <= to_right ? 0 : 1;
}

MovingGaussianGeometry moving_gaussian_geometry(int steps, std::uint64_t seed) {
    if (steps < 1) throw std::invalid_argument("moving gaussian needs steps >= 1");
    MovingGaussianGeometry g;
    g.steps = steps;
    std::mt19937_64 rng(seed);
    // Jitter amplitudes stay well inside the band where the phase pattern of
    // the 12-step sequence is invariant (threshold angle 36°..52° for
    // fixed_offset in 0.092..0.102 against step angles at multiples of 30°).
    g.center[0] = 0.5 + 0.01 * (detail::unit_draw(rng) - 0.5);
    g.center[1] = 0.5 + 0.01 * (detail::unit_draw(rng) - 0.5);
    g.fixed_offset = 0.097 + 0.01 * (detail::unit_draw(rng) - 0.5);
    g.start_angle = (kTau / 90.0) * (detail::unit_draw(rng) - 0.5);   // ±2°
    return g;
}

std::vector<ScalarField> generate_moving_gaussian(int steps,
                                                  std::array<std::uint32_t, 2> grid,
                                                  std::uint64_t seed) {
    if (steps < 1) throw std::invalid_argument("moving gaussian needs steps >= 1");
    if (grid[0] < 32 || grid[1] < 32)
        throw std::invalid_argument("grid too small to resolve three Gaussians (minimum 32x32)");

    const MovingGaussianGeometry g = moving_gaussian_geometry(steps, seed);
    const double inv_two_sigma_sq = 1.0 / (2.0 * g.sigma * g.sigma);

    std::vector<ScalarField> fields;
    fields.reserve(steps);
    for (int step = 0; step < steps; ++step) {
        const std::array<std::array<double, 2>, 3> peaks = {
            g.fixed_peak(0), g.fixed_peak(1), g.moving_peak(step)};
        ScalarField f;
        f.dims = {grid[0], grid[1], 1};
        f.spacing = {1.0 / (grid[0] - 1), 1.0 / (grid[1] - 1), 1.0};
        f.values.resize(f.size());
        for (std::uint32_t y = 0; y < grid[1]; ++y) {
            for (std::uint32_t x = 0; x < grid[0]; ++x) {
                const std::array<double, 2> p = {x * f.spacing[0], y * f.spacing[1]};
                double v = 0.0;
                for (const auto& peak : peaks)
                    v += g.amplitude * std::exp(-squared_distance(p, peak) * inv_two_sigma_sq);
                f.values[f.index(x, y, 0)] = v;
            }
        }
        fields.push_back(std::move(f));
    }
    return fields;
}

} // namespace mtlsh
