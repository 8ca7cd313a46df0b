#include "mtlsh/assignment.hpp"

#include <limits>
#include <stdexcept>

namespace mtlsh {

std::vector<std::uint32_t> min_cost_assignment(const std::vector<std::vector<double>>& cost,
                                               double* total_cost) {
    const std::size_t n = cost.size();
    if (n == 0) throw std::invalid_argument("assignment needs at least one row");
    const std::size_t m = cost[0].size();
    for (const auto& row : cost)
        if (row.size() != m) throw std::invalid_argument("assignment matrix is ragged");
    if (n > m) throw std::invalid_argument("assignment needs rows <= cols");

    constexpr double kInf = std::numeric_limits<double>::infinity();
    // Potentials-based shortest augmenting path formulation; arrays are
    // 1-based with column 0 as the virtual start of each augmentation.
    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<std::size_t> match(m + 1, 0), way(m + 1, 0);

    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(m + 1, kInf);
        std::vector<bool> used(m + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = match[j0];
            double delta = kInf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<std::uint32_t> row_to_col(n, 0);
    double sum = 0.0;
    for (std::size_t j = 1; j <= m; ++j) {
        if (match[j] != 0) {
            row_to_col[match[j] - 1] = static_cast<std::uint32_t>(j - 1);
            sum += cost[match[j] - 1][j - 1];
        }
    }
    if (total_cost) *total_cost = sum;
    return row_to_col;
}

} // namespace mtlsh
