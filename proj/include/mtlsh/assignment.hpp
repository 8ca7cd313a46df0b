#pragma once

#include <cstdint>
#include <vector>

namespace mtlsh {

/// Exact minimum-cost bipartite assignment (Hungarian algorithm, O(n²m)).
/// `cost` is rows × cols with rows <= cols; returns the column assigned to
/// each row and, via total_cost, the optimal sum. Throws std::invalid_argument
/// on an empty or ragged matrix or rows > cols.
std::vector<std::uint32_t> min_cost_assignment(const std::vector<std::vector<double>>& cost,
                                               double* total_cost = nullptr);

} // namespace mtlsh
