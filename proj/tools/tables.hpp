#pragma once

#include <string>
#include <utility>
#include <vector>

#include "drwavelet/solver.hpp"

namespace drwcli {

/// (M, d) rows of the 1D and 2D reference tables.
const std::vector<std::pair<int, int>>& table_rows(int n);

/// Text table: (M,d) | Solved | Bownik | Iterations mean (max) |
/// Time (s) mean (max) [| S(phi) mean (max) for n = 2].
std::string format_table(int n, const std::vector<drw::BatchSummary>& rows);

}  // namespace drwcli
