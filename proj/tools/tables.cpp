#include "tables.hpp"

#include <iomanip>
#include <sstream>

namespace drwcli {

namespace {

template <class T>
std::string mean_max(const std::optional<double>& mean, const std::optional<T>& max, int precision) {
  if (!mean || !max) return "-";
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << *mean << " (" << *max << ")";
  return os.str();
}

}  // namespace

const std::vector<std::pair<int, int>>& table_rows(int n) {
  static const std::vector<std::pair<int, int>> one{{4, 1}, {6, 2}, {8, 3}, {10, 4}, {12, 5}, {14, 6}};
  static const std::vector<std::pair<int, int>> two{{4, 1}, {6, 2}};
  return n == 1 ? one : two;
}

std::string format_table(int n, const std::vector<drw::BatchSummary>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(8) << "(M,d)" << " | " << std::setw(7) << "Solved"
     << " | " << std::setw(6) << "Bownik"
     << " | " << std::setw(24) << "Iterations mean (max)"
     << " | " << std::setw(20) << "Time (s) mean (max)";
  if (n == 2) os << " | " << "S(phi) mean (max)";
  os << '\n';
  for (const auto& b : rows) {
    std::ostringstream md;
    md << '(' << b.config.M << ',' << b.config.d << ')';
    std::ostringstream solved;
    solved << b.solved << '/' << b.replications;
    os << std::setw(8) << md.str() << " | " << std::setw(7) << solved.str() << " | " << std::setw(6)
       << b.bownik_solved << " | " << std::setw(24) << mean_max(b.mean_iterations, b.max_iterations, 1) << " | "
       << std::setw(20) << mean_max(b.mean_time, b.max_time, 2);
    if (n == 2) os << " | " << mean_max(b.mean_separability, b.max_separability, 3);
    os << '\n';
  }
  return os.str();
}

}  // namespace drwcli
