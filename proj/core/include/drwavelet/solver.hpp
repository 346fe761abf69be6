#pragma once

// Douglas–Rachford on the product space H^{2^n + 1}: one copy of the
// consistent-ensemble space per constraint set, reflected through the
// diagonal.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "drwavelet/ensemble.hpp"
#include "drwavelet/filters.hpp"
#include "drwavelet/projections.hpp"

namespace drw {

struct SolverConfig {
  int n = 1;
  int M = 4;
  int d = 1;
  double eps_stop = 1e-3;
  long long max_iter = 1'000'000;
  std::uint64_t seed = 0;
  double bownik_min = 1e-6;
  int bownik_grid = 257;
  /// Also impose the α = 0 moment in C2'. Off by default: it duplicates
  /// m_ε(0) = 0 from C1^(0) and makes the iteration stall far more often.
  bool include_zero_moment = false;

  /// Throws ArgumentError on an invalid combination.
  void validate() const;
};

/// Components ordered (C1^(0), C1^(1), ..., C1^(2^n-1), C2').
struct ProductPoint {
  std::vector<ConsistentEnsemble> components;

  std::size_t size() const noexcept { return components.size(); }
  friend bool operator==(const ProductPoint&, const ProductPoint&) = default;
};

double distance(const ProductPoint& a, const ProductPoint& b);

/// The 2^n + 1 constraint sets in product order.
std::vector<ConstraintSet> constraint_sets(const SolverConfig& config);

/// Block with Re/Im entries uniform on (-1, 1). Draw order: block index,
/// row, column, real part then imaginary part.
ConsistentEnsemble random_ensemble(int n, int M, std::mt19937_64& rng);

/// project_c1_0 of a random block, replicated across all components.
ProductPoint initialize(const SolverConfig& config, std::mt19937_64& rng);

ProductPoint project_diagonal(const ProductPoint& x);

struct StepResult {
  ProductPoint x;
  ProductPoint p;
  double step_norm = 0.0;  // ‖x' - x‖
};

/// x' = x + P_C(2p - x) - p componentwise, p' = P_D(x').
StepResult dr_step(const ProductPoint& x, const ProductPoint& p, const std::vector<ConstraintSet>& sets);

struct Residuals {
  double unitarity = 0.0;    // max over ℓ of unitarity of S_ℓ U on Q_M^n
  double consistency = 0.0;  // coefficient row-structure violation
  double regularity = 0.0;   // max moment over |α| ≤ d, ε ≥ 1
  double qmf_grid = 0.0;     // qmf_residual on a 4M-per-axis grid
};

struct RunResult {
  SolverConfig config;
  bool converged = false;
  long long iterations = 0;
  double wall_time = 0.0;
  double final_step_norm = 0.0;
  FilterBank filters;
  Residuals residuals;
  bool bownik_pass = false;
  double bownik_min_abs = 0.0;
  std::optional<double> separability;
  std::uint64_t seed = 0;
  ConsistentEnsemble solution;  // the shadow point p_k
};

/// Residuals and post-checks for a candidate solution.
void evaluate_solution(const SolverConfig& config, const ConsistentEnsemble& p, RunResult& out);

RunResult solve(const SolverConfig& config);
/// Iterate from a given starting point instead of a random one.
RunResult solve(const SolverConfig& config, const ProductPoint& x0);

struct BatchSummary {
  SolverConfig config;
  int replications = 0;
  int solved = 0;
  int bownik_solved = 0;
  std::optional<double> mean_iterations;
  std::optional<long long> max_iterations;
  std::optional<double> mean_time;
  std::optional<double> max_time;
  std::optional<double> mean_separability;
  std::optional<double> max_separability;
  std::vector<RunResult> runs;
};

/// Worker count from DRW_THREADS, else the number of logical cores.
int default_thread_count();

/// Runs with seeds seed, seed + 1, ...; results are in replication order.
/// Aggregates are over converged runs.
BatchSummary batch(const SolverConfig& config, int replications, int threads = 0);

}  // namespace drw
