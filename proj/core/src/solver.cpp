#include "drwavelet/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

namespace drw {

void SolverConfig::validate() const {
  if (n < 1 || n > kMaxDim) throw ArgumentError("n must be in [1, " + std::to_string(kMaxDim) + "]");
  if (M < 4 || M % 2 != 0) throw ArgumentError("M must be even ≥ 4");
  if (d < 0) throw ArgumentError("d must be >= 0");
  if (!(eps_stop > 0.0)) throw ArgumentError("eps_stop must be > 0");
  if (max_iter < 1) throw ArgumentError("max_iter must be >= 1");
  if (!(bownik_min > 0.0)) throw ArgumentError("bownik_min must be > 0");
  if (bownik_grid < 2) throw ArgumentError("bownik_grid must be >= 2");
}

double distance(const ProductPoint& a, const ProductPoint& b) {
  if (a.size() != b.size()) throw ArgumentError("product points have different lengths");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += squared_norm(a.components[i] - b.components[i]);
  return std::sqrt(s);
}

std::vector<ConstraintSet> constraint_sets(const SolverConfig& config) {
  config.validate();
  std::vector<ConstraintSet> sets;
  sets.push_back(ConstraintSet::c1_0(config.n, config.M));
  for (int ell = 1; ell < (1 << config.n); ++ell) sets.push_back(ConstraintSet::c1_ell(config.n, config.M, ell));
  sets.push_back(ConstraintSet::c2prime(config.n, config.M, config.d, config.include_zero_moment));
  return sets;
}

namespace {

// Uniform on (-1, 1) from the top 53 bits; the single value that maps to
// exactly -1 is redrawn.
double uniform_open(std::mt19937_64& rng) {
  while (true) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double x = 2.0 * u - 1.0;
    if (x > -1.0) return x;
  }
}

}  // namespace

ConsistentEnsemble random_ensemble(int n, int M, std::mt19937_64& rng) {
  ConsistentEnsemble c(n, M);
  const int N = c.matrix_size();
  for (std::size_t i = 0; i < c.count(); ++i) {
    auto m = c[i];
    for (int r = 0; r < N; ++r) {
      for (int col = 0; col < N; ++col) {
        const double re = uniform_open(rng);
        const double im = uniform_open(rng);
        m(r, col) = {re, im};
      }
    }
  }
  return c;
}

ProductPoint initialize(const SolverConfig& config, std::mt19937_64& rng) {
  config.validate();
  const ConsistentEnsemble start = project_c1_0(random_ensemble(config.n, config.M, rng));
  return ProductPoint{std::vector<ConsistentEnsemble>((std::size_t{1} << config.n) + 1, start)};
}

ProductPoint project_diagonal(const ProductPoint& x) { return ProductPoint{project_diagonal(x.components)}; }

StepResult dr_step(const ProductPoint& x, const ProductPoint& p, const std::vector<ConstraintSet>& sets) {
  if (x.size() != sets.size() || p.size() != sets.size()) {
    throw ArgumentError("product point does not match the number of constraint sets");
  }
  StepResult out;
  out.x.components.reserve(x.size());
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    ConsistentEnsemble reflected = 2.0 * p.components[i];
    reflected -= x.components[i];
    ConsistentEnsemble delta = sets[i].project(reflected);
    delta -= p.components[i];
    s += squared_norm(delta);
    out.x.components.push_back(x.components[i] + delta);
  }
  out.step_norm = std::sqrt(s);
  out.p = project_diagonal(out.x);
  return out;
}

void evaluate_solution(const SolverConfig& config, const ConsistentEnsemble& p, RunResult& out) {
  const MatrixEnsemble full = expand(p);
  double unitarity = 0.0;
  for (int ell = 0; ell < p.matrix_size(); ++ell) {
    unitarity = std::max(unitarity, unitarity_residual(ell == 0 ? full : shift_half(ell, full, +1)));
  }
  out.residuals.unitarity = unitarity;
  out.residuals.consistency = structure_residual(idft(full));

  out.filters = extract_filters(p);
  double reg = 0.0;
  for (const auto& [alpha, v] : regularity_residual(out.filters, config.d)) reg = std::max(reg, v);
  out.residuals.regularity = reg;
  out.residuals.qmf_grid = qmf_residual(out.filters, 4 * config.M);

  const auto b = bownik_check(out.filters, config.bownik_grid, config.bownik_min);
  out.bownik_pass = b.pass;
  out.bownik_min_abs = b.min_abs;
  out.separability = config.n == 2 ? std::optional<double>(separability_measure(out.filters)) : std::nullopt;
  out.solution = p;
}

RunResult solve(const SolverConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  return solve(config, initialize(config, rng));
}

RunResult solve(const SolverConfig& config, const ProductPoint& x0) {
  config.validate();
  const auto sets = constraint_sets(config);
  if (x0.size() != sets.size()) throw ArgumentError("initial point has the wrong number of components");
  for (const auto& c : x0.components) {
    if (c.dim() != config.n || c.grid_size() != config.M) throw ArgumentError("initial point has the wrong shape");
  }

  const auto t0 = std::chrono::steady_clock::now();
  RunResult r;
  r.config = config;
  r.seed = config.seed;

  ProductPoint x = x0;
  ProductPoint p = project_diagonal(x);
  for (long long it = 1; it <= config.max_iter; ++it) {
    StepResult s = dr_step(x, p, sets);
    x = std::move(s.x);
    p = std::move(s.p);
    r.iterations = it;
    r.final_step_norm = s.step_norm;
    if (!std::isfinite(s.step_norm)) break;
    if (s.step_norm < config.eps_stop) {
      r.converged = true;
      break;
    }
  }

  evaluate_solution(config, p.components[0], r);
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

int default_thread_count() {
  if (const char* env = std::getenv("DRW_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

BatchSummary batch(const SolverConfig& config, int replications, int threads) {
  config.validate();
  if (replications < 1) throw ArgumentError("replications must be >= 1");
  if (threads <= 0) threads = default_thread_count();
  threads = std::min(threads, replications);

  BatchSummary summary;
  summary.config = config;
  summary.replications = replications;
  summary.runs.resize(replications);

  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(replications);
  auto worker = [&] {
    for (int i = next++; i < replications; i = next++) {
      SolverConfig c = config;
      c.seed = config.seed + static_cast<std::uint64_t>(i);
      try {
        summary.runs[i] = solve(c);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  double it_sum = 0.0, time_sum = 0.0, sep_sum = 0.0;
  int sep_count = 0;
  for (const auto& r : summary.runs) {
    if (!r.converged) continue;
    ++summary.solved;
    if (r.bownik_pass) ++summary.bownik_solved;
    it_sum += static_cast<double>(r.iterations);
    time_sum += r.wall_time;
    summary.max_iterations = std::max(summary.max_iterations.value_or(0), r.iterations);
    summary.max_time = std::max(summary.max_time.value_or(0.0), r.wall_time);
    if (r.separability) {
      sep_sum += *r.separability;
      ++sep_count;
      summary.max_separability = std::max(summary.max_separability.value_or(0.0), *r.separability);
    }
  }
  if (summary.solved > 0) {
    summary.mean_iterations = it_sum / summary.solved;
    summary.mean_time = time_sum / summary.solved;
  }
  if (sep_count > 0) summary.mean_separability = sep_sum / sep_count;
  return summary;
}

}  // namespace drw
