// drwavelet: solve, batch, verify, render and tables subcommands.
//
// Exit codes: 0 success, 1 usage / I/O / schema error, 2 solve hit the
// iteration cap, 3 verification failed.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "drwavelet/drwavelet.hpp"
#include "tables.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCap = 2;
constexpr int kExitVerifyFailed = 3;

void add_solver_flags(CLI::App* cmd, drw::SolverConfig& c) {
  cmd->add_option("--n", c.n, "Dimension (1 or 2)")->capture_default_str();
  cmd->add_option("--M", c.M, "Filter length per axis (even, >= 4)")->capture_default_str();
  cmd->add_option("--d", c.d, "Regularity order")->capture_default_str();
  cmd->add_option("--eps", c.eps_stop, "Stopping threshold on ||x_{k+1} - x_k||")->capture_default_str();
  cmd->add_option("--max-iter", c.max_iter, "Iteration cap")->capture_default_str();
  cmd->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--bownik-min", c.bownik_min, "Bownik threshold on min |m_0|")->capture_default_str();
  cmd->add_option("--bownik-grid", c.bownik_grid, "Bownik grid points per axis")->capture_default_str();
  cmd->add_flag("--include-zero-moment", c.include_zero_moment, "Also impose the alpha = 0 moment in C2'");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

std::string summary_line(const drw::RunResult& r) {
  std::ostringstream os;
  os << (r.converged ? "converged" : "not converged") << " iterations=" << r.iterations
     << " step=" << fmt(r.final_step_norm) << " unitarity=" << fmt(r.residuals.unitarity)
     << " regularity=" << fmt(r.residuals.regularity) << " qmf=" << fmt(r.residuals.qmf_grid)
     << " bownik=" << (r.bownik_pass ? "pass" : "fail") << "(min=" << fmt(r.bownik_min_abs) << ")";
  if (r.separability) os << " separability=" << fmt(*r.separability);
  return os.str();
}

int run_solve(const drw::SolverConfig& config, const fs::path& out) {
  config.validate();
  const drw::RunResult r = drw::solve(config);
  drw::write_json(drw::run_result_to_json(r), out);
  std::cout << summary_line(r) << '\n';
  return r.converged ? kExitOk : kExitCap;
}

int run_batch(const drw::SolverConfig& config, int replications, int threads, const fs::path& out) {
  config.validate();
  if (replications < 1) throw drw::ArgumentError("replications must be >= 1");
  const drw::BatchSummary b = drw::batch(config, replications, threads);
  drw::write_json(drw::batch_to_json(b), out);
  std::cout << drwcli::format_table(config.n, {b});
  return kExitOk;
}

struct VerifyArgs {
  fs::path input;
  fs::path out;
  std::optional<int> d;
  std::optional<double> tolerance;
  drw::VerifyOptions opt;
};

int run_verify(VerifyArgs& a) {
  const drw::VerifyInput in = drw::load_verify_input(a.input);
  a.opt.d = a.d ? *a.d : (in.config ? in.config->d : drw::SolverConfig{}.d);
  // A saved run is only as accurate as its stopping threshold.
  a.opt.tolerance = a.tolerance ? *a.tolerance : (in.config ? 10.0 * in.config->eps_stop : 1e-4);
  const drw::VerificationReport r = drw::verify(in.filters, a.opt);
  if (!a.out.empty()) drw::write_json(drw::report_to_json(r), a.out);

  std::cout << "qmf_residual " << fmt(r.qmf_residual) << '\n'
            << "cross_qmf_residual " << fmt(r.cross_qmf_residual) << '\n'
            << "completeness_residual " << fmt(r.completeness_residual) << '\n'
            << "regularity_residual (d=" << a.opt.d << ") " << fmt(r.max_regularity()) << '\n'
            << "bownik " << (r.bownik_pass ? "pass" : "fail") << " min_abs " << fmt(r.bownik_min_abs) << '\n';
  if (r.separability) std::cout << "separability " << fmt(*r.separability) << '\n';
  std::cout << (r.pass() ? "PASS" : "FAIL") << " (tolerance " << fmt(r.tolerance) << ")\n";
  return r.pass() ? kExitOk : kExitVerifyFailed;
}

struct RenderArgs {
  fs::path input;
  fs::path out = "render";
  int J = 8;
  int iters = 12;
  int symbol_points = 129;
};

int run_render(const RenderArgs& a) {
  const drw::VerifyInput in = drw::load_verify_input(a.input);
  const drw::FilterBank& f = in.filters;
  const drw::SampledFunction phi = drw::cascade(f, a.J, a.iters);
  std::vector<drw::SampledFunction> psi;
  for (int eps = 1; eps < f.filter_count(); ++eps) psi.push_back(drw::wavelet_from_scaling(f, eps, phi));
  std::vector<drw::SymbolTable> symbols;
  for (int eps = 0; eps < f.filter_count(); ++eps) symbols.push_back(drw::sample_symbol(f, eps, a.symbol_points));

  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec) throw drw::IoError("cannot create directory: " + ec.message(), a.out.string());
  drw::write_csv(phi, a.out / "phi.csv");
  for (std::size_t i = 0; i < psi.size(); ++i) drw::write_csv(psi[i], a.out / ("psi_" + std::to_string(i + 1) + ".csv"));
  for (std::size_t i = 0; i < symbols.size(); ++i) drw::write_csv(symbols[i], a.out / ("m_" + std::to_string(i) + ".csv"));

  std::cout << "phi: J=" << a.J << " iters=" << phi.iterations << " last_step_change=" << fmt(phi.last_step_change)
            << " integral=" << fmt(phi.integral().real()) << '\n';
  return kExitOk;
}

struct TablesArgs {
  std::string table = "all";
  double scale = 1.0;
  int replications = 10;
  std::uint64_t seed = 0;
  int threads = 0;
  int max_rows = 0;
  fs::path out;
};

int run_tables(const TablesArgs& a) {
  if (!(a.scale > 0.0) || a.scale > 1.0) throw drw::ArgumentError("--scale must be in (0, 1]");
  if (a.replications < 1) throw drw::ArgumentError("replications must be >= 1");
  for (int n : {1, 2}) {
    if (a.table != "all" && a.table != std::to_string(n)) continue;
    std::vector<drw::BatchSummary> rows;
    int count = 0;
    for (const auto& [M, d] : drwcli::table_rows(n)) {
      if (a.max_rows > 0 && count++ >= a.max_rows) break;
      drw::SolverConfig c;
      c.n = n;
      c.M = M;
      c.d = d;
      c.seed = a.seed;
      c.max_iter = std::max<long long>(1, std::llround(static_cast<double>(c.max_iter) * a.scale));
      rows.push_back(drw::batch(c, a.replications, a.threads));
      std::cerr << "(" << M << "," << d << ") done\n";
    }
    std::cout << drwcli::format_table(n, rows) << '\n';
    if (!a.out.empty()) {
      drw::json j = drw::json::array();
      for (const auto& b : rows) j.push_back(drw::batch_to_json(b));
      drw::write_json(j, a.out / ("table" + std::to_string(n) + ".json"));
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet construction by Douglas-Rachford on matrix ensembles"};
  app.require_subcommand(1);

  drw::SolverConfig solve_cfg;
  fs::path solve_out = "result.json";
  auto* solve = app.add_subcommand("solve", "Run one solve and write the result JSON");
  add_solver_flags(solve, solve_cfg);
  solve->add_option("--out", solve_out, "Result JSON path")->capture_default_str();

  drw::SolverConfig batch_cfg;
  fs::path batch_out = "batch.json";
  int replications = 10;
  int threads = 0;
  auto* batch = app.add_subcommand("batch", "Run seeded replications and print a summary table");
  add_solver_flags(batch, batch_cfg);
  batch->add_option("--replications", replications, "Number of replications")->capture_default_str();
  batch->add_option("--threads", threads, "Worker threads (0: DRW_THREADS or all cores)")->capture_default_str();
  batch->add_option("--out", batch_out, "Summary JSON path")->capture_default_str();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a filter bank or saved run");
  verify->add_option("--input", va.input, "Filter bank or result JSON")->required();
  verify->add_option("--d", va.d, "Regularity order (default: from the run, else 1)");
  verify->add_option("--grid", va.opt.grid_points, "QMF grid points per axis (0: 4M)")->capture_default_str();
  verify->add_option("--bownik-grid", va.opt.bownik_grid, "Bownik grid points per axis")->capture_default_str();
  verify->add_option("--bownik-min", va.opt.bownik_min, "Bownik threshold")->capture_default_str();
  verify->add_option("--tolerance", va.tolerance, "Residual threshold (default: 10 eps for runs, else 1e-4)");
  verify->add_option("--out", va.out, "Report JSON path");

  RenderArgs ra;
  auto* render = app.add_subcommand("render", "Cascade phi and psi, sample the symbols, write CSV");
  render->add_option("--input", ra.input, "Filter bank or result JSON")->required();
  render->add_option("--J", ra.J, "Dyadic resolution")->capture_default_str();
  render->add_option("--iters", ra.iters, "Cascade iterations")->capture_default_str();
  render->add_option("--symbol-points", ra.symbol_points, "Symbol samples per axis")->capture_default_str();
  render->add_option("--out", ra.out, "Output directory")->capture_default_str();

  TablesArgs ta;
  auto* tables = app.add_subcommand("tables", "Re-run the (M,d) rows of the reference tables");
  tables->add_option("--table", ta.table, "1, 2 or all")->check(CLI::IsMember({"1", "2", "all"}))->capture_default_str();
  tables->add_option("--scale", ta.scale, "Fraction of the 10^6 iteration cap")->capture_default_str();
  tables->add_option("--replications", ta.replications, "Replications per row")->capture_default_str();
  tables->add_option("--seed", ta.seed, "Base seed")->capture_default_str();
  tables->add_option("--threads", ta.threads, "Worker threads (0: DRW_THREADS or all cores)")->capture_default_str();
  tables->add_option("--max-rows", ta.max_rows, "Only the first k rows of each table (0: all)")->capture_default_str();
  tables->add_option("--out", ta.out, "Directory for per-table JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve) return run_solve(solve_cfg, solve_out);
    if (*batch) return run_batch(batch_cfg, replications, threads, batch_out);
    if (*verify) return run_verify(va);
    if (*render) return run_render(ra);
    if (*tables) return run_tables(ta);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
