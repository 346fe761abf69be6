#include "drwavelet/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

namespace drw {

namespace {

// Schema problems detected away from a file; load functions attach the path.
[[noreturn]] void schema_error(const std::string& what) { throw IoError("schema: " + what, ""); }

const json& field(const json& j, const char* name) {
  if (!j.is_object()) schema_error("expected an object");
  auto it = j.find(name);
  if (it == j.end()) schema_error(std::string("missing field '") + name + "'");
  return *it;
}

int int_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) schema_error(std::string("field '") + name + "' must be an integer");
  return v.get<int>();
}

double number(const json& v, const char* what) {
  if (!v.is_number()) schema_error(std::string(what) + " must be a number");
  return v.get<double>();
}

std::vector<int> index_array(const json& v, int n, int extent, const char* what) {
  if (!v.is_array() || static_cast<int>(v.size()) != n) {
    schema_error(std::string(what) + " must be an array of " + std::to_string(n) + " integers");
  }
  std::vector<int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) schema_error(std::string(what) + " entries must be integers");
    const int x = e.get<int>();
    if (x < 0 || x >= extent) schema_error(std::string(what) + " entry out of range");
    out.push_back(x);
  }
  return out;
}

template <class Fn>
auto with_path(const std::filesystem::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const IoError& e) {
    if (!e.path().empty()) throw;
    throw IoError(e.what(), path.string());
  } catch (const json::exception& e) {
    throw IoError(std::string("schema: ") + e.what(), path.string());
  } catch (const ArgumentError& e) {
    throw IoError(std::string("schema: ") + e.what(), path.string());
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing", path.string());
  out << std::setprecision(17);
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed", path.string());
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json ensemble_to_json(const ConsistentEnsemble& c) {
  json block = json::array();
  const int N = c.matrix_size();
  for (std::size_t i = 0; i < c.count(); ++i) {
    json re = json::array();
    json im = json::array();
    for (int r = 0; r < N; ++r) {
      json rr = json::array();
      json ir = json::array();
      for (int col = 0; col < N; ++col) {
        rr.push_back(c[i](r, col).real());
        ir.push_back(c[i](r, col).imag());
      }
      re.push_back(std::move(rr));
      im.push_back(std::move(ir));
    }
    block.push_back({{"index", c.grid().index(i).coords}, {"re", std::move(re)}, {"im", std::move(im)}});
  }
  return {{"n", c.dim()}, {"M", c.grid_size()}, {"block", std::move(block)}};
}

ConsistentEnsemble ensemble_from_json(const json& j) {
  const int n = int_field(j, "n");
  const int M = int_field(j, "M");
  ConsistentEnsemble c(n, M);
  const int N = c.matrix_size();
  const json& block = field(j, "block");
  if (!block.is_array() || block.size() != c.count()) schema_error("block must list every Q_{M/2}^n entry once");
  std::vector<bool> seen(c.count(), false);
  for (const auto& entry : block) {
    const auto idx = index_array(field(entry, "index"), n, M / 2, "block index");
    const std::size_t lin = c.grid().linear(idx);
    if (seen[lin]) schema_error("duplicate block index");
    seen[lin] = true;
    const json& re = field(entry, "re");
    const json& im = field(entry, "im");
    for (const json* m : {&re, &im}) {
      if (!m->is_array() || static_cast<int>(m->size()) != N) schema_error("block matrices must be 2^n x 2^n");
      for (const auto& row : *m) {
        if (!row.is_array() || static_cast<int>(row.size()) != N) schema_error("block matrices must be 2^n x 2^n");
      }
    }
    for (int r = 0; r < N; ++r) {
      for (int col = 0; col < N; ++col) c[lin](r, col) = {number(re[r][col], "re"), number(im[r][col], "im")};
    }
  }
  return c;
}

json filters_to_json(const FilterBank& f) {
  json filters = json::array();
  const Grid grid = f.grid();
  for (int eps = 0; eps < f.filter_count(); ++eps) {
    json coeffs = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      coeffs.push_back({{"k", grid.index(i).coords}, {"re", f.g[eps][i].real()}, {"im", f.g[eps][i].imag()}});
    }
    filters.push_back({{"epsilon", eps}, {"coeffs", std::move(coeffs)}});
  }
  return {{"n", f.n}, {"M", f.M}, {"filters", std::move(filters)}};
}

FilterBank filters_from_json(const json& j, bool complete_1d) {
  const int n = int_field(j, "n");
  const int M = int_field(j, "M");
  FilterBank f(n, M);
  const json& filters = field(j, "filters");
  if (!filters.is_array() || filters.empty()) schema_error("filters must be a non-empty array");
  std::vector<bool> present(f.filter_count(), false);
  const Grid grid = f.grid();
  for (const auto& entry : filters) {
    const int eps = int_field(entry, "epsilon");
    if (eps < 0 || eps >= f.filter_count()) schema_error("epsilon out of range");
    if (present[eps]) schema_error("duplicate epsilon");
    present[eps] = true;
    const json& coeffs = field(entry, "coeffs");
    if (!coeffs.is_array()) schema_error("coeffs must be an array");
    for (const auto& c : coeffs) {
      const auto k = index_array(field(c, "k"), n, M, "coefficient index k");
      const double im = c.contains("im") ? number(c["im"], "im") : 0.0;
      f.g[eps][grid.linear(k)] = {number(field(c, "re"), "re"), im};
    }
  }
  if (!present[0]) schema_error("the scaling filter (epsilon 0) is required");
  const bool only_scaling = std::count(present.begin(), present.end(), true) == 1;
  if (complete_1d && n == 1 && only_scaling) return complete_conjugate_flip(f.g[0]);
  return f;
}

json config_to_json(const SolverConfig& c) {
  return {{"n", c.n},
          {"M", c.M},
          {"d", c.d},
          {"eps_stop", c.eps_stop},
          {"max_iter", c.max_iter},
          {"seed", c.seed},
          {"bownik_min", c.bownik_min},
          {"bownik_grid", c.bownik_grid},
          {"include_zero_moment", c.include_zero_moment}};
}

SolverConfig config_from_json(const json& j) {
  SolverConfig c;
  c.n = int_field(j, "n");
  c.M = int_field(j, "M");
  c.d = int_field(j, "d");
  if (j.contains("eps_stop")) c.eps_stop = number(j["eps_stop"], "eps_stop");
  if (j.contains("max_iter")) c.max_iter = j["max_iter"].get<long long>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("bownik_min")) c.bownik_min = number(j["bownik_min"], "bownik_min");
  if (j.contains("bownik_grid")) c.bownik_grid = j["bownik_grid"].get<int>();
  if (j.contains("include_zero_moment")) c.include_zero_moment = j["include_zero_moment"].get<bool>();
  c.validate();
  return c;
}

json run_result_to_json(const RunResult& r) {
  return {{"config", config_to_json(r.config)},
          {"converged", r.converged},
          {"iterations", r.iterations},
          {"final_step_norm", r.final_step_norm},
          {"seed", r.seed},
          {"residuals",
           {{"unitarity", r.residuals.unitarity},
            {"consistency", r.residuals.consistency},
            {"regularity", r.residuals.regularity},
            {"qmf_grid", r.residuals.qmf_grid}}},
          {"bownik", {{"pass", r.bownik_pass}, {"min_abs", r.bownik_min_abs}}},
          {"separability", optional_number(r.separability)},
          {"filters", filters_to_json(r.filters)},
          {"solution", ensemble_to_json(r.solution)},
          {"metadata", {{"wall_time", r.wall_time}}}};
}

json batch_to_json(const BatchSummary& b) {
  json runs = json::array();
  for (const auto& r : b.runs) runs.push_back(run_result_to_json(r));
  return {{"config", config_to_json(b.config)},
          {"replications", b.replications},
          {"solved", b.solved},
          {"bownik_solved", b.bownik_solved},
          {"iterations",
           {{"mean", optional_number(b.mean_iterations)},
            {"max", b.max_iterations ? json(*b.max_iterations) : json(nullptr)}}},
          {"separability", {{"mean", optional_number(b.mean_separability)}, {"max", optional_number(b.max_separability)}}},
          {"runs", std::move(runs)},
          {"metadata", {{"time", {{"mean", optional_number(b.mean_time)}, {"max", optional_number(b.max_time)}}}}}};
}

json report_to_json(const VerificationReport& r) {
  json reg = json::array();
  for (const auto& [alpha, v] : r.regularity_residuals) reg.push_back({{"alpha", alpha}, {"value", v}});
  return {{"qmf_residual", r.qmf_residual},
          {"cross_qmf_residual", r.cross_qmf_residual},
          {"completeness_residual", r.completeness_residual},
          {"regularity_residuals", std::move(reg)},
          {"bownik_min_abs", r.bownik_min_abs},
          {"bownik_pass", r.bownik_pass},
          {"separability", optional_number(r.separability)},
          {"grid_resolution", r.grid_resolution},
          {"tolerance", r.tolerance},
          {"pass", r.pass()}};
}

json sampled_to_json(const SampledFunction& f) {
  json re = json::array();
  json im = json::array();
  for (const auto& v : f.values) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return {{"n", f.n},
          {"J", f.J},
          {"support", f.support},
          {"points_per_axis", f.points_per_axis()},
          {"iterations", f.iterations},
          {"last_step_change", f.last_step_change},
          {"re", std::move(re)},
          {"im", std::move(im)}};
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading", path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("malformed JSON: ") + e.what(), path.string());
  }
}

void write_json(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing", path.string());
  out << j.dump(2) << '\n';
  out.flush();
  if (!out) throw IoError("write failed", path.string());
}

VerifyInput load_verify_input(const std::filesystem::path& path) {
  const json j = read_json(path);
  return with_path(path, [&] {
    VerifyInput in;
    if (j.is_object() && j.contains("filters") && j["filters"].is_object()) {
      in.filters = filters_from_json(j["filters"]);
      if (j.contains("config")) in.config = config_from_json(j["config"]);
    } else {
      in.filters = filters_from_json(j);
    }
    return in;
  });
}

void write_csv(const SampledFunction& f, const std::filesystem::path& path) {
  auto out = open_out(path);
  if (f.n == 1) {
    out << "x";
  } else {
    for (int r = 0; r < f.n; ++r) out << (r ? ",x" : "x") << r + 1;
  }
  out << ",re,im\n";
  const Grid grid = f.grid();
  std::vector<int> m(f.n);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.coords(i, m);
    for (int r = 0; r < f.n; ++r) out << m[r] * f.spacing() << ',';
    out << f.values[i].real() << ',' << f.values[i].imag() << '\n';
  }
  finish(out, path);
}

void write_csv(const SymbolTable& t, const std::filesystem::path& path) {
  auto out = open_out(path);
  if (t.n == 1) {
    out << "xi";
  } else {
    for (int r = 0; r < t.n; ++r) out << (r ? ",xi" : "xi") << r + 1;
  }
  out << ",re,im\n";
  const Grid grid(t.n, t.points);
  std::vector<int> p(t.n);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.coords(i, p);
    for (int r = 0; r < t.n; ++r) out << t.coordinate(p[r]) << ',';
    out << t.values[i].real() << ',' << t.values[i].imag() << '\n';
  }
  finish(out, path);
}

}  // namespace drw
