#pragma once

// JSON and CSV persistence. Readers raise IoError with the file path for
// both I/O failures and schema violations.

#include <filesystem>
#include <optional>

#include <nlohmann/json.hpp>

#include "drwavelet/filters.hpp"
#include "drwavelet/render.hpp"
#include "drwavelet/solver.hpp"

namespace drw {

using json = nlohmann::json;

/// {n, M, block: [{index, re, im}]} with row-major re/im matrices.
json ensemble_to_json(const ConsistentEnsemble& c);
ConsistentEnsemble ensemble_from_json(const json& j);

/// {n, M, filters: [{epsilon, coeffs: [{k, re, im}]}]}. Missing filters or
/// coefficients read as zero. A 1D bank given only by ε = 0 is completed
/// with the conjugate-flip wavelet when `complete_1d` is set.
json filters_to_json(const FilterBank& f);
FilterBank filters_from_json(const json& j, bool complete_1d = true);

json config_to_json(const SolverConfig& c);
SolverConfig config_from_json(const json& j);

json run_result_to_json(const RunResult& r);
json batch_to_json(const BatchSummary& b);
json report_to_json(const VerificationReport& r);
json sampled_to_json(const SampledFunction& f);

json read_json(const std::filesystem::path& path);
void write_json(const json& j, const std::filesystem::path& path);

/// What `verify` can read: a bare filter bank or a saved run.
struct VerifyInput {
  FilterBank filters;
  std::optional<SolverConfig> config;
};
VerifyInput load_verify_input(const std::filesystem::path& path);

/// Header (x | x1,x2,...), re, im; one row per grid point in grid order;
/// 17 significant digits.
void write_csv(const SampledFunction& f, const std::filesystem::path& path);
/// Header (xi | xi1,xi2,...), re, im.
void write_csv(const SymbolTable& t, const std::filesystem::path& path);

}  // namespace drw
