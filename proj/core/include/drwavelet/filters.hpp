#pragma once

// Filter banks {g_k^ε}, their symbols m_ε, and the checks run on them:
// QMF / cross-QMF, completeness, vanishing moments, Bownik's condition
// and the 2D separability measure.

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "drwavelet/ensemble.hpp"

namespace drw {

/// g[ε][k] for ε in 0..2^n-1 and k in Q_M^n (grid order, axis 0 fastest).
struct FilterBank {
  int n = 1;
  int M = 2;
  std::vector<std::vector<Complex>> g;

  FilterBank() = default;
  FilterBank(int n, int M);

  int filter_count() const noexcept { return 1 << n; }
  Grid grid() const { return Grid(n, M); }
  std::size_t size() const noexcept { return g.empty() ? 0 : g[0].size(); }

  Complex& at(int eps, std::span<const int> k) { return g.at(eps).at(grid().linear(k)); }
  Complex at(int eps, std::span<const int> k) const { return g.at(eps).at(grid().linear(k)); }

  friend bool operator==(const FilterBank&, const FilterBank&) = default;
};

/// g_k^ε = (A_k)_{0,ε} with A = idft(expand(U)). Throws StructureError when
/// the coefficients are not of the form A_k = w_k (a_k, b_k^T).
FilterBank extract_filters(const ConsistentEnsemble& u, double tol = 1e-8);

/// A_k = w_k (g_k^0, ..., g_k^{2^n-1}); requires M even ≥ 4.
TrigPolyCoefficients coefficients_from_filters(const FilterBank& f);

/// m_ε(ξ) = Σ_k g_k^ε e^{-2πi⟨k,ξ⟩}.
Complex evaluate_filter(const FilterBank& f, int eps, std::span<const double> xi);

/// U(ξ)_{j,ε} = m_ε(ξ + v_j/2).
CMatrix symbol_matrix(const FilterBank& f, std::span<const double> xi);

/// m_ε on the tensor grid axis_points^n (axis 0 fastest).
std::vector<Complex> evaluate_filter_on_grid(const FilterBank& f, int eps,
                                             const std::vector<std::vector<double>>& axis_points);

/// One-dimensional completion g_k^1 = (-1)^k conj(g^0_{M-1-k}).
FilterBank complete_conjugate_flip(std::span<const Complex> g0);

/// max over the grid {p / grid_points}^n of ‖U(ξ)^* U(ξ) - I‖_F.
double qmf_residual(const FilterBank& f, int grid_points);

/// max over the same grid of |(U^* U)_{εη}| for ε ≠ η.
double cross_qmf_residual(const FilterBank& f, int grid_points);

/// Distance of U(0) from 1 ⊗ U(2^n - 1) in its first row and column:
/// m_0(v_j/2) = δ_{j0} and m_ε(0) = 0.
double completeness_residual(const FilterBank& f);

struct BownikResult {
  bool pass = false;
  double min_abs = 0.0;
};

/// |m_0| sampled on [-1/4, 1/4]^n with grid_points per axis, endpoints
/// included; passes iff the minimum exceeds `threshold`.
BownikResult bownik_check(const FilterBank& f, int grid_points = 257, double threshold = 1e-6);

/// α ↦ max_{ε ≥ 1} |Σ_k k^α g_k^ε| for all |α| ≤ d.
std::map<std::vector<int>, double> regularity_residual(const FilterBank& f, int d);

/// ‖G - (G 1)(G^T 1)^T‖_F where G_{jk} = g^0_{(j,k)}; n = 2 only.
double separability_measure(const FilterBank& f);

struct VerifyOptions {
  int d = 1;
  int grid_points = 0;  // 0: 4M per axis
  int bownik_grid = 257;
  double bownik_min = 1e-6;
  double tolerance = 1e-4;
};

struct VerificationReport {
  double qmf_residual = 0.0;
  double cross_qmf_residual = 0.0;
  double completeness_residual = 0.0;
  std::map<std::vector<int>, double> regularity_residuals;
  double bownik_min_abs = 0.0;
  bool bownik_pass = false;
  std::optional<double> separability;
  int grid_resolution = 0;
  double tolerance = 0.0;

  double max_regularity() const;
  /// All residuals below tolerance and Bownik passes.
  bool pass() const;
};

VerificationReport verify(const FilterBank& f, const VerifyOptions& opt = {});
VerificationReport verify(const ConsistentEnsemble& u, const VerifyOptions& opt = {});

}  // namespace drw
