#pragma once

// Cascade rendering of φ and ψ^ε on dyadic grids, and symbol sampling.

#include <span>
#include <vector>

#include "drwavelet/filters.hpp"

namespace drw {

/// Samples at x = m 2^{-J}, m in {0, ..., (M-1) 2^J}^n (axis 0 fastest).
/// The value at m stands for the cell [m, m+1) 2^{-J}, so the last point
/// on each axis is always 0.
struct SampledFunction {
  int n = 1;
  int J = 1;
  int support = 1;  // M - 1
  std::vector<Complex> values;
  int iterations = 0;
  double last_step_change = 0.0;  // L2 norm of the final refinement step

  std::size_t points_per_axis() const noexcept { return (static_cast<std::size_t>(support) << J) + 1; }
  double spacing() const noexcept { return std::ldexp(1.0, -J); }
  Grid grid() const { return Grid(n, static_cast<int>(points_per_axis())); }

  /// Σ_x f(x) 2^{-Jn}.
  Complex integral() const;
  double l2_norm() const;
};

/// φ^{i+1}(x) = 2^n Σ_k g_k^0 φ^i(2x - k), starting from the indicator of
/// [0,1)^n. Each sample of φ^i(2x - k) is the mean over the 2^n fine cells
/// it covers, which keeps Σ φ exactly when Σ g^0 = 1.
SampledFunction cascade(const FilterBank& f, int J, int iters);

/// ψ^ε(x) = 2^n Σ_k g_k^ε φ(2x - k) with the same cell averaging.
SampledFunction wavelet_from_scaling(const FilterBank& f, int eps, const SampledFunction& phi);

/// Σ_x a(x) conj(b(x - k)) 2^{-Jn} for an integer shift k.
Complex shift_inner_product(const SampledFunction& a, const SampledFunction& b, std::span<const int> k);

/// m_ε on the uniform grid {p / (points - 1)}^n covering [0, 1]^n.
struct SymbolTable {
  int n = 1;
  int points = 0;
  std::vector<Complex> values;  // axis 0 fastest

  double coordinate(int p) const { return static_cast<double>(p) / (points - 1); }
};

SymbolTable sample_symbol(const FilterBank& f, int eps, int grid_points);

}  // namespace drw
