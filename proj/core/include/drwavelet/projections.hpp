#pragma once

// Metric projectors onto the constraint sets of the discrete wavelet
// problem, and the diagonal projector of the product-space formulation.

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "drwavelet/ensemble.hpp"

namespace drw {

/// U V^* from an SVD X = U Σ V^*. Rank-deficient input gets whatever the
/// (deterministic) JacobiSVD routine returns for the null directions.
CMatrix nearest_unitary(const CMatrix& x);

/// diag(1, nearest_unitary(X[1:, 1:])).
CMatrix project_one_tensor_unitary(const CMatrix& x);

/// Projection onto C1^(0): unitary everywhere, 1 ⊗ U(2^n - 1) at j = 0.
ConsistentEnsemble project_c1_0(const ConsistentEnsemble& u);

/// Projection onto C1^(ℓ) = S_{-ℓ} ∘ (entrywise nearest unitary) ∘ S_ℓ.
ConsistentEnsemble project_c1_ell(int ell, const ConsistentEnsemble& u);

/// max_j ‖U_j^* U_j - I‖_F.
double unitarity_residual(const MatrixEnsemble& u);

/// Multi-indices α with |α| ≤ d (or 1 ≤ |α| ≤ d), ordered by total degree
/// and then lexicographically with the last axis fastest.
std::vector<std::vector<int>> moment_indices(int n, int d, bool include_zero = true);

/// k^α with 0^0 = 1.
double monomial(std::span<const int> k, std::span<const int> alpha);

/// G_{βα} = Σ_{k ∈ Q_M^n} k^{α+β}, entries accumulated in exact integer
/// arithmetic, with a cached LDL^T factorisation.
class GramMatrix {
 public:
  GramMatrix(int n, int M, int d, bool include_zero = true);

  int dim() const noexcept { return n_; }
  int grid_size() const noexcept { return M_; }
  int order() const noexcept { return d_; }
  bool includes_zero() const noexcept { return include_zero_; }
  const std::vector<std::vector<int>>& indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }

  /// Exact integer entries.
  const Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>& exact() const noexcept { return exact_; }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  /// Reciprocal condition estimate of the diagonally equilibrated matrix.
  double rcond() const noexcept { return rcond_; }

  /// G^{-1} rhs.
  Eigen::MatrixXcd solve(const Eigen::MatrixXcd& rhs) const;

 private:
  int n_;
  int M_;
  int d_;
  bool include_zero_;
  std::vector<std::vector<int>> indices_;
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> exact_;
  Eigen::MatrixXd entries_;
  Eigen::LDLT<Eigen::MatrixXd> ldlt_;  // of diag(s) G diag(s)
  Eigen::VectorXd scale_;
  double rcond_ = 0.0;
};

GramMatrix gram_matrix(int n, int M, int d, bool include_zero = true);

/// Rows of A_k that must satisfy A_k = w_k (a_k, b_k^T); returns the worst
/// violation and writes the offending index.
double structure_residual(const TrigPolyCoefficients& a, std::vector<int>* worst_index = nullptr);

/// Projector onto C2': vanishing moments Σ_k k^α b_k = 0 for the wavelet
/// part b_k of row 0 of the coefficients. Immutable after construction.
class RegularityProjector {
 public:
  RegularityProjector(int n, int M, int d, bool include_zero = true);

  const GramMatrix& gram() const noexcept { return gram_; }

  ConsistentEnsemble project(const ConsistentEnsemble& u) const;

  /// Moment projection on the reduced representation: rows are k in grid
  /// order, columns ε = 1..2^n-1.
  Eigen::MatrixXcd project_moments(const Eigen::MatrixXcd& b) const;

  /// L: one row per α, one column per k, entries k^α.
  const Eigen::MatrixXd& moments() const noexcept { return moments_; }

 private:
  GramMatrix gram_;
  Eigen::MatrixXd moments_;
};

/// Shared, cached projector for (n, M, d, include_zero).
std::shared_ptr<const RegularityProjector> regularity_projector(int n, int M, int d,
                                                                bool include_zero = true);

ConsistentEnsemble project_c2(const ConsistentEnsemble& u, int d, bool include_zero = true);

/// Replace every component by the arithmetic mean.
std::vector<ConsistentEnsemble> project_diagonal(std::span<const ConsistentEnsemble> x);

class ConstraintSet {
 public:
  enum class Kind { C1_0, C1_ell, C2prime };

  static ConstraintSet c1_0(int n, int M);
  static ConstraintSet c1_ell(int n, int M, int ell);
  static ConstraintSet c2prime(int n, int M, int d, bool include_zero = true);

  Kind kind() const noexcept { return kind_; }
  int ell() const noexcept { return ell_; }
  int order() const noexcept { return d_; }

  ConsistentEnsemble project(const ConsistentEnsemble& u) const;
  double distance(const ConsistentEnsemble& u) const { return drw::distance(u, project(u)); }

 private:
  ConstraintSet(Kind kind, int n, int M) : kind_(kind), n_(n), M_(M) {}

  Kind kind_;
  int n_;
  int M_;
  int ell_ = 0;
  int d_ = 0;
  std::shared_ptr<const RegularityProjector> c2_;
};

}  // namespace drw
