#pragma once

// Index combinatorics: the sampling grid Q_M^n, the cube vertices V^n and
// the permutation matrices σ_j induced by the (Z_2)^n group law.

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace drw {

/// Multi-index into Q_M^n. Ordering is lexicographic with axis 0 varying
/// fastest, which is also the linear storage order of every ensemble.
struct GridIndex {
  std::vector<int> coords;

  friend bool operator==(const GridIndex&, const GridIndex&) = default;
  friend std::strong_ordering operator<=>(const GridIndex& a, const GridIndex& b);
};

/// The grid {0, ..., extent-1}^n with row-major-by-axis-0 linearisation.
class Grid {
 public:
  Grid(int dim, int extent);

  int dim() const noexcept { return dim_; }
  int extent() const noexcept { return extent_; }
  std::size_t size() const noexcept { return size_; }

  std::size_t linear(std::span<const int> coords) const;
  GridIndex index(std::size_t linear) const;
  void coords(std::size_t linear, std::span<int> out) const;

 private:
  int dim_;
  int extent_;
  std::size_t size_;
};

/// v_j: binary digits of j, least significant first.
struct Vertex {
  int index = 0;
  std::vector<int> bits;
};

Vertex vertex_of(int j, int n);

/// ⟨k, v_ell⟩ mod 2 for a multi-index k.
int vertex_parity(std::span<const int> k, int ell);

/// σ_j with (σ_j)_{kl} = 1 iff v_j ⊕ v_k = v_l. Since ⊕ is XOR on the
/// vertex indices, σ_j maps row k of a matrix to row (j XOR k).
class PermutationMatrix {
 public:
  PermutationMatrix(int j, int n);

  int index() const noexcept { return j_; }
  int dim() const noexcept { return n_; }
  int size() const noexcept { return 1 << n_; }

  const Eigen::MatrixXi& entries() const noexcept { return entries_; }

  /// σ X, computed as a row permutation.
  template <class Derived>
  auto apply(const Eigen::MatrixBase<Derived>& x) const {
    typename Derived::PlainObject out(x.rows(), x.cols());
    for (int k = 0; k < size(); ++k) out.row(k) = x.row(j_ ^ k);
    return out;
  }

  friend PermutationMatrix operator*(const PermutationMatrix& a, const PermutationMatrix& b);
  friend bool operator==(const PermutationMatrix& a, const PermutationMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  PermutationMatrix(int j, int n, Eigen::MatrixXi entries);

  int j_;
  int n_;
  Eigen::MatrixXi entries_;
};

PermutationMatrix permutation_matrix(int j, int n);

}  // namespace drw
