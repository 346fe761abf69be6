#pragma once

// Matrix ensembles: maps from a sampling grid to complex 2^n x 2^n matrices,
// the finite Fourier pair between samples and trigonometric-polynomial
// coefficients, and the half-shift operators χ_ℓ, S_ℓ and T_{2^r}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "drwavelet/errors.hpp"
#include "drwavelet/grid.hpp"

namespace drw {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CMatrixMap = Eigen::Map<CMatrix>;
using ConstCMatrixMap = Eigen::Map<const CMatrix>;

/// Largest dimension handled by the library.
inline constexpr int kMaxDim = 3;

void validate_shape(int n, int M);

namespace detail {

struct SampleTag {
  static constexpr bool kHalfGrid = false;
};
struct CoefficientTag {
  static constexpr bool kHalfGrid = false;
};
struct BlockTag {
  static constexpr bool kHalfGrid = true;
};

}  // namespace detail

/// Dense storage for an ensemble of 2^n x 2^n complex matrices indexed by a
/// grid. The tag distinguishes samples U_j, coefficients A_k and the
/// independent Q_{M/2}^n block of a consistent ensemble so the three cannot
/// be mixed up at call sites. Entries are column-major matrices laid out
/// contiguously in grid order.
template <class Tag>
class Ensemble {
 public:
  Ensemble() = default;

  Ensemble(int n, int M)
      : n_(n), M_(M), grid_(make_grid(n, M)), data_(grid_.size() * (std::size_t{1} << (2 * n))) {}

  int dim() const noexcept { return n_; }
  int grid_size() const noexcept { return M_; }
  int matrix_size() const noexcept { return 1 << n_; }
  const Grid& grid() const noexcept { return grid_; }
  std::size_t count() const noexcept { return grid_.size(); }

  CMatrixMap operator[](std::size_t i) {
    const int N = matrix_size();
    return {data_.data() + i * N * N, N, N};
  }
  ConstCMatrixMap operator[](std::size_t i) const {
    const int N = matrix_size();
    return {data_.data() + i * N * N, N, N};
  }
  CMatrixMap at(const GridIndex& g) { return (*this)[grid_.linear(g.coords)]; }
  ConstCMatrixMap at(const GridIndex& g) const { return (*this)[grid_.linear(g.coords)]; }

  std::span<Complex> raw() noexcept { return data_; }
  std::span<const Complex> raw() const noexcept { return data_; }

  bool same_shape(const Ensemble& o) const noexcept { return n_ == o.n_ && M_ == o.M_; }

  Ensemble& operator+=(const Ensemble& o) {
    check_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Ensemble& operator-=(const Ensemble& o) {
    check_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Ensemble& operator*=(double s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend Ensemble operator+(Ensemble a, const Ensemble& b) { return a += b; }
  friend Ensemble operator-(Ensemble a, const Ensemble& b) { return a -= b; }
  friend Ensemble operator*(double s, Ensemble a) { return a *= s; }
  friend bool operator==(const Ensemble& a, const Ensemble& b) {
    return a.n_ == b.n_ && a.M_ == b.M_ && a.data_ == b.data_;
  }

 private:
  static Grid make_grid(int n, int M) {
    validate_shape(n, M);
    return Grid(n, Tag::kHalfGrid ? M / 2 : M);
  }

  void check_shape(const Ensemble& o) const {
    if (!same_shape(o)) throw ArgumentError("ensemble shape mismatch");
  }

  int n_ = 1;
  int M_ = 4;
  Grid grid_{1, 4};
  std::vector<Complex> data_;
};

/// Samples U_j = U(j/M), j in Q_M^n.
using MatrixEnsemble = Ensemble<detail::SampleTag>;
/// Coefficients A_k of U(ξ) = Σ_k A_k e^{-2πi⟨k,ξ⟩}, k in Q_M^n.
using TrigPolyCoefficients = Ensemble<detail::CoefficientTag>;
/// A σ-consistent sample ensemble stored by its Q_{M/2}^n block; the rest
/// of Q_M^n is implied by U_{j + M v_{2^ℓ}/2} = σ_{2^ℓ} U_j.
using ConsistentEnsemble = Ensemble<detail::BlockTag>;

/// Real inner product Σ_j ⟨Re U_j, Re V_j⟩_F + ⟨Im U_j, Im V_j⟩_F.
template <class Tag>
double inner(const Ensemble<Tag>& a, const Ensemble<Tag>& b) {
  if (!a.same_shape(b)) throw ArgumentError("ensemble shape mismatch");
  double s = 0.0;
  auto x = a.raw();
  auto y = b.raw();
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
  // A consistent block stands for 2^n permuted copies of itself.
  if constexpr (Tag::kHalfGrid) s *= a.matrix_size();
  return s;
}

template <class Tag>
double squared_norm(const Ensemble<Tag>& a) {
  double s = 0.0;
  for (const auto& z : a.raw()) s += std::norm(z);
  if constexpr (Tag::kHalfGrid) s *= a.matrix_size();
  return s;
}

/// Norm in the ensemble Hilbert space. For a ConsistentEnsemble this is the
/// norm of the full expanded ensemble on Q_M^n.
template <class Tag>
double norm(const Ensemble<Tag>& a) {
  return std::sqrt(squared_norm(a));
}

template <class Tag>
double distance(const Ensemble<Tag>& a, const Ensemble<Tag>& b) {
  return norm(a - b);
}

/// Largest entrywise modulus difference.
template <class Tag>
double max_abs_diff(const Ensemble<Tag>& a, const Ensemble<Tag>& b) {
  if (!a.same_shape(b)) throw ArgumentError("ensemble shape mismatch");
  double m = 0.0;
  auto x = a.raw();
  auto y = b.raw();
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

/// U_j = Σ_k A_k e^{-2πi⟨k,j⟩/M}.
MatrixEnsemble dft(const TrigPolyCoefficients& a);

/// A_k = M^{-n} Σ_j U_j e^{2πi⟨j,k⟩/M}.
TrigPolyCoefficients idft(const MatrixEnsemble& u);

/// (χ_ℓ A)_k = e^{-sign·πi⟨k,v_ℓ⟩/M} A_k; sign = -1 gives the inverse.
TrigPolyCoefficients chi(int ell, const TrigPolyCoefficients& a, int sign = +1);

/// S_ℓ U = F_M χ_ℓ F_M^{-1} U (sign = +1) or S_{-ℓ} U (sign = -1). Entry j is
/// the underlying trigonometric polynomial evaluated at (j + v_ℓ/2)/M.
MatrixEnsemble shift_half(int ell, const MatrixEnsemble& u, int sign = +1);

/// The one-axis convolution T_{2^r}, evaluated as the explicit sum
/// (T V)_j = (2/M) Σ_{m_r} V_{..m_r..} / (1 - e^{-2πi(j_r - m_r + 1/2)/M}),
/// which equals shift_half(2^r, V).
MatrixEnsemble t_shift_direct(int r, const MatrixEnsemble& v);

/// Periodic translation (τ_k V)_j = V_{j+k}.
MatrixEnsemble translate(const MatrixEnsemble& v, std::span<const int> k);

/// Fill Q_M^n from the consistent block.
MatrixEnsemble expand(const ConsistentEnsemble& c);

/// max over j in Q_M^n (indices wrap mod M) and axes ℓ of
/// ‖U_{j+Mv_{2^ℓ}/2} - σ_{2^ℓ} U_j‖_F.
double consistency_residual(const MatrixEnsemble& u);

/// Keep the Q_{M/2}^n block. Throws ConsistencyError when the consistency
/// residual exceeds `tol`.
ConsistentEnsemble restrict(const MatrixEnsemble& u, double tol = 1e-9);

/// The Q_{M/2}^n block of `u` without any consistency check. For callers
/// that already know `u` is consistent up to rounding.
ConsistentEnsemble take_block(const MatrixEnsemble& u);

/// U(ξ) = Σ_k A_k e^{-2πi⟨k,ξ⟩}.
CMatrix evaluate_symbol(const TrigPolyCoefficients& a, std::span<const double> xi);

}  // namespace drw
