#include "drwavelet/projections.hpp"

#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include <Eigen/SVD>

namespace drw {

namespace {

template <int N>
void nearest_unitary_fixed(CMatrixMap x) {
  using Mat = Eigen::Matrix<Complex, N, N>;
  const Mat m = x;
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  x = svd.matrixU() * svd.matrixV().adjoint();
}

// In-place nearest unitary; fixed-size paths for the 2x2 and 4x4 cases the
// solver runs in its inner loop.
void nearest_unitary_inplace(CMatrixMap x) {
  switch (x.rows()) {
    case 1:
      x(0, 0) = std::abs(x(0, 0)) > 0.0 ? x(0, 0) / std::abs(x(0, 0)) : Complex{1.0};
      return;
    case 2:
      nearest_unitary_fixed<2>(x);
      return;
    case 4:
      nearest_unitary_fixed<4>(x);
      return;
    default:
      x = nearest_unitary(CMatrix(x));
  }
}

bool checked_pow_sum(long long& acc, long long base, int exp) {
  long long p = 1;
  for (int e = 0; e < exp; ++e) {
    if (__builtin_mul_overflow(p, base, &p)) return false;
  }
  return !__builtin_add_overflow(acc, p, &acc);
}

}  // namespace

CMatrix nearest_unitary(const CMatrix& x) {
  if (x.rows() != x.cols()) throw ArgumentError("nearest_unitary needs a square matrix");
  if (x.rows() == 0) return x;
  Eigen::JacobiSVD<CMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix project_one_tensor_unitary(const CMatrix& x) {
  if (x.rows() != x.cols() || x.rows() < 1) throw ArgumentError("expected a non-empty square matrix");
  const auto m = x.rows();
  CMatrix out = CMatrix::Zero(m, m);
  out(0, 0) = 1.0;
  if (m > 1) out.bottomRightCorner(m - 1, m - 1) = nearest_unitary(x.bottomRightCorner(m - 1, m - 1));
  return out;
}

ConsistentEnsemble project_c1_0(const ConsistentEnsemble& u) {
  ConsistentEnsemble out = u;
  out[0] = project_one_tensor_unitary(CMatrix(u[0]));
  for (std::size_t i = 1; i < out.count(); ++i) nearest_unitary_inplace(out[i]);
  return out;
}

ConsistentEnsemble project_c1_ell(int ell, const ConsistentEnsemble& u) {
  if (ell < 1 || ell >= u.matrix_size()) {
    throw ArgumentError("C1 shift index " + std::to_string(ell) + " outside [1, 2^n - 1]");
  }
  ConsistentEnsemble shifted = take_block(shift_half(ell, expand(u), +1));
  for (std::size_t i = 0; i < shifted.count(); ++i) nearest_unitary_inplace(shifted[i]);
  return take_block(shift_half(ell, expand(shifted), -1));
}

double unitarity_residual(const MatrixEnsemble& u) {
  const int N = u.matrix_size();
  double worst = 0.0;
  for (std::size_t i = 0; i < u.count(); ++i) {
    const CMatrix g = u[i].adjoint() * u[i];
    worst = std::max(worst, (g - CMatrix::Identity(N, N)).norm());
  }
  return worst;
}

std::vector<std::vector<int>> moment_indices(int n, int d, bool include_zero) {
  if (n < 1) throw ArgumentError("dimension must be >= 1");
  if (d < 0) throw ArgumentError("regularity order d must be >= 0");
  std::vector<std::vector<int>> out;
  for (int degree = include_zero ? 0 : 1; degree <= d; ++degree) {
    // All compositions of `degree` into n parts, last axis fastest.
    std::vector<int> alpha(n, 0);
    alpha[0] = degree;
    while (true) {
      out.push_back(alpha);
      // Next composition in lexicographic order (descending in alpha[0]).
      int i = n - 2;
      while (i >= 0 && alpha[i] == 0) --i;
      if (i < 0) break;
      --alpha[i];
      int rest = 0;
      for (int r = i + 1; r < n; ++r) rest += alpha[r];
      std::fill(alpha.begin() + i + 1, alpha.end(), 0);
      alpha[i + 1] = rest + 1;
    }
  }
  return out;
}

double monomial(std::span<const int> k, std::span<const int> alpha) {
  double p = 1.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (int e = 0; e < alpha[i]; ++e) p *= k[i];
  }
  return p;
}

GramMatrix::GramMatrix(int n, int M, int d, bool include_zero)
    : n_(n), M_(M), d_(d), include_zero_(include_zero) {
  validate_shape(n, M);
  indices_ = moment_indices(n, d, include_zero);
  const auto m = static_cast<Eigen::Index>(indices_.size());
  exact_.resize(m, m);
  entries_.resize(m, m);
  if (m == 0) {
    rcond_ = 1.0;
    return;
  }

  const Grid grid(n, M);
  std::vector<int> k(n);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b <= a; ++b) {
      long long acc = 0;
      for (std::size_t lin = 0; lin < grid.size(); ++lin) {
        grid.coords(lin, k);
        long long term = 1;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
          long long f = 0;
          ok = checked_pow_sum(f, k[i], indices_[a][i] + indices_[b][i]) &&
               !__builtin_mul_overflow(term, f, &term);
        }
        if (!ok || __builtin_add_overflow(acc, term, &acc)) {
          throw IllConditionedError("Gram entry overflows 64-bit integers", 0.0);
        }
      }
      exact_(a, b) = exact_(b, a) = acc;
    }
  }
  entries_ = exact_.cast<double>();

  // Factor the Jacobi-equilibrated matrix; the moment rows can differ in
  // scale by many orders of magnitude.
  const Eigen::VectorXd scale = entries_.diagonal().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd equilibrated = scale.asDiagonal() * entries_ * scale.asDiagonal();
  ldlt_.compute(equilibrated);
  rcond_ = ldlt_.info() == Eigen::Success ? ldlt_.rcond() : 0.0;
  if (ldlt_.info() != Eigen::Success || !ldlt_.isPositive() ||
      rcond_ < 10.0 * std::numeric_limits<double>::epsilon()) {
    throw IllConditionedError("Gram matrix factorisation failed (rcond " + std::to_string(rcond_) + ")",
                              rcond_);
  }
  scale_ = scale;
}

Eigen::MatrixXcd GramMatrix::solve(const Eigen::MatrixXcd& rhs) const {
  if (indices_.empty()) return Eigen::MatrixXcd::Zero(0, rhs.cols());
  const Eigen::MatrixXcd scaled = scale_.asDiagonal() * rhs;
  const Eigen::MatrixXd re = ldlt_.solve(Eigen::MatrixXd(scaled.real()));
  const Eigen::MatrixXd im = ldlt_.solve(Eigen::MatrixXd(scaled.imag()));
  Eigen::MatrixXcd y(re.rows(), re.cols());
  y.real() = re;
  y.imag() = im;
  return scale_.asDiagonal() * y;
}

GramMatrix gram_matrix(int n, int M, int d, bool include_zero) { return GramMatrix(n, M, d, include_zero); }

double structure_residual(const TrigPolyCoefficients& a, std::vector<int>* worst_index) {
  const int N = a.matrix_size();
  std::vector<int> k(a.dim());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.count(); ++i) {
    a.grid().coords(i, k);
    const auto ak = a[i];
    double s = 0.0;
    for (int row = 1; row < N; ++row) {
      const double w = vertex_parity(k, row) ? -1.0 : 1.0;
      s += (ak.row(row) - w * ak.row(0)).squaredNorm();
    }
    s = std::sqrt(s);
    if (s > worst) {
      worst = s;
      if (worst_index) *worst_index = k;
    }
  }
  return worst;
}

RegularityProjector::RegularityProjector(int n, int M, int d, bool include_zero)
    : gram_(n, M, d, include_zero) {
  const Grid grid(n, M);
  const auto& idx = gram_.indices();
  moments_.resize(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(grid.size()));
  std::vector<int> k(n);
  for (std::size_t lin = 0; lin < grid.size(); ++lin) {
    grid.coords(lin, k);
    for (std::size_t a = 0; a < idx.size(); ++a) moments_(a, lin) = monomial(k, idx[a]);
  }
}

Eigen::MatrixXcd RegularityProjector::project_moments(const Eigen::MatrixXcd& b) const {
  if (b.rows() != moments_.cols()) throw ArgumentError("moment projection: wrong number of coefficients");
  if (moments_.rows() == 0) return b;
  Eigen::MatrixXcd out = b;
  // One correction plus one refinement pass against the residual moments.
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::MatrixXcd lb = moments_.cast<Complex>() * out;
    out.noalias() -= moments_.transpose().cast<Complex>() * gram_.solve(lb);
  }
  return out;
}

ConsistentEnsemble RegularityProjector::project(const ConsistentEnsemble& u) const {
  if (u.dim() != gram_.dim() || u.grid_size() != gram_.grid_size()) {
    throw ArgumentError("ensemble shape does not match the regularity projector");
  }
  TrigPolyCoefficients a = idft(expand(u));

  double scale = 1.0;
  for (const auto& z : a.raw()) scale = std::max(scale, std::abs(z));
  std::vector<int> bad;
  const double residual = structure_residual(a, &bad);
  if (residual > 1e-9 * scale) {
    throw StructureError("coefficients lack the w_k row structure (residual " + std::to_string(residual) + ")",
                         bad, residual);
  }

  const int N = u.matrix_size();
  const auto K = static_cast<Eigen::Index>(a.count());
  Eigen::MatrixXcd b(K, N - 1);
  for (Eigen::Index i = 0; i < K; ++i) b.row(i) = a[i].row(0).tail(N - 1);
  b = project_moments(b);

  std::vector<int> k(u.dim());
  for (Eigen::Index i = 0; i < K; ++i) {
    a.grid().coords(i, k);
    auto ak = a[i];
    ak.row(0).tail(N - 1) = b.row(i);
    for (int row = 1; row < N; ++row) ak.row(row) = (vertex_parity(k, row) ? -1.0 : 1.0) * ak.row(0);
  }
  return take_block(dft(a));
}

std::shared_ptr<const RegularityProjector> regularity_projector(int n, int M, int d, bool include_zero) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int, bool>, std::shared_ptr<const RegularityProjector>> cache;
  const auto key = std::make_tuple(n, M, d, include_zero);
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_shared<const RegularityProjector>(n, M, d, include_zero)).first;
  }
  return it->second;
}

ConsistentEnsemble project_c2(const ConsistentEnsemble& u, int d, bool include_zero) {
  return regularity_projector(u.dim(), u.grid_size(), d, include_zero)->project(u);
}

std::vector<ConsistentEnsemble> project_diagonal(std::span<const ConsistentEnsemble> x) {
  if (x.empty()) throw ArgumentError("diagonal projection of an empty tuple");
  ConsistentEnsemble mean = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) mean += x[i];
  mean *= 1.0 / static_cast<double>(x.size());
  return std::vector<ConsistentEnsemble>(x.size(), mean);
}

ConstraintSet ConstraintSet::c1_0(int n, int M) {
  validate_shape(n, M);
  return ConstraintSet(Kind::C1_0, n, M);
}

ConstraintSet ConstraintSet::c1_ell(int n, int M, int ell) {
  validate_shape(n, M);
  if (ell < 1 || ell >= (1 << n)) throw ArgumentError("C1 shift index outside [1, 2^n - 1]");
  ConstraintSet c(Kind::C1_ell, n, M);
  c.ell_ = ell;
  return c;
}

ConstraintSet ConstraintSet::c2prime(int n, int M, int d, bool include_zero) {
  ConstraintSet c(Kind::C2prime, n, M);
  c.d_ = d;
  c.c2_ = regularity_projector(n, M, d, include_zero);
  return c;
}

ConsistentEnsemble ConstraintSet::project(const ConsistentEnsemble& u) const {
  if (u.dim() != n_ || u.grid_size() != M_) throw ArgumentError("ensemble shape does not match constraint set");
  switch (kind_) {
    case Kind::C1_0:
      return project_c1_0(u);
    case Kind::C1_ell:
      return project_c1_ell(ell_, u);
    case Kind::C2prime:
      return c2_->project(u);
  }
  return u;
}

}  // namespace drw
