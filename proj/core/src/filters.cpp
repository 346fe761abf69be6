#include "drwavelet/filters.hpp"

#include <limits>
#include <numbers>
#include <string>

#include "drwavelet/projections.hpp"

namespace drw {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double x) { return x - std::floor(x); }

}  // namespace

FilterBank::FilterBank(int n_, int M_) : n(n_), M(M_) {
  if (n < 1 || n > kMaxDim) throw ArgumentError("dimension n must be in [1, " + std::to_string(kMaxDim) + "]");
  if (M < 2) throw ArgumentError("filter length M must be >= 2");
  g.assign(std::size_t{1} << n, std::vector<Complex>(Grid(n, M).size()));
}

FilterBank extract_filters(const ConsistentEnsemble& u, double tol) {
  const TrigPolyCoefficients a = idft(expand(u));
  double scale = 1.0;
  for (const auto& z : a.raw()) scale = std::max(scale, std::abs(z));
  std::vector<int> bad;
  const double residual = structure_residual(a, &bad);
  if (residual > tol * scale) {
    throw StructureError("ensemble is not consistent: coefficient rows disagree (residual " +
                             std::to_string(residual) + ")",
                         bad, residual);
  }
  FilterBank f(u.dim(), u.grid_size());
  for (std::size_t k = 0; k < a.count(); ++k) {
    for (int eps = 0; eps < f.filter_count(); ++eps) f.g[eps][k] = a[k](0, eps);
  }
  return f;
}

TrigPolyCoefficients coefficients_from_filters(const FilterBank& f) {
  TrigPolyCoefficients a(f.n, f.M);
  const int N = f.filter_count();
  std::vector<int> k(f.n);
  for (std::size_t i = 0; i < a.count(); ++i) {
    a.grid().coords(i, k);
    auto ak = a[i];
    for (int row = 0; row < N; ++row) {
      const double w = vertex_parity(k, row) ? -1.0 : 1.0;
      for (int eps = 0; eps < N; ++eps) ak(row, eps) = w * f.g[eps][i];
    }
  }
  return a;
}

Complex evaluate_filter(const FilterBank& f, int eps, std::span<const double> xi) {
  if (eps < 0 || eps >= f.filter_count()) throw ArgumentError("filter index out of range");
  if (static_cast<int>(xi.size()) != f.n) throw ArgumentError("ξ has wrong dimension");
  const Grid grid = f.grid();
  std::vector<int> k(f.n);
  Complex s{};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.coords(i, k);
    double phase = 0.0;
    for (int r = 0; r < f.n; ++r) phase += k[r] * xi[r];
    s += f.g[eps][i] * std::polar(1.0, -2.0 * kPi * wrap(phase));
  }
  return s;
}

CMatrix symbol_matrix(const FilterBank& f, std::span<const double> xi) {
  const int N = f.filter_count();
  CMatrix u(N, N);
  std::vector<double> shifted(xi.begin(), xi.end());
  for (int j = 0; j < N; ++j) {
    for (int r = 0; r < f.n; ++r) shifted[r] = xi[r] + 0.5 * ((j >> r) & 1);
    for (int eps = 0; eps < N; ++eps) u(j, eps) = evaluate_filter(f, eps, shifted);
  }
  return u;
}

std::vector<Complex> evaluate_filter_on_grid(const FilterBank& f, int eps,
                                             const std::vector<std::vector<double>>& axis_points) {
  if (eps < 0 || eps >= f.filter_count()) throw ArgumentError("filter index out of range");
  if (static_cast<int>(axis_points.size()) != f.n) throw ArgumentError("grid has wrong dimension");

  // Contract one axis at a time: extent M -> P_r on axis r.
  std::vector<std::size_t> shape(f.n, static_cast<std::size_t>(f.M));
  std::vector<Complex> cur = f.g[eps];
  for (int r = 0; r < f.n; ++r) {
    const auto& pts = axis_points[r];
    const std::size_t P = pts.size();
    const std::size_t M = shape[r];
    std::vector<Complex> kernel(P * M);
    for (std::size_t p = 0; p < P; ++p) {
      for (std::size_t m = 0; m < M; ++m) kernel[p * M + m] = std::polar(1.0, -2.0 * kPi * wrap(m * pts[p]));
    }
    std::size_t low = 1;
    for (int i = 0; i < r; ++i) low *= shape[i];
    std::size_t high = 1;
    for (int i = r + 1; i < f.n; ++i) high *= shape[i];

    std::vector<Complex> next(low * P * high);
    for (std::size_t h = 0; h < high; ++h) {
      for (std::size_t p = 0; p < P; ++p) {
        Complex* dst = next.data() + (h * P + p) * low;
        for (std::size_t m = 0; m < M; ++m) {
          const Complex w = kernel[p * M + m];
          const Complex* src = cur.data() + (h * M + m) * low;
          for (std::size_t l = 0; l < low; ++l) dst[l] += w * src[l];
        }
      }
    }
    cur.swap(next);
    shape[r] = P;
  }
  return cur;
}

FilterBank complete_conjugate_flip(std::span<const Complex> g0) {
  const int M = static_cast<int>(g0.size());
  FilterBank f(1, M);
  for (int k = 0; k < M; ++k) {
    f.g[0][k] = g0[k];
    f.g[1][k] = (k % 2 ? -1.0 : 1.0) * std::conj(g0[M - 1 - k]);
  }
  return f;
}

namespace {

// vals[j][ε][point] = m_ε(ξ_point + v_j/2) over the grid {p / P}^n.
std::vector<std::vector<std::vector<Complex>>> half_shifted_samples(const FilterBank& f, int P) {
  if (P < 1) throw ArgumentError("grid_points must be >= 1");
  const int N = f.filter_count();
  std::vector<std::vector<std::vector<Complex>>> vals(N);
  for (int j = 0; j < N; ++j) {
    std::vector<std::vector<double>> axes(f.n, std::vector<double>(P));
    for (int r = 0; r < f.n; ++r) {
      for (int p = 0; p < P; ++p) axes[r][p] = static_cast<double>(p) / P + 0.5 * ((j >> r) & 1);
    }
    vals[j].resize(N);
    for (int eps = 0; eps < N; ++eps) vals[j][eps] = evaluate_filter_on_grid(f, eps, axes);
  }
  return vals;
}

template <class Fn>
void for_each_symbol(const FilterBank& f, int P, Fn&& fn) {
  const auto vals = half_shifted_samples(f, P);
  const int N = f.filter_count();
  const std::size_t points = vals[0][0].size();
  CMatrix u(N, N);
  for (std::size_t q = 0; q < points; ++q) {
    for (int j = 0; j < N; ++j) {
      for (int eps = 0; eps < N; ++eps) u(j, eps) = vals[j][eps][q];
    }
    fn(u);
  }
}

}  // namespace

double qmf_residual(const FilterBank& f, int grid_points) {
  double worst = 0.0;
  const int N = f.filter_count();
  for_each_symbol(f, grid_points, [&](const CMatrix& u) {
    worst = std::max(worst, (u.adjoint() * u - CMatrix::Identity(N, N)).norm());
  });
  return worst;
}

double cross_qmf_residual(const FilterBank& f, int grid_points) {
  double worst = 0.0;
  const int N = f.filter_count();
  for_each_symbol(f, grid_points, [&](const CMatrix& u) {
    const CMatrix g = u.adjoint() * u;
    for (int a = 0; a < N; ++a) {
      for (int b = 0; b < N; ++b) {
        if (a != b) worst = std::max(worst, std::abs(g(a, b)));
      }
    }
  });
  return worst;
}

double completeness_residual(const FilterBank& f) {
  const std::vector<double> zero(f.n, 0.0);
  const CMatrix u = symbol_matrix(f, zero);
  double s = std::norm(u(0, 0) - 1.0);
  for (int i = 1; i < u.rows(); ++i) s += std::norm(u(0, i)) + std::norm(u(i, 0));
  return std::sqrt(s);
}

BownikResult bownik_check(const FilterBank& f, int grid_points, double threshold) {
  if (grid_points < 2) throw ArgumentError("Bownik grid needs at least 2 points per axis");
  if (!(threshold > 0.0)) throw ArgumentError("Bownik threshold must be positive");
  std::vector<double> axis(grid_points);
  for (int p = 0; p < grid_points; ++p) axis[p] = -0.25 + 0.5 * p / (grid_points - 1);
  const auto vals = evaluate_filter_on_grid(f, 0, std::vector<std::vector<double>>(f.n, axis));
  double m = std::numeric_limits<double>::infinity();
  for (const auto& z : vals) m = std::min(m, std::abs(z));
  return {m > threshold, m};
}

std::map<std::vector<int>, double> regularity_residual(const FilterBank& f, int d) {
  std::map<std::vector<int>, double> out;
  const Grid grid = f.grid();
  std::vector<int> k(f.n);
  for (const auto& alpha : moment_indices(f.n, d, true)) {
    double worst = 0.0;
    for (int eps = 1; eps < f.filter_count(); ++eps) {
      Complex s{};
      for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.coords(i, k);
        s += monomial(k, alpha) * f.g[eps][i];
      }
      worst = std::max(worst, std::abs(s));
    }
    out[alpha] = worst;
  }
  return out;
}

double separability_measure(const FilterBank& f) {
  if (f.n != 2) throw ArgumentError("separability measure is defined for n = 2 only");
  Eigen::MatrixXcd G(f.M, f.M);
  for (int j = 0; j < f.M; ++j) {
    for (int k = 0; k < f.M; ++k) G(j, k) = f.g[0][j + static_cast<std::size_t>(k) * f.M];
  }
  const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(f.M);
  const Eigen::VectorXcd rows = G * ones;
  const Eigen::VectorXcd cols = G.transpose() * ones;
  return (G - rows * cols.transpose()).norm();
}

double VerificationReport::max_regularity() const {
  double m = 0.0;
  for (const auto& [alpha, v] : regularity_residuals) m = std::max(m, v);
  return m;
}

bool VerificationReport::pass() const {
  return qmf_residual < tolerance && cross_qmf_residual < tolerance && completeness_residual < tolerance &&
         max_regularity() < tolerance && bownik_pass;
}

VerificationReport verify(const FilterBank& f, const VerifyOptions& opt) {
  VerificationReport r;
  r.grid_resolution = opt.grid_points > 0 ? opt.grid_points : 4 * f.M;
  r.tolerance = opt.tolerance;
  r.qmf_residual = qmf_residual(f, r.grid_resolution);
  r.cross_qmf_residual = cross_qmf_residual(f, r.grid_resolution);
  r.completeness_residual = completeness_residual(f);
  r.regularity_residuals = regularity_residual(f, opt.d);
  const auto b = bownik_check(f, opt.bownik_grid, opt.bownik_min);
  r.bownik_min_abs = b.min_abs;
  r.bownik_pass = b.pass;
  if (f.n == 2) r.separability = separability_measure(f);
  return r;
}

VerificationReport verify(const ConsistentEnsemble& u, const VerifyOptions& opt) {
  return verify(extract_filters(u), opt);
}

}  // namespace drw
