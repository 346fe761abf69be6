#include "drwavelet/ensemble.hpp"

#include <numbers>
#include <string>

namespace drw {

namespace {

constexpr double kPi = std::numbers::pi;

// out_j = Σ_m kernel[j*M + m] in_m along one axis, for every line of the
// grid parallel to that axis. Each grid point carries `stride_values`
// consecutive complex numbers (one N x N matrix).
void apply_axis_kernel(std::span<const Complex> in, std::span<Complex> out, const Grid& grid,
                       std::size_t stride_values, int axis, const std::vector<Complex>& kernel) {
  const std::size_t M = grid.extent();
  std::size_t axis_stride = 1;
  for (int i = 0; i < axis; ++i) axis_stride *= M;
  const std::size_t lines = grid.size() / M;

  for (std::size_t line = 0; line < lines; ++line) {
    // Decompose `line` into (low, high) around the transformed axis.
    const std::size_t low = line % axis_stride;
    const std::size_t high = line / axis_stride;
    const std::size_t base = low + high * axis_stride * M;
    for (std::size_t j = 0; j < M; ++j) {
      Complex* dst = out.data() + (base + j * axis_stride) * stride_values;
      std::fill(dst, dst + stride_values, Complex{});
      for (std::size_t m = 0; m < M; ++m) {
        const Complex w = kernel[j * M + m];
        const Complex* src = in.data() + (base + m * axis_stride) * stride_values;
        for (std::size_t v = 0; v < stride_values; ++v) dst[v] += w * src[v];
      }
    }
  }
}

// Kernel e^{sign·2πi jm/M} (times `scale`).
std::vector<Complex> fourier_kernel(int M, int sign, double scale) {
  std::vector<Complex> k(static_cast<std::size_t>(M) * M);
  for (int j = 0; j < M; ++j) {
    for (int m = 0; m < M; ++m) {
      const int r = (j * m) % M;
      k[j * M + m] = scale * std::polar(1.0, sign * 2.0 * kPi * r / M);
    }
  }
  return k;
}

template <class Out, class In>
Out separable_transform(const In& in, const std::vector<Complex>& kernel, unsigned axes_mask) {
  Out out(in.dim(), in.grid_size());
  const std::size_t per = static_cast<std::size_t>(in.matrix_size()) * in.matrix_size();
  std::vector<Complex> a(in.raw().begin(), in.raw().end());
  std::vector<Complex> b(a.size());
  for (int axis = 0; axis < in.dim(); ++axis) {
    if (!((axes_mask >> axis) & 1u)) continue;
    apply_axis_kernel(a, b, in.grid(), per, axis, kernel);
    a.swap(b);
  }
  std::copy(a.begin(), a.end(), out.raw().begin());
  return out;
}

void check_ell(int ell, int n) {
  if (ell < 0 || ell >= (1 << n)) {
    throw ArgumentError("shift index " + std::to_string(ell) + " outside [0, 2^n - 1]");
  }
}

void check_sign(int sign) {
  if (sign != 1 && sign != -1) throw ArgumentError("sign must be +1 or -1");
}

}  // namespace

void validate_shape(int n, int M) {
  if (n < 1 || n > kMaxDim) {
    throw ArgumentError("dimension n must be in [1, " + std::to_string(kMaxDim) + "]");
  }
  if (M < 4 || M % 2 != 0) throw ArgumentError("M must be even ≥ 4");
}

MatrixEnsemble dft(const TrigPolyCoefficients& a) {
  const auto kernel = fourier_kernel(a.grid_size(), -1, 1.0);
  return separable_transform<MatrixEnsemble>(a, kernel, ~0u);
}

TrigPolyCoefficients idft(const MatrixEnsemble& u) {
  const auto kernel = fourier_kernel(u.grid_size(), +1, 1.0 / u.grid_size());
  return separable_transform<TrigPolyCoefficients>(u, kernel, ~0u);
}

TrigPolyCoefficients chi(int ell, const TrigPolyCoefficients& a, int sign) {
  check_ell(ell, a.dim());
  check_sign(sign);
  TrigPolyCoefficients out = a;
  const int M = a.grid_size();
  std::vector<int> k(a.dim());
  for (std::size_t i = 0; i < a.count(); ++i) {
    a.grid().coords(i, k);
    int dot = 0;
    for (int r = 0; r < a.dim(); ++r) {
      if ((ell >> r) & 1) dot += k[r];
    }
    out[i] *= std::polar(1.0, -sign * kPi * dot / M);
  }
  return out;
}

MatrixEnsemble shift_half(int ell, const MatrixEnsemble& u, int sign) {
  check_ell(ell, u.dim());
  check_sign(sign);
  return dft(chi(ell, idft(u), sign));
}

MatrixEnsemble t_shift_direct(int r, const MatrixEnsemble& v) {
  if (r < 0 || r >= v.dim()) throw ArgumentError("axis index r outside [0, n - 1]");
  const int M = v.grid_size();
  std::vector<Complex> kernel(static_cast<std::size_t>(M) * M);
  for (int j = 0; j < M; ++j) {
    for (int m = 0; m < M; ++m) {
      const Complex denom = 1.0 - std::polar(1.0, -2.0 * kPi * (j - m + 0.5) / M);
      kernel[j * M + m] = (2.0 / M) / denom;
    }
  }
  return separable_transform<MatrixEnsemble>(v, kernel, 1u << r);
}

MatrixEnsemble translate(const MatrixEnsemble& v, std::span<const int> k) {
  if (static_cast<int>(k.size()) != v.dim()) throw ArgumentError("translation has wrong dimension");
  MatrixEnsemble out(v.dim(), v.grid_size());
  const int M = v.grid_size();
  std::vector<int> j(v.dim());
  for (std::size_t i = 0; i < v.count(); ++i) {
    v.grid().coords(i, j);
    for (int a = 0; a < v.dim(); ++a) j[a] = ((j[a] + k[a]) % M + M) % M;
    out[i] = v[v.grid().linear(j)];
  }
  return out;
}

MatrixEnsemble expand(const ConsistentEnsemble& c) {
  MatrixEnsemble out(c.dim(), c.grid_size());
  const int half = c.grid_size() / 2;
  std::vector<int> j(c.dim());
  std::vector<int> b(c.dim());
  for (std::size_t i = 0; i < out.count(); ++i) {
    out.grid().coords(i, j);
    int vertex = 0;
    for (int a = 0; a < c.dim(); ++a) {
      b[a] = j[a] % half;
      vertex |= (j[a] / half) << a;
    }
    const auto block = c[c.grid().linear(b)];
    const int N = c.matrix_size();
    auto dst = out[i];
    for (int row = 0; row < N; ++row) dst.row(row) = block.row(vertex ^ row);
  }
  return out;
}

double consistency_residual(const MatrixEnsemble& u) {
  const int M = u.grid_size();
  const int N = u.matrix_size();
  double worst = 0.0;
  std::vector<int> j(u.dim());
  for (std::size_t i = 0; i < u.count(); ++i) {
    u.grid().coords(i, j);
    const auto here = u[i];
    for (int axis = 0; axis < u.dim(); ++axis) {
      std::vector<int> shifted = j;
      shifted[axis] = (shifted[axis] + M / 2) % M;
      const auto there = u[u.grid().linear(shifted)];
      double s = 0.0;
      for (int row = 0; row < N; ++row) s += (there.row(row) - here.row((1 << axis) ^ row)).squaredNorm();
      worst = std::max(worst, std::sqrt(s));
    }
  }
  return worst;
}

ConsistentEnsemble restrict(const MatrixEnsemble& u, double tol) {
  const double residual = consistency_residual(u);
  if (!(residual <= tol)) {
    throw ConsistencyError("ensemble violates the consistency relations (residual " +
                               std::to_string(residual) + ")",
                           residual);
  }
  return take_block(u);
}

ConsistentEnsemble take_block(const MatrixEnsemble& u) {
  ConsistentEnsemble c(u.dim(), u.grid_size());
  std::vector<int> b(u.dim());
  for (std::size_t i = 0; i < c.count(); ++i) {
    c.grid().coords(i, b);
    c[i] = u[u.grid().linear(b)];
  }
  return c;
}

CMatrix evaluate_symbol(const TrigPolyCoefficients& a, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) != a.dim()) throw ArgumentError("ξ has wrong dimension");
  const int N = a.matrix_size();
  CMatrix out = CMatrix::Zero(N, N);
  std::vector<int> k(a.dim());
  for (std::size_t i = 0; i < a.count(); ++i) {
    a.grid().coords(i, k);
    double phase = 0.0;
    for (int r = 0; r < a.dim(); ++r) phase += k[r] * xi[r];
    // Reduce before scaling by 2π so large ξ keeps full precision.
    phase -= std::floor(phase);
    out += std::polar(1.0, -2.0 * kPi * phase) * a[i];
  }
  return out;
}

}  // namespace drw
