#include "drwavelet/render.hpp"

#include <string>

namespace drw {

namespace {

void check_same_grid(const SampledFunction& a, const SampledFunction& b) {
  if (a.n != b.n || a.J != b.J || a.support != b.support) throw ArgumentError("sampled functions differ in grid");
}

// c(q) = mean over e in {0,1}^n of φ(2q + e), zero outside the grid.
std::vector<Complex> coarse_average(const SampledFunction& phi, std::size_t Q) {
  const std::size_t P = phi.points_per_axis();
  std::vector<std::size_t> shape(phi.n, P);
  std::vector<Complex> cur = phi.values;
  for (int r = 0; r < phi.n; ++r) {
    std::size_t low = 1;
    for (int i = 0; i < r; ++i) low *= shape[i];
    std::size_t high = 1;
    for (int i = r + 1; i < phi.n; ++i) high *= shape[i];
    const std::size_t from = shape[r];
    std::vector<Complex> next(low * Q * high);
    for (std::size_t h = 0; h < high; ++h) {
      for (std::size_t q = 0; q < Q; ++q) {
        Complex* dst = next.data() + (h * Q + q) * low;
        for (std::size_t e = 0; e < 2; ++e) {
          const std::size_t m = 2 * q + e;
          if (m >= from) continue;
          const Complex* src = cur.data() + (h * from + m) * low;
          for (std::size_t l = 0; l < low; ++l) dst[l] += 0.5 * src[l];
        }
      }
    }
    cur.swap(next);
    shape[r] = Q;
  }
  return cur;
}

// 2^n Σ_k g_k c(m - k 2^{J-1}).
std::vector<Complex> refine(const std::vector<Complex>& g, int M, const SampledFunction& phi) {
  const int n = phi.n;
  const std::size_t P = phi.points_per_axis();
  const std::size_t Q = (P + 1) / 2;
  const std::vector<Complex> c = coarse_average(phi, Q);
  const long half = 1L << (phi.J - 1);
  const double scale = static_cast<double>(1 << n);

  const Grid out_grid(n, static_cast<int>(P));
  const Grid k_grid(n, M);
  std::vector<Complex> out(out_grid.size());
  std::vector<int> k(n);
  std::vector<int> m(n);
  std::vector<std::size_t> stride(n);
  for (int r = 0, s = 1; r < n; ++r, s *= static_cast<int>(Q)) stride[r] = s;

  for (std::size_t ki = 0; ki < k_grid.size(); ++ki) {
    const Complex w = scale * g[ki];
    if (w == Complex{}) continue;
    k_grid.coords(ki, k);
    for (std::size_t i = 0; i < out_grid.size(); ++i) {
      out_grid.coords(i, m);
      std::size_t idx = 0;
      bool inside = true;
      for (int r = 0; r < n && inside; ++r) {
        const long q = m[r] - k[r] * half;
        inside = q >= 0 && q < static_cast<long>(Q);
        idx += static_cast<std::size_t>(q) * stride[r];
      }
      if (inside) out[i] += w * c[idx];
    }
  }
  return out;
}

}  // namespace

Complex SampledFunction::integral() const {
  Complex s{};
  for (const auto& v : values) s += v;
  return s * std::pow(spacing(), n);
}

double SampledFunction::l2_norm() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return std::sqrt(s * std::pow(spacing(), n));
}

SampledFunction cascade(const FilterBank& f, int J, int iters) {
  if (J < 1) throw ArgumentError("resolution J must be >= 1");
  if (iters < 1) throw ArgumentError("iters must be >= 1");
  SampledFunction phi;
  phi.n = f.n;
  phi.J = J;
  phi.support = f.M - 1;
  const Grid grid = phi.grid();
  phi.values.assign(grid.size(), Complex{});
  const int cell = 1 << J;
  std::vector<int> m(f.n);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.coords(i, m);
    bool in = true;
    for (int r = 0; r < f.n; ++r) in = in && m[r] < cell;
    if (in) phi.values[i] = 1.0;
  }

  for (int it = 0; it < iters; ++it) {
    std::vector<Complex> next = refine(f.g[0], f.M, phi);
    double s = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) s += std::norm(next[i] - phi.values[i]);
    phi.last_step_change = std::sqrt(s * std::pow(phi.spacing(), f.n));
    phi.values = std::move(next);
    phi.iterations = it + 1;
  }
  return phi;
}

SampledFunction wavelet_from_scaling(const FilterBank& f, int eps, const SampledFunction& phi) {
  if (eps < 1 || eps >= f.filter_count()) {
    throw ArgumentError("wavelet index " + std::to_string(eps) + " outside [1, 2^n - 1]");
  }
  if (phi.n != f.n || phi.support != f.M - 1) throw ArgumentError("scaling function does not match filter bank");
  SampledFunction psi = phi;
  psi.values = refine(f.g[eps], f.M, phi);
  psi.iterations = 1;
  psi.last_step_change = 0.0;
  return psi;
}

Complex shift_inner_product(const SampledFunction& a, const SampledFunction& b, std::span<const int> k) {
  check_same_grid(a, b);
  if (static_cast<int>(k.size()) != a.n) throw ArgumentError("shift has wrong dimension");
  const Grid grid = a.grid();
  const long P = static_cast<long>(a.points_per_axis());
  const long cell = 1L << a.J;
  std::vector<int> m(a.n);
  std::vector<int> shifted(a.n);
  Complex s{};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.coords(i, m);
    bool inside = true;
    for (int r = 0; r < a.n && inside; ++r) {
      const long q = m[r] - k[r] * cell;
      inside = q >= 0 && q < P;
      shifted[r] = static_cast<int>(q);
    }
    if (inside) s += a.values[i] * std::conj(b.values[grid.linear(shifted)]);
  }
  return s * std::pow(a.spacing(), a.n);
}

SymbolTable sample_symbol(const FilterBank& f, int eps, int grid_points) {
  if (grid_points < 2) throw ArgumentError("grid_points must be >= 2");
  SymbolTable t;
  t.n = f.n;
  t.points = grid_points;
  std::vector<double> axis(grid_points);
  for (int p = 0; p < grid_points; ++p) axis[p] = t.coordinate(p);
  t.values = evaluate_filter_on_grid(f, eps, std::vector<std::vector<double>>(f.n, axis));
  return t;
}

}  // namespace drw
