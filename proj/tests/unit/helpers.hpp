#pragma once

#include <filesystem>
#include <random>

#include "drwavelet/drwavelet.hpp"

namespace drwtest {

inline std::filesystem::path data(const char* name) { return std::filesystem::path(DRW_TEST_DATA) / name; }

/// Haar filters embedded in Q_M^n (nonzero only at k in {0,1}^n).
inline drw::FilterBank haar(int n, int M) {
  drw::FilterBank f(n, M);
  const drw::Grid grid = f.grid();
  std::vector<int> k(n);
  for (int eps = 0; eps < f.filter_count(); ++eps) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid.coords(i, k);
      double v = 1.0;
      for (int r = 0; r < n; ++r) {
        if (k[r] > 1) v = 0.0;
        if (((eps >> r) & 1) && k[r] == 1) v = -v;
        v *= 0.5;
      }
      f.g[eps][i] = v;
    }
  }
  return f;
}

/// Tensor product of two 1D banks with the same M.
inline drw::FilterBank tensor(const drw::FilterBank& a, const drw::FilterBank& b) {
  drw::FilterBank f(2, a.M);
  for (int e0 = 0; e0 < 2; ++e0)
    for (int e1 = 0; e1 < 2; ++e1)
      for (int k0 = 0; k0 < a.M; ++k0)
        for (int k1 = 0; k1 < a.M; ++k1) f.g[e0 + 2 * e1][k0 + a.M * k1] = a.g[e0][k0] * b.g[e1][k1];
  return f;
}

inline drw::FilterBank random_bank(int n, int M, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  drw::FilterBank f(n, M);
  for (auto& g : f.g)
    for (auto& z : g) z = {u(rng), u(rng)};
  return f;
}

template <class E>
E random_like(int n, int M, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  E e(n, M);
  for (auto& z : e.raw()) z = {u(rng), u(rng)};
  return e;
}

/// The consistent ensemble whose coefficients are built from `f`.
inline drw::ConsistentEnsemble ensemble_of(const drw::FilterBank& f) {
  return drw::restrict(drw::dft(drw::coefficients_from_filters(f)));
}

}  // namespace drwtest
