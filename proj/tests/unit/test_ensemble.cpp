#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace drw;
using drwtest::random_like;

namespace {

struct Shape {
  int n;
  int M;
};

std::vector<double> point(const std::vector<int>& j, int ell, int M) {
  const auto v = vertex_of(ell, static_cast<int>(j.size())).bits;
  std::vector<double> xi(j.size());
  for (std::size_t r = 0; r < j.size(); ++r) xi[r] = (j[r] + 0.5 * v[r]) / M;
  return xi;
}

}  // namespace

class EnsembleShapes : public ::testing::TestWithParam<Shape> {
 protected:
  std::mt19937_64 rng{42};
};

TEST_P(EnsembleShapes, DftRoundTrip) {
  const auto [n, M] = GetParam();
  const auto a = random_like<TrigPolyCoefficients>(n, M, rng);
  EXPECT_LT(max_abs_diff(idft(dft(a)), a), 1e-10);
  const auto u = random_like<MatrixEnsemble>(n, M, rng);
  EXPECT_LT(max_abs_diff(dft(idft(u)), u), 1e-10);
}

TEST_P(EnsembleShapes, Parseval) {
  const auto [n, M] = GetParam();
  const auto a = random_like<TrigPolyCoefficients>(n, M, rng);
  const double scale = std::pow(M, n);
  EXPECT_NEAR(squared_norm(dft(a)), scale * squared_norm(a), 1e-10 * scale * squared_norm(a));
}

TEST_P(EnsembleShapes, DftSamplesTheSymbol) {
  const auto [n, M] = GetParam();
  const auto a = random_like<TrigPolyCoefficients>(n, M, rng);
  const auto u = dft(a);
  for (std::size_t i = 0; i < u.count(); ++i) {
    const auto xi = point(u.grid().index(i).coords, 0, M);
    EXPECT_LT((u[i] - evaluate_symbol(a, xi)).norm(), 1e-10);
  }
}

TEST_P(EnsembleShapes, HalfShiftSamplesTheSymbolOffGrid) {
  const auto [n, M] = GetParam();
  const auto u = random_like<MatrixEnsemble>(n, M, rng);
  const auto a = idft(u);
  for (int ell = 1; ell < (1 << n); ++ell) {
    const auto s = shift_half(ell, u);
    for (std::size_t i = 0; i < s.count(); ++i) {
      const auto xi = point(s.grid().index(i).coords, ell, M);
      EXPECT_LT((s[i] - evaluate_symbol(a, xi)).norm(), 1e-10);
    }
    EXPECT_LT(max_abs_diff(shift_half(ell, s, -1), u), 1e-10);
  }
}

TEST_P(EnsembleShapes, HalfShiftMatchesAxisConvolution) {
  const auto [n, M] = GetParam();
  const auto u = random_like<MatrixEnsemble>(n, M, rng);
  for (int r = 0; r < n; ++r) EXPECT_LT(max_abs_diff(shift_half(1 << r, u), t_shift_direct(r, u)), 1e-10);
  if (n == 2) EXPECT_LT(max_abs_diff(shift_half(3, u), t_shift_direct(1, t_shift_direct(0, u))), 1e-10);
}

TEST_P(EnsembleShapes, ChiInverse) {
  const auto [n, M] = GetParam();
  const auto a = random_like<TrigPolyCoefficients>(n, M, rng);
  for (int ell = 0; ell < (1 << n); ++ell) EXPECT_LT(max_abs_diff(chi(ell, chi(ell, a), -1), a), 1e-14);
}

TEST_P(EnsembleShapes, TranslationCommutesWithHalfShift) {
  const auto [n, M] = GetParam();
  const auto u = random_like<MatrixEnsemble>(n, M, rng);
  std::vector<int> k(n);
  for (int r = 0; r < n; ++r) k[r] = r + 1;
  const auto t = translate(u, k);
  std::vector<int> j(n);
  for (std::size_t i = 0; i < u.count(); ++i) {
    u.grid().coords(i, j);
    for (int r = 0; r < n; ++r) j[r] = (j[r] + k[r]) % M;
    EXPECT_EQ(CMatrix(t[i]), CMatrix(u[u.grid().linear(j)]));
  }
  for (int ell = 1; ell < (1 << n); ++ell) {
    EXPECT_LT(max_abs_diff(shift_half(ell, t), translate(shift_half(ell, u), k)), 1e-10);
  }
}

TEST_P(EnsembleShapes, ExpandIsConsistentAndRestrictInvertsIt) {
  const auto [n, M] = GetParam();
  const auto c = random_like<ConsistentEnsemble>(n, M, rng);
  const auto u = expand(c);
  EXPECT_EQ(consistency_residual(u), 0.0);
  EXPECT_EQ(restrict(u), c);
  EXPECT_NEAR(norm(c), norm(u), 1e-12 * norm(u));

  std::vector<int> j(n);
  for (int r = 0; r < n; ++r) {
    const auto sigma = permutation_matrix(1 << r, n);
    for (std::size_t i = 0; i < u.count(); ++i) {
      u.grid().coords(i, j);
      const CMatrix uj = u[i];
      j[r] = (j[r] + M / 2) % M;
      EXPECT_EQ(CMatrix(u[u.grid().linear(j)]), sigma.apply(uj));
    }
  }
}

TEST_P(EnsembleShapes, RestrictRejectsInconsistentSamples) {
  const auto [n, M] = GetParam();
  const auto u = random_like<MatrixEnsemble>(n, M, rng);
  EXPECT_GT(consistency_residual(u), 0.1);
  EXPECT_THROW(restrict(u), ConsistencyError);
}

TEST_P(EnsembleShapes, InnerProductMatchesExpandedNorm) {
  const auto [n, M] = GetParam();
  const auto a = random_like<ConsistentEnsemble>(n, M, rng);
  const auto b = random_like<ConsistentEnsemble>(n, M, rng);
  EXPECT_NEAR(inner(a, b), inner(expand(a), expand(b)), 1e-10);
}

INSTANTIATE_TEST_SUITE_P(Shapes, EnsembleShapes,
                         ::testing::Values(Shape{1, 4}, Shape{1, 6}, Shape{1, 10}, Shape{2, 4}, Shape{2, 6}),
                         [](const auto& info) {
                           return "n" + std::to_string(info.param.n) + "M" + std::to_string(info.param.M);
                         });

TEST(Ensemble, RejectsBadShapes) {
  EXPECT_THROW(MatrixEnsemble(1, 5), ArgumentError);
  EXPECT_THROW(MatrixEnsemble(1, 2), ArgumentError);
  EXPECT_THROW(MatrixEnsemble(0, 4), ArgumentError);
  MatrixEnsemble a(1, 4);
  MatrixEnsemble b(1, 6);
  EXPECT_THROW(a += b, ArgumentError);
}

TEST(Ensemble, AxisConvolutionKeepsConstants) {
  MatrixEnsemble u(2, 6);
  for (std::size_t i = 0; i < u.count(); ++i) u[i] = CMatrix::Constant(4, 4, Complex(0.3, -0.2));
  EXPECT_LT(max_abs_diff(t_shift_direct(0, u), u), 1e-12);
  EXPECT_LT(max_abs_diff(t_shift_direct(1, u), u), 1e-12);
  std::mt19937_64 rng(3);
  const auto v = random_like<MatrixEnsemble>(2, 6, rng);
  EXPECT_LT(max_abs_diff(t_shift_direct(0, t_shift_direct(1, v)), t_shift_direct(1, t_shift_direct(0, v))), 1e-10);
  EXPECT_THROW(t_shift_direct(2, v), ArgumentError);
}

TEST(Ensemble, QuarterGridUnitaryCounterexample) {
  TrigPolyCoefficients a(1, 4);
  const CMatrix I = CMatrix::Identity(2, 2);
  const CMatrix sigma = permutation_matrix(1, 1).entries().cast<Complex>();
  a[0] = 0.5 * (I + sigma);
  a[1] = Complex(1, 1) / 4.0 * (I - sigma);
  a[3] = Complex(1, -1) / 4.0 * (I - sigma);
  const auto u = dft(a);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_LT((CMatrix(u[j]).adjoint() * u[j] - I).norm(), 1e-12);
  const auto s = shift_half(1, u);
  EXPECT_LT((CMatrix(s[0]) - 0.5 * (I + sigma)).norm(), 1e-12);
  EXPECT_NEAR((CMatrix(s[0]).adjoint() * s[0] - I).norm(), 1.0, 1e-10);
}
