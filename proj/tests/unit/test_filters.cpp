#include <gtest/gtest.h>

#include <numbers>
#include <numeric>

#include "helpers.hpp"

using namespace drw;
using drwtest::data;
using drwtest::haar;

TEST(Filters, CoefficientRoundTrip) {
  std::mt19937_64 rng(11);
  for (auto [n, M] : {std::pair{1, 6}, std::pair{2, 4}}) {
    const FilterBank f = drwtest::random_bank(n, M, rng);
    const auto c = drwtest::ensemble_of(f);
    const FilterBank g = extract_filters(c);
    for (int eps = 0; eps < f.filter_count(); ++eps)
      for (std::size_t k = 0; k < f.size(); ++k) EXPECT_LT(std::abs(f.g[eps][k] - g.g[eps][k]), 1e-12);
  }
}

TEST(Filters, SymbolMatrixMatchesCoefficientSymbol) {
  std::mt19937_64 rng(12);
  const FilterBank f = drwtest::random_bank(2, 4, rng);
  const auto a = coefficients_from_filters(f);
  for (const auto& xi : {std::vector<double>{0.1, 0.7}, std::vector<double>{0.33, 0.0}}) {
    EXPECT_LT((symbol_matrix(f, xi) - evaluate_symbol(a, xi)).norm(), 1e-12);
  }
}

TEST(Filters, GridEvaluationMatchesPointwise) {
  std::mt19937_64 rng(13);
  const FilterBank f = drwtest::random_bank(2, 6, rng);
  const std::vector<std::vector<double>> axes{{0.0, 0.2, 0.5}, {0.1, 0.9}};
  const auto v = evaluate_filter_on_grid(f, 2, axes);
  ASSERT_EQ(v.size(), 6u);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 3; ++i) {
      const std::vector<double> xi{axes[0][i], axes[1][j]};
      EXPECT_LT(std::abs(v[i + 3 * j] - evaluate_filter(f, 2, xi)), 1e-13);
    }
}

TEST(Filters, HaarPassesEveryCheck) {
  for (auto [n, M] : {std::pair{1, 2}, std::pair{1, 4}, std::pair{2, 4}}) {
    const FilterBank f = haar(n, M);
    EXPECT_LT(qmf_residual(f, 4 * M), 1e-14);
    EXPECT_LT(cross_qmf_residual(f, 4 * M), 1e-14);
    EXPECT_LT(completeness_residual(f), 1e-14);
    const auto b = bownik_check(f);
    EXPECT_TRUE(b.pass);
    EXPECT_NEAR(b.min_abs, std::pow(std::numbers::sqrt2 / 2, n), 1e-12);
  }
}

TEST(Filters, HaarHasOneVanishingMoment) {
  const auto r = regularity_residual(haar(1, 4), 2);
  EXPECT_LT(r.at({0}), 1e-15);
  EXPECT_NEAR(r.at({1}), 0.5, 1e-15);
  EXPECT_NEAR(r.at({2}), 0.5, 1e-15);
  const auto r2 = regularity_residual(haar(2, 4), 1);
  EXPECT_EQ(r2.size(), 3u);
  EXPECT_NEAR(r2.at({1, 0}), 0.5, 1e-15);
}

TEST(Filters, ConjugateFlipCompletion) {
  const std::vector<Complex> g0{{0.1, 0.2}, {0.3, 0.0}, {0.5, -0.1}, {0.7, 0.4}};
  const FilterBank f = complete_conjugate_flip(g0);
  ASSERT_EQ(f.M, 4);
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(f.g[0][k], g0[k]);
    EXPECT_EQ(f.g[1][k], (k % 2 ? -1.0 : 1.0) * std::conj(g0[3 - k]));
  }
}

TEST(Filters, PerturbedHaarFailsQmf) {
  FilterBank f = haar(1, 4);
  f.g[0][0] += 0.01;
  EXPECT_GT(qmf_residual(f, 16), 1e-3);
  EXPECT_FALSE(verify(f).pass());
}

TEST(Filters, MomentsMatchFiniteDifferencesOfTheSymbol) {
  // ∂^α m_ε(0) = (-2πi)^{|α|} Σ_k k^α g_k^ε, compared with fourth-order
  // central differences.
  std::mt19937_64 rng(14);
  const FilterBank f = drwtest::random_bank(2, 4, rng);
  const double h = 1e-3;
  const std::vector<double> w1{1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
  const std::vector<double> w2{-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
  const std::vector<double> w0{0.0, 0.0, 1.0, 0.0, 0.0};
  auto weights = [&](int order) { return order == 0 ? w0 : order == 1 ? w1 : w2; };
  const Complex minus_two_pi_i{0.0, -2.0 * std::numbers::pi};
  const Grid grid = f.grid();
  for (int eps = 0; eps < 4; ++eps) {
    for (const auto& alpha : moment_indices(2, 2)) {
      const auto wa = weights(alpha[0]);
      const auto wb = weights(alpha[1]);
      Complex fd{};
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
          if (wa[i] == 0.0 || wb[j] == 0.0) continue;
          const std::vector<double> xi{(i - 2) * h, (j - 2) * h};
          fd += wa[i] * wb[j] * evaluate_filter(f, eps, xi);
        }
      fd /= std::pow(h, alpha[0] + alpha[1]);
      Complex moment{};
      double scale = 0.0;
      std::vector<int> k(2);
      for (std::size_t lin = 0; lin < grid.size(); ++lin) {
        grid.coords(lin, k);
        moment += monomial(k, alpha) * f.g[eps][lin];
        scale += monomial(k, alpha) * std::abs(f.g[eps][lin]);
      }
      const Complex exact = std::pow(minus_two_pi_i, alpha[0] + alpha[1]) * moment;
      EXPECT_LT(std::abs(fd - exact), 1e-5 * std::pow(2 * std::numbers::pi, alpha[0] + alpha[1]) * scale)
          << "eps " << eps << " alpha " << alpha[0] << "," << alpha[1];
    }
  }
}

TEST(Separability, TensorProductIsZero) {
  const FilterBank a = complete_conjugate_flip(
      std::vector<Complex>{0.02490875, -0.0604161, -0.09546721, 0.3251825, 0.57055846, 0.2352336});
  // Any complex row with unit sum gives a separable tensor product.
  std::vector<Complex> g1{{0.3, 0.1}, {0.4, -0.2}, {0.2, 0.05}, {0.1, 0.0}, {0.0, 0.0}, {-0.01, 0.0}};
  const Complex sum = std::accumulate(g1.begin(), g1.end(), Complex{});
  for (auto& z : g1) z /= sum;
  const FilterBank b = complete_conjugate_flip(g1);
  EXPECT_LT(separability_measure(drwtest::tensor(a, a)), 1e-12);
  EXPECT_LT(separability_measure(drwtest::tensor(a, b)), 1e-12);
  EXPECT_LT(separability_measure(drwtest::tensor(haar(1, 4), haar(1, 4))), 1e-12);
  EXPECT_THROW(separability_measure(a), ArgumentError);
}

TEST(Separability, ExemplarBanks) {
  const FilterBank complex_bank = load_verify_input(data("exemplar_2d_complex.json")).filters;
  EXPECT_NEAR(separability_measure(complex_bank), 0.041, 0.005);
  const FilterBank real_bank = load_verify_input(data("exemplar_2d_real.json")).filters;
  EXPECT_NEAR(separability_measure(real_bank), 0.315, 0.01);
}

TEST(Verify, ExemplarOneDimensionalBank) {
  const FilterBank f = load_verify_input(data("exemplar_1d_6_2.json")).filters;
  Complex sum{};
  for (const auto& z : f.g[0]) sum += z;
  EXPECT_NEAR(sum.real(), 1.0, 1e-6);
  VerifyOptions opt;
  opt.d = 2;
  const auto r = verify(f, opt);
  EXPECT_LT(r.qmf_residual, 1e-4);
  EXPECT_LT(r.max_regularity(), 1e-4);
  EXPECT_TRUE(r.bownik_pass);
  EXPECT_TRUE(r.pass());
  EXPECT_FALSE(r.separability.has_value());
}
