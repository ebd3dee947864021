#include <gtest/gtest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "relaxlab/error.hpp"
#include "relaxlab/random_fields.hpp"
#include "relaxlab/symmetry.hpp"

using namespace relaxlab;

namespace {

Vec vec(std::initializer_list<double> v) {
  Vec out(v.size());
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Entropy, VariableExamples) {
  const PressureLaw law(2.0);
  const auto W = to_entropy_point(2.0, vec({2.0}), law);
  EXPECT_DOUBLE_EQ(W.W1, 1.5);
  EXPECT_DOUBLE_EQ(W.W2[0], 1.0);
  const auto [rho, m] = from_entropy_point(W, law);
  EXPECT_NEAR(rho, 2.0, 1e-14);
  EXPECT_NEAR(m[0], 2.0, 1e-14);

  const auto Wbar = to_entropy_point(1.0, vec({0.0}), law);
  EXPECT_EQ(Wbar.W1, 0.0);
}

TEST(Entropy, InverseEnthalpy) {
  EXPECT_NEAR(PressureLaw(2.0).h_prime_inverse(2.0), 2.0, 1e-14);
  EXPECT_NEAR(PressureLaw(1.0).h_prime_inverse(std::log(3.0)), 3.0, 1e-14);
  EXPECT_THROW(PressureLaw(2.0).h_prime_inverse(-2.0), DomainError);
  EXPECT_THROW(PressureLaw(2.0).h_prime_inverse(-3.0), DomainError);
  EXPECT_THROW(to_entropy_point(0.0, vec({0.0}), PressureLaw(2.0)), DomainError);
}

TEST(Entropy, EnthalpyMatchesQuadrature) {
  using boost::math::quadrature::gauss_kronrod;
  for (double gamma : {1.0, 1.4, 2.0, 3.0}) {
    const PressureLaw law(gamma);
    for (double rho : {0.1, 0.5, 1.0, 2.5, 10.0}) {
      const double quad = gauss_kronrod<double, 61>::integrate(
          [&](double s) { return law.dp(s) / s; }, 1.0, rho, 0, 1e-14);
      EXPECT_NEAR(law.h_prime(rho), quad, 1e-10) << gamma << " " << rho;
      EXPECT_NEAR(law.h_prime_inverse_newton(law.h_prime(rho)), rho, 1e-10 * rho);
      EXPECT_NEAR(law.h_prime_inverse(law.h_prime(rho)), rho, 1e-12 * rho);
    }
  }
}

TEST(Matrices, ValuesAtEquilibrium) {
  const PressureLaw law(2.0);
  const auto f = matrices_at_density(1.0, vec({0.0}), law, 0.5);
  Mat A0(2, 2), A1(2, 2);
  A0 << 1, 0, 0, 2;
  A1 << 0, 2, 2, 0;
  EXPECT_LT(max_abs(f.A0 - A0), 1e-15);
  EXPECT_LT(max_abs(f.A[0] - A1), 1e-15);
  EXPECT_EQ(f.H.norm(), 0.0);
}

TEST(Matrices, SymmetricSplitAndPositive) {
  const PressureLaw law(1.4);
  Rng rng(11);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int N : {1, 2, 3}) {
    for (int trial = 0; trial < 20; ++trial) {
      Vec W2(N);
      for (int j = 0; j < N; ++j) W2[j] = u(rng);
      const double rho = 0.5 + std::abs(u(rng));
      const auto f = matrices_at_density(rho, W2, law, 0.25);
      EXPECT_LT(max_abs(f.A0 - f.A0.transpose()), 1e-15);
      EXPECT_LT(max_abs(f.A0 - f.A0_I - f.A0_II), 1e-15);
      EXPECT_TRUE(is_positive_definite(f.A0));
      for (int j = 0; j < N; ++j) {
        EXPECT_LT(max_abs(f.A[j] - f.A[j].transpose()), 1e-15);
        EXPECT_LT(max_abs(f.A[j] - f.A_I[j] - f.A_II[j]), 1e-15);
      }
      EXPECT_LT((f.H.tail(N) + law.dp(rho) * W2 / 0.25).norm(), 1e-14);
    }
  }
}

TEST(Matrices, EigenvaluesOfFluxInOneDimension) {
  // At W_bar the 1-D flux matrix has eigenvalues +-p'(rho_bar).
  const PressureLaw law(2.0);
  const auto f = matrices_at_density(1.0, vec({0.0}), law, 1.0);
  Eigen::SelfAdjointEigenSolver<Mat> es(f.A[0]);
  EXPECT_NEAR(es.eigenvalues()[0], -2.0, 1e-14);
  EXPECT_NEAR(es.eigenvalues()[1], 2.0, 1e-14);
}

TEST(Compensator, HandValuesInOneDimension) {
  const PressureLaw law(2.0);
  Mat K_expected(2, 2);
  K_expected << 0, 0.5, -1, 0;
  EXPECT_LT(max_abs(compensating_matrix(vec({1.0}), law, 1.0) - K_expected), 1e-15);
  EXPECT_LT(max_abs(compensating_matrix(vec({3.7}), law, 1.0) - K_expected), 1e-15);

  const auto f = matrices_at_density(1.0, vec({0.0}), law, 1.0);
  Mat KA1(2, 2), KA0(2, 2);
  KA1 << 1, 0, 0, -2;
  KA0 << 0, 1, -1, 0;
  EXPECT_LT(max_abs(K_expected * f.A[0] - KA1), 1e-15);
  EXPECT_LT(max_abs(K_expected * f.A0 - KA0), 1e-15);
}

TEST(Compensator, IdentitiesOverDirections) {
  for (double gamma : {1.0, 2.0, 3.0}) {
    for (int N : {1, 2, 3}) {
      const auto sw = sk_sweep(N, PressureLaw(gamma), 1.3, 200, 5);
      EXPECT_EQ(sw.directions, 200);
      EXPECT_LT(sw.max_skew, 1e-13);
      EXPECT_LT(sw.max_sk, 1e-13);
    }
  }
}

TEST(Entropy, RelativeEntropyExamples) {
  const PressureLaw law(2.0);
  EXPECT_EQ(relative_entropy(1.0, vec({0.0}), law, 1.0), 0.0);
  const double eps = 1e-3;
  EXPECT_NEAR(relative_entropy(1.0 + eps, vec({0.0}), law, 1.0), eps * eps, 1e-18);
  EXPECT_NEAR(relative_entropy(2.0, vec({2.0}), law, 1.0), 1.0 + 1.0, 1e-14);
  EXPECT_GT(relative_entropy(0.3, vec({0.1}), PressureLaw(1.4), 1.0), 0.0);
}

TEST(Entropy, GradientIsTheEntropyVariable) {
  const PressureLaw law(1.4);
  const double rho = 1.3;
  const Vec m = vec({0.4, -0.2});
  const auto W = to_entropy_point(rho, m, law);
  const double h = 1e-6;
  const double d_rho = (entropy(rho + h, m, law) - entropy(rho - h, m, law)) / (2 * h);
  EXPECT_NEAR(d_rho, W.W1, 1e-6);
  for (int j = 0; j < 2; ++j) {
    Vec mp = m, mm = m;
    mp[j] += h;
    mm[j] -= h;
    EXPECT_NEAR((entropy(rho, mp, law) - entropy(rho, mm, law)) / (2 * h), W.W2[j], 1e-6);
  }
}

TEST(Entropy, FluxIsCompatible) {
  // In 1-D, dq/dU = deta/dU dF/dU for F = (m, m^2 / rho + p).
  const PressureLaw law(2.0);
  const double rho = 1.2, m = 0.3, h = 1e-6;
  const auto q = [&](double r, double mm) { return entropy_flux(r, vec({mm}), law)[0]; };
  const double q_rho = (q(rho + h, m) - q(rho - h, m)) / (2 * h);
  const double q_m = (q(rho, m + h) - q(rho, m - h)) / (2 * h);
  const auto W = to_entropy_point(rho, vec({m}), law);
  const double u = m / rho;
  EXPECT_NEAR(q_rho, W.W2[0] * (law.dp(rho) - u * u), 1e-6);
  EXPECT_NEAR(q_m, W.W1 + W.W2[0] * 2.0 * u, 1e-6);
}

TEST(Remainder, MatchesTheConservativeSystem) {
  // W_t from U_t = -d_x F(U) + (0, -m / tau), mapped through dW/dU.
  const PressureLaw law(2.0);
  const double rho_bar = 1.0, tau = 0.3, fd = 1e-6;
  const double dp_bar = 2.0;
  Rng rng(13);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int trial = 0; trial < 10; ++trial) {
    const double rho = 1.0 + u(rng), m = u(rng);
    const Vec dU = vec({u(rng), u(rng)});
    const auto W = to_entropy_point(rho, vec({m}), law);
    const auto Wof = [&](double r, double mm) {
      const auto w = to_entropy_point(r, vec({mm}), law);
      return vec({w.W1, w.W2[0]});
    };
    Mat dWdU(2, 2);
    dWdU.col(0) = (Wof(rho + fd, m) - Wof(rho - fd, m)) / (2 * fd);
    dWdU.col(1) = (Wof(rho, m + fd) - Wof(rho, m - fd)) / (2 * fd);
    const double v = m / rho;
    const Vec dF = vec({dU[1], 2.0 * v * dU[1] + (law.dp(rho) - v * v) * dU[0]});
    const Vec Ut = -dF + vec({0.0, -m / tau});
    const Vec Wt = dWdU * Ut;
    const Vec Wx = dWdU * dU;
    Mat A0(2, 2), A1(2, 2);
    A0 << 1, 0, 0, dp_bar;
    A1 << 0, dp_bar, dp_bar, 0;
    const Vec oracle = A0 * Wt + A1 * Wx + vec({0.0, dp_bar * W.W2[0] / tau});
    Mat gradW(2, 1);
    gradW.col(0) = Wx;
    const Vec G = linearized_remainder(W, gradW, law, rho_bar, tau);
    EXPECT_LT((G - oracle).norm(), 1e-6 * (1.0 + oracle.norm())) << trial;
  }
}

TEST(Remainder, VanishesAtEquilibrium) {
  const PressureLaw law(2.0);
  const PeriodicGrid g(2, 32);
  const auto W = to_entropy_vars(ScalarField::constant(g, 1.5),
                                 {ScalarField::zero(g), ScalarField::zero(g)}, law, 1.5);
  for (const auto& c : linearized_remainder(W, law, 0.5)) EXPECT_LT(linf_norm(c), 1e-14);
}

TEST(Entropy, GridRoundTrip) {
  const PressureLaw law(1.4);
  const PeriodicGrid g(2, 32);
  Rng rng(17);
  const ScalarField rho = add_constant(0.1 * random_smooth_field(g, rng), 1.0);
  const VectorField m{0.1 * random_smooth_field(g, rng), 0.1 * random_smooth_field(g, rng)};
  const auto [rho2, m2] = from_entropy_vars(to_entropy_vars(rho, m, law, 1.0), law);
  EXPECT_LT(linf_norm(rho2 - rho), 1e-10);
  for (int j = 0; j < 2; ++j) EXPECT_LT(linf_norm(m2[j] - m[j]), 1e-10);
}
