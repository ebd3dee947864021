#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "relaxlab/field.hpp"

namespace relaxlab {

inline constexpr double kVacuumGuard = 1e-10;

/// p(rho) = rho^gamma, gamma >= 1, with enthalpy h normalized by h(1) = 0.
class PressureLaw {
 public:
  explicit PressureLaw(double gamma = 2.0);

  double gamma() const noexcept { return gamma_; }
  double p(double rho) const;
  double dp(double rho) const;
  double d2p(double rho) const;
  /// h'(rho) = int_1^rho p'(s)/s ds.
  double h_prime(double rho) const;
  double h(double rho) const;
  /// Closed-form inverse of h'; DomainError outside its range or below the vacuum guard.
  double h_prime_inverse(double y) const;
  /// Safeguarded Newton inverse on [1e-8, 1e8], for laws without a closed form.
  double h_prime_inverse_newton(double y) const;
  /// h(rho) - h(rho_bar) - h'(rho_bar)(rho - rho_bar), evaluated without cancellation.
  double h_bregman(double rho, double rho_bar) const;

 private:
  double gamma_;
};

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct EntropyPoint {
  double W1 = 0.0;
  Vec W2;
};

EntropyPoint to_entropy_point(double rho, const Vec& m, const PressureLaw& law);
/// Returns (rho, m).
std::pair<double, Vec> from_entropy_point(const EntropyPoint& W, const PressureLaw& law);

/// W = (W1, W2) on a grid with reference W_bar = (h'(rho_bar), 0).
struct EntropyState {
  ScalarField W1;
  VectorField W2;
  double rho_bar = 1.0;
  double W1_bar = 0.0;
};

EntropyState to_entropy_vars(const ScalarField& rho, const VectorField& m, const PressureLaw& law,
                             double rho_bar);
/// Returns (rho, m).
std::pair<ScalarField, VectorField> from_entropy_vars(const EntropyState& W, const PressureLaw& law);

struct MatrixFamily {
  double rho = 0.0;
  Mat A0;
  Mat A0_I;
  Mat A0_II;
  std::vector<Mat> A;
  std::vector<Mat> A_I;
  std::vector<Mat> A_II;
  Vec H;
};

MatrixFamily matrices_at(const EntropyPoint& W, const PressureLaw& law, double tau);
/// Same family with the density given directly.
MatrixFamily matrices_at_density(double rho, const Vec& W2, const PressureLaw& law, double tau);

bool is_positive_definite(const Mat& A);

/// K(xi) = [[0, xi^T / (|xi| p'(rho_bar))], [-xi / |xi|, 0]].
Mat compensating_matrix(const Vec& xi, const PressureLaw& law, double rho_bar);

struct SkReport {
  int N = 0;
  double gamma = 0.0;
  double rho_bar = 0.0;
  Vec xi;
  /// max |K A0 + (K A0)^T| at W_bar.
  double skew_residual = 0.0;
  /// max |K sum xi_j A^j - diag(|xi|, -p' xi xi^T / |xi|)| at W_bar.
  double sk_residual = 0.0;
};

SkReport sk_identity_check(const Vec& xi, const PressureLaw& law, double rho_bar);

struct SkSweep {
  int directions = 0;
  double max_skew = 0.0;
  double max_sk = 0.0;
};

/// Random unit directions on S^{N-1}.
SkSweep sk_sweep(int N, const PressureLaw& law, double rho_bar, int directions, std::uint64_t seed);

double entropy(double rho, const Vec& m, const PressureLaw& law);
/// q(rho, m) = (|m|^2 / (2 rho) + rho h'(rho)) m / rho.
Vec entropy_flux(double rho, const Vec& m, const PressureLaw& law);
double relative_entropy(double rho, const Vec& m, const PressureLaw& law, double rho_bar);
Vec relative_entropy_flux(double rho, const Vec& m, const PressureLaw& law, double rho_bar);

struct EntropyFields {
  ScalarField eta;
  VectorField q;
  ScalarField eta_rel;
  VectorField q_rel;
};

EntropyFields entropy_and_flux(const ScalarField& rho, const VectorField& m, const PressureLaw& law,
                               double rho_bar);

/// Remainder G of the system linearized at W_bar, at one point;
/// grad_W column j holds d_j W.
Vec linearized_remainder(const EntropyPoint& W, const Mat& grad_W, const PressureLaw& law,
                         double rho_bar, double tau);

/// G on a grid; N + 1 components.
VectorField linearized_remainder(const EntropyState& W, const PressureLaw& law, double tau);

}  // namespace relaxlab
