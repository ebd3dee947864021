#include "relaxlab/symmetry.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "relaxlab/error.hpp"

namespace relaxlab {

namespace {

std::string point_label(const PeriodicGrid& grid, std::size_t i) {
  const auto x = grid.coordinate(i);
  std::ostringstream os;
  os << "grid point " << i << " (x =";
  for (int d = 0; d < grid.dim(); ++d) os << ' ' << x[d];
  os << ')';
  return os.str();
}

void check_density(double rho) {
  if (!(rho > kVacuumGuard)) {
    std::ostringstream os;
    os << "density " << rho << " at or below the vacuum guard";
    throw DomainError(os.str());
  }
}

Vec pointwise_vector(const VectorField& v, std::size_t i) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t d = 0; d < v.size(); ++d) out[static_cast<Eigen::Index>(d)] = v[d][i];
  return out;
}

}  // namespace

PressureLaw::PressureLaw(double gamma) : gamma_(gamma) {
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw ConfigError("pressure law needs gamma >= 1");
}

double PressureLaw::p(double rho) const { return std::pow(rho, gamma_); }

double PressureLaw::dp(double rho) const { return gamma_ * std::pow(rho, gamma_ - 1.0); }

double PressureLaw::d2p(double rho) const {
  return gamma_ * (gamma_ - 1.0) * std::pow(rho, gamma_ - 2.0);
}

double PressureLaw::h_prime(double rho) const {
  check_density(rho);
  if (gamma_ == 1.0) return std::log(rho);
  return gamma_ / (gamma_ - 1.0) * std::expm1((gamma_ - 1.0) * std::log(rho));
}

double PressureLaw::h(double rho) const {
  check_density(rho);
  if (gamma_ == 1.0) return rho * std::log(rho) - rho + 1.0;
  return (std::pow(rho, gamma_) - gamma_ * rho) / (gamma_ - 1.0) + 1.0;
}

double PressureLaw::h_prime_inverse(double y) const {
  double rho;
  if (gamma_ == 1.0) {
    rho = std::exp(y);
  } else {
    const double base = 1.0 + (gamma_ - 1.0) * y / gamma_;
    if (!(base > 0.0)) {
      std::ostringstream os;
      os << "enthalpy value " << y << " outside the range of h' (vacuum breach)";
      throw DomainError(os.str());
    }
    rho = std::exp(std::log1p((gamma_ - 1.0) * y / gamma_) / (gamma_ - 1.0));
  }
  check_density(rho);
  return rho;
}

double PressureLaw::h_prime_inverse_newton(double y) const {
  double lo = std::log(1e-8);
  double hi = std::log(1e8);
  const auto g = [&](double l) { return h_prime(std::exp(l)) - y; };
  if (!(g(lo) <= 0.0 && g(hi) >= 0.0)) {
    throw DomainError("enthalpy value outside the bracket [h'(1e-8), h'(1e8)]");
  }
  double l = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double val = g(l);
    if (val > 0.0) hi = l; else lo = l;
    const double rho = std::exp(l);
    double next = l - val / dp(rho);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - l) <= 1e-15 * std::max(1.0, std::abs(l))) return std::exp(next);
    l = next;
  }
  return std::exp(l);
}

double PressureLaw::h_bregman(double rho, double rho_bar) const {
  check_density(rho);
  const double x = (rho - rho_bar) / rho_bar;
  if (gamma_ == 1.0) return rho_bar * ((1.0 + x) * std::log1p(x) - x);
  return std::pow(rho_bar, gamma_) * (std::expm1(gamma_ * std::log1p(x)) - gamma_ * x) /
         (gamma_ - 1.0);
}

EntropyPoint to_entropy_point(double rho, const Vec& m, const PressureLaw& law) {
  check_density(rho);
  return {law.h_prime(rho) - m.squaredNorm() / (2.0 * rho * rho), m / rho};
}

std::pair<double, Vec> from_entropy_point(const EntropyPoint& W, const PressureLaw& law) {
  const double rho = law.h_prime_inverse(W.W1 + 0.5 * W.W2.squaredNorm());
  return {rho, rho * W.W2};
}

EntropyState to_entropy_vars(const ScalarField& rho, const VectorField& m, const PressureLaw& law,
                             double rho_bar) {
  const auto& grid = rho.grid();
  const int N = grid.dim();
  if (static_cast<int>(m.size()) != N) throw ConfigError("momentum needs one component per axis");
  std::vector<double> w1(grid.size());
  std::vector<std::vector<double>> w2(N, std::vector<double>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(rho[i] > kVacuumGuard)) {
      std::ostringstream os;
      os << "nonpositive density " << rho[i] << " at " << point_label(grid, i);
      throw DomainError(os.str());
    }
    const auto W = to_entropy_point(rho[i], pointwise_vector(m, i), law);
    w1[i] = W.W1;
    for (int d = 0; d < N; ++d) w2[d][i] = W.W2[d];
  }
  EntropyState out{ScalarField(grid, std::move(w1)), {}, rho_bar, law.h_prime(rho_bar)};
  for (int d = 0; d < N; ++d) out.W2.emplace_back(grid, std::move(w2[d]));
  return out;
}

std::pair<ScalarField, VectorField> from_entropy_vars(const EntropyState& W, const PressureLaw& law) {
  const auto& grid = W.W1.grid();
  const int N = static_cast<int>(W.W2.size());
  std::vector<double> rho(grid.size());
  std::vector<std::vector<double>> m(N, std::vector<double>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec w2 = pointwise_vector(W.W2, i);
    try {
      const auto [r, mi] = from_entropy_point({W.W1[i], w2}, law);
      rho[i] = r;
      for (int d = 0; d < N; ++d) m[d][i] = mi[d];
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " at " + point_label(grid, i));
    }
  }
  VectorField mf;
  for (int d = 0; d < N; ++d) mf.emplace_back(grid, std::move(m[d]));
  return {ScalarField(grid, std::move(rho)), std::move(mf)};
}

MatrixFamily matrices_at_density(double rho, const Vec& W2, const PressureLaw& law, double tau) {
  check_density(rho);
  if (!(tau > 0.0)) throw ConfigError("relaxation time must be positive");
  const Eigen::Index N = W2.size();
  const double pp = law.dp(rho);
  const Mat I = Mat::Identity(N, N);
  const Mat WW = W2 * W2.transpose();

  MatrixFamily f;
  f.rho = rho;
  f.A0_I = Mat::Zero(N + 1, N + 1);
  f.A0_I(0, 0) = 1.0;
  f.A0_I.block(0, 1, 1, N) = W2.transpose();
  f.A0_I.block(1, 0, N, 1) = W2;
  f.A0_I.block(1, 1, N, N) = WW;
  f.A0_II = Mat::Zero(N + 1, N + 1);
  f.A0_II.block(1, 1, N, N) = pp * I;
  f.A0 = f.A0_I + f.A0_II;

  for (Eigen::Index j = 0; j < N; ++j) {
    const double wj = W2[j];
    const Vec e = Vec::Unit(N, j);
    Mat AI = Mat::Zero(N + 1, N + 1);
    AI(0, 0) = wj;
    AI.block(0, 1, 1, N) = wj * W2.transpose();
    AI.block(1, 0, N, 1) = wj * W2;
    AI.block(1, 1, N, N) = wj * WW;
    Mat AII = Mat::Zero(N + 1, N + 1);
    AII.block(0, 1, 1, N) = pp * e.transpose();
    AII.block(1, 0, N, 1) = pp * e;
    AII.block(1, 1, N, N) = wj * pp * I + pp * (W2 * e.transpose() + e * W2.transpose());
    f.A.push_back(AI + AII);
    f.A_I.push_back(std::move(AI));
    f.A_II.push_back(std::move(AII));
  }
  f.H = Vec::Zero(N + 1);
  f.H.tail(N) = -pp * W2 / tau;
  return f;
}

MatrixFamily matrices_at(const EntropyPoint& W, const PressureLaw& law, double tau) {
  const double rho = law.h_prime_inverse(W.W1 + 0.5 * W.W2.squaredNorm());
  return matrices_at_density(rho, W.W2, law, tau);
}

bool is_positive_definite(const Mat& A) {
  Eigen::LLT<Mat> llt(A);
  return llt.info() == Eigen::Success;
}

Mat compensating_matrix(const Vec& xi, const PressureLaw& law, double rho_bar) {
  const double n = xi.norm();
  if (!(n > 0.0)) throw DomainError("compensating matrix needs a nonzero direction");
  const Eigen::Index N = xi.size();
  const Vec u = xi / n;
  Mat K = Mat::Zero(N + 1, N + 1);
  K.block(0, 1, 1, N) = u.transpose() / law.dp(rho_bar);
  K.block(1, 0, N, 1) = -u;
  return K;
}

SkReport sk_identity_check(const Vec& xi, const PressureLaw& law, double rho_bar) {
  const Eigen::Index N = xi.size();
  const auto fam = matrices_at_density(rho_bar, Vec::Zero(N), law, 1.0);
  const Mat K = compensating_matrix(xi, law, rho_bar);
  const Mat KA0 = K * fam.A0;
  Mat sym = Mat::Zero(N + 1, N + 1);
  for (Eigen::Index j = 0; j < N; ++j) sym += xi[j] * fam.A[j];
  const double n = xi.norm();
  Mat rhs = Mat::Zero(N + 1, N + 1);
  rhs(0, 0) = n;
  rhs.block(1, 1, N, N) = -law.dp(rho_bar) * xi * xi.transpose() / n;
  SkReport r;
  r.N = static_cast<int>(N);
  r.gamma = law.gamma();
  r.rho_bar = rho_bar;
  r.xi = xi;
  r.skew_residual = (KA0 + KA0.transpose()).cwiseAbs().maxCoeff();
  r.sk_residual = (K * sym - rhs).cwiseAbs().maxCoeff();
  return r;
}

SkSweep sk_sweep(int N, const PressureLaw& law, double rho_bar, int directions, std::uint64_t seed) {
  if (N < 1) throw ConfigError("dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SkSweep out;
  out.directions = directions;
  for (int k = 0; k < directions; ++k) {
    Vec xi(N);
    do {
      for (int d = 0; d < N; ++d) xi[d] = normal(rng);
    } while (xi.norm() == 0.0);
    xi /= xi.norm();
    const auto r = sk_identity_check(xi, law, rho_bar);
    out.max_skew = std::max(out.max_skew, r.skew_residual);
    out.max_sk = std::max(out.max_sk, r.sk_residual);
  }
  return out;
}

double entropy(double rho, const Vec& m, const PressureLaw& law) {
  check_density(rho);
  return m.squaredNorm() / (2.0 * rho) + law.h(rho);
}

Vec entropy_flux(double rho, const Vec& m, const PressureLaw& law) {
  check_density(rho);
  return (m.squaredNorm() / (2.0 * rho) + rho * law.h_prime(rho)) * m / rho;
}

double relative_entropy(double rho, const Vec& m, const PressureLaw& law, double rho_bar) {
  check_density(rho);
  return m.squaredNorm() / (2.0 * rho) + law.h_bregman(rho, rho_bar);
}

Vec relative_entropy_flux(double rho, const Vec& m, const PressureLaw& law, double rho_bar) {
  return entropy_flux(rho, m, law) - law.h_prime(rho_bar) * m;
}

EntropyFields entropy_and_flux(const ScalarField& rho, const VectorField& m, const PressureLaw& law,
                               double rho_bar) {
  const auto& grid = rho.grid();
  const std::size_t N = m.size();
  std::vector<double> eta(grid.size()), eta_rel(grid.size());
  std::vector<std::vector<double>> q(N, std::vector<double>(grid.size()));
  std::vector<std::vector<double>> q_rel(N, std::vector<double>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(rho[i] > kVacuumGuard)) {
      std::ostringstream os;
      os << "nonpositive density " << rho[i] << " at " << point_label(grid, i);
      throw DomainError(os.str());
    }
    const Vec mi = pointwise_vector(m, i);
    eta[i] = entropy(rho[i], mi, law);
    eta_rel[i] = relative_entropy(rho[i], mi, law, rho_bar);
    const Vec qi = entropy_flux(rho[i], mi, law);
    const Vec qr = qi - law.h_prime(rho_bar) * mi;
    for (std::size_t d = 0; d < N; ++d) {
      q[d][i] = qi[static_cast<Eigen::Index>(d)];
      q_rel[d][i] = qr[static_cast<Eigen::Index>(d)];
    }
  }
  EntropyFields out{ScalarField(grid, std::move(eta)), {}, ScalarField(grid, std::move(eta_rel)), {}};
  for (std::size_t d = 0; d < N; ++d) {
    out.q.emplace_back(grid, std::move(q[d]));
    out.q_rel.emplace_back(grid, std::move(q_rel[d]));
  }
  return out;
}

Vec linearized_remainder(const EntropyPoint& W, const Mat& grad_W, const PressureLaw& law,
                         double rho_bar, double tau) {
  const Eigen::Index N = W.W2.size();
  const auto here = matrices_at(W, law, tau);
  const auto ref = matrices_at_density(rho_bar, Vec::Zero(N), law, tau);
  const Eigen::LDLT<Mat> A0_here(here.A0);
  const Eigen::LDLT<Mat> A0_ref(ref.A0);
  Vec G = Vec::Zero(N + 1);
  for (Eigen::Index j = 0; j < N; ++j) {
    const Mat diff = A0_here.solve(here.A[j]) - A0_ref.solve(ref.A[j]);
    G -= ref.A0 * diff * grad_W.col(j);
  }
  Vec z = Vec::Zero(N + 1);
  z.tail(N) = W.W2;
  const Vec relax = law.dp(here.rho) * A0_here.solve(z) - law.dp(rho_bar) * A0_ref.solve(z);
  G -= ref.A0 * relax / tau;
  return G;
}

VectorField linearized_remainder(const EntropyState& W, const PressureLaw& law, double tau) {
  const auto& grid = W.W1.grid();
  const int N = static_cast<int>(W.W2.size());
  std::vector<VectorField> grads;
  grads.push_back(gradient(W.W1));
  for (const auto& c : W.W2) grads.push_back(gradient(c));
  std::vector<std::vector<double>> out(N + 1, std::vector<double>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Mat gw(N + 1, N);
    for (int a = 0; a <= N; ++a)
      for (int j = 0; j < N; ++j) gw(a, j) = grads[a][j][i];
    const Vec G = linearized_remainder({W.W1[i], pointwise_vector(W.W2, i)}, gw, law, W.rho_bar, tau);
    for (int a = 0; a <= N; ++a) out[a][i] = G[a];
  }
  VectorField result;
  for (auto& v : out) result.emplace_back(grid, std::move(v));
  return result;
}

}  // namespace relaxlab
