#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "relaxlab/field.hpp"
#include "relaxlab/trajectory.hpp"

namespace relaxlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Radial support of phi_0; the bump is exp(-1/(1-t^2)) mapped onto (inner, outer).
struct BumpShape {
  double inner = 0.75;
  double outer = 8.0 / 3.0;
};

/// Littlewood-Paley multipliers sampled on the lattice of a grid.
///
/// Phi_q(xi) = phi_0(2^-q xi) / sum_j phi_0(2^-j xi). Blocks q_min..q_max cover
/// every retained nonzero frequency; Psi collects the blocks q < 0 plus the
/// zero mode. Tables vanish outside the retained band.
class DyadicPartition {
 public:
  explicit DyadicPartition(PeriodicGrid grid, BumpShape shape = {});

  const PeriodicGrid& grid() const noexcept { return grid_; }
  const BumpShape& shape() const noexcept { return shape_; }
  int q_min() const noexcept { return q_min_; }
  int q_max() const noexcept { return q_max_; }
  int block_count() const noexcept { return q_max_ - q_min_ + 1; }

  /// Radial bump phi_0 at |xi| = radius.
  double phi0(double radius) const noexcept;
  /// Normalized profile Phi_0 at |xi| = radius.
  double profile(double radius) const noexcept;

  std::span<const double> phi_hat(int q) const;
  std::span<const double> psi_hat() const noexcept { return psi_; }
  /// Multiplier of the inhomogeneous block Delta_q (q >= -1).
  std::span<const double> inhomogeneous_hat(int q) const;

 private:
  PeriodicGrid grid_;
  BumpShape shape_;
  int q_min_ = 0;
  int q_max_ = 0;
  std::vector<std::vector<double>> phi_;
  std::vector<double> psi_;
};

/// Homogeneous block (q in [q_min, q_max]) or inhomogeneous block (q >= -1;
/// q <= -2 gives zero).
ScalarField block(const DyadicPartition& P, const ScalarField& f, int q, bool homogeneous = true);

/// Block indices that carry a norm term.
std::vector<int> block_range(const DyadicPartition& P, bool homogeneous);

/// ||block(f, q)||_{L^p} for p in {2, inf}.
double block_lp_norm(const DyadicPartition& P, const ScalarField& f, int q, double p,
                     bool homogeneous);

double lp_norm(const ScalarField& f, double p);

/// l^r norm of a sequence, r in [1, inf].
double lr_norm(std::span<const double> x, double r);

struct BlockValue {
  int q;
  double value;
};

struct BesovNorm {
  double s = 0.0;
  double p = 2.0;
  double r = 2.0;
  bool homogeneous = false;
  double value = 0.0;
  std::vector<BlockValue> per_block;
  /// L2 energy of the zero mode, which homogeneous norms leave out.
  double omitted_energy = 0.0;
  /// L2 energy outside the retained band, seen by no block.
  double unresolved_energy = 0.0;
};

BesovNorm besov_norm(const DyadicPartition& P, const ScalarField& f, double s, double p, double r,
                     bool homogeneous);
/// Sum of component norms.
double besov_norm(const DyadicPartition& P, const VectorField& f, double s, double p, double r,
                  bool homogeneous);

/// L^theta in time on the snapshot grid: trapezoid for finite theta, max for inf.
double time_norm(std::span<const double> times, std::span<const double> values, double theta);

/// Chemin-Lerner norm of one trajectory component.
BesovNorm chemin_lerner_norm(const DyadicPartition& P, const Trajectory& traj, std::size_t component,
                             double theta, double s, double p, double r, bool homogeneous);
BesovNorm chemin_lerner_norm(const DyadicPartition& P, const std::vector<double>& times,
                             const std::vector<ScalarField>& series, double theta, double s,
                             double p, double r, bool homogeneous);
/// L^theta_T(B^s_{p,r}).
double bochner_norm(const DyadicPartition& P, const std::vector<double>& times,
                    const std::vector<ScalarField>& series, double theta, double s, double p,
                    double r, bool homogeneous);
/// L^theta_T(L^p).
double lebesgue_time_norm(const std::vector<double>& times, const std::vector<ScalarField>& series,
                          double theta, double p);

/// Direct spectral H^s norm (sum (1 + |2 pi xi|^2)^s |c_k|^2 L^N)^(1/2) over retained modes.
double sobolev_norm(const ScalarField& f, double s);

struct PartitionResidual {
  double homogeneous = 0.0;
  double inhomogeneous = 0.0;
  /// Largest |Phi_q(xi) - Phi_0(2^-q xi)| over the table.
  double scaling = 0.0;
};

PartitionResidual partition_residual(const DyadicPartition& P);

enum class SpectralRegion { ball, annulus };

struct BernsteinReport {
  /// sup_alpha ||d^alpha f||_b / (lambda^(k + N(1/a - 1/b)) ||f||_a).
  double upper = 0.0;
  /// sup_alpha ||d^alpha f||_a / (lambda^k ||f||_a); annulus only, else 0.
  double lower = 0.0;
  double leakage = 0.0;
};

/// region radii are multiples of lambda: ball |xi| <= r2 lambda, annulus r1 lambda <= |xi| <= r2 lambda.
BernsteinReport bernstein_ratio(const ScalarField& f, int k, double a, double b, double lambda,
                                SpectralRegion region, double r1, double r2);

struct EmbeddingReport {
  double ratio = 0.0;
  /// True when the ratio must not exceed 1 (s_tilde = s, r_tilde >= r).
  bool asserted = false;
  bool holds = true;
};

EmbeddingReport embedding_check(const DyadicPartition& P, const ScalarField& f, double s,
                                double s_tilde, double r, double r_tilde);

struct SpaceEquivalenceReport {
  double lebesgue = 0.0;
  double homogeneous = 0.0;
  double inhomogeneous = 0.0;
  /// inhomogeneous / (lebesgue + homogeneous).
  double upper = 0.0;
  /// (lebesgue + homogeneous) / inhomogeneous.
  double lower = 0.0;
  bool degenerate = false;
};

SpaceEquivalenceReport space_equivalence_check(const DyadicPartition& P,
                                               const std::vector<double>& times,
                                               const std::vector<ScalarField>& series, double theta,
                                               double s, double p, double r);

struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs / rhs, 0 when rhs vanishes.
  double ratio = 0.0;
};

/// ||fg||_{B^s_{2,r}} against ||f||_inf ||g||_{B^s_{2,r}} + ||g||_inf ||f||_{B^s_{2,r}}.
InequalityReport product_check(const DyadicPartition& P, const ScalarField& f, const ScalarField& g,
                               double s, double r);

/// ||F(f)||_{B^s_{2,r}} against (1 + ||f||_inf)^([s]+1) ||f||_{B^s_{2,r}}; F(0) = 0.
InequalityReport composition_check(const DyadicPartition& P, const ScalarField& f,
                                   const std::function<double(double)>& F, double s, double r);

}  // namespace relaxlab
