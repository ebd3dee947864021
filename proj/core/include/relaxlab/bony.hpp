#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "relaxlab/dyadic.hpp"

namespace relaxlab {

/// S_{q-1} f: the mean plus the homogeneous blocks q_min..q-2.
ScalarField low_part(const DyadicPartition& P, const ScalarField& f, int q);

/// T_f g = sum_q S_{q-1} f * block(g, q).
ScalarField paraproduct(const DyadicPartition& P, const ScalarField& f, const ScalarField& g);

/// R(f, g) = sum_{|q - q'| <= 1} block(f, q) block(g, q') + mean(f) mean(g).
/// The mean term completes fg = T_f g + T_g f + R(f, g) on the torus.
ScalarField remainder(const DyadicPartition& P, const ScalarField& f, const ScalarField& g);

struct BonySplit {
  ScalarField Tfg;
  ScalarField Tgf;
  ScalarField Rfg;
  /// ||fg - Tfg - Tgf - Rfg||_2 / ||fg||_2.
  double residual;
};

BonySplit bony_split(const DyadicPartition& P, const ScalarField& f, const ScalarField& g);

/// f * block(g, q) - block(f g, q).
ScalarField commutator(const DyadicPartition& P, const ScalarField& f, const ScalarField& g, int q,
                       bool homogeneous = true);

struct TermDecomposition {
  std::array<ScalarField, 5> K;
  /// ||sum K - commutator||_2 relative to ||f||_inf ||g||_2 (absolute when that vanishes).
  double residual;
};

/// K1 = [T_f, block_q] g summed over |k - q| <= 4, K2 = R(f, block_q g),
/// K3 = -block_q R(f, g), K4 = T_{block_q g} f, K5 = -block_q T_g f.
TermDecomposition term_decomposition(const DyadicPartition& P, const ScalarField& f,
                                     const ScalarField& g, int q);

struct CommutatorReport {
  int q = 0;
  double comm_norm = 0.0;
  /// 2^{-q(s+1)} (||grad f||_inf ||g||_{B^s_{2,r}} + ||g||_inf ||f||_{B^{s+1}_{2,r}}).
  double bound_rhs = 0.0;
  double ratio = 0.0;
  std::array<double, 5> term_norms{};
  double term_residual = 0.0;
};

CommutatorReport commutator_report(const DyadicPartition& P, const ScalarField& f,
                                   const ScalarField& g, int q, double s, double r,
                                   bool homogeneous = true, bool with_terms = true);

struct CommutatorSuiteConfig {
  double s = 1.5;
  double p = 2.0;
  double r = 1.0;
  int pairs = 30;
  std::uint64_t seed = 1;
  bool homogeneous = true;
  bool with_terms = true;
  /// Random fields: coefficient decay exponent and cutoff |k|_inf.
  double decay = 3.0;
  int kmax = 24;
  int threads = 1;
};

struct CommutatorPairResult {
  int pair = 0;
  std::vector<CommutatorReport> reports;
  /// l^r norm over q of the ratio sequence.
  double ratio_lr = 0.0;
  double max_term_residual = 0.0;
};

struct CommutatorSuiteResult {
  CommutatorSuiteConfig config;
  std::vector<CommutatorPairResult> pairs;
  double sup_ratio_lr = 0.0;
  double sup_ratio = 0.0;
  double max_term_residual = 0.0;
};

/// Random pair number i of a suite; f and g are independent smooth fields.
std::pair<ScalarField, ScalarField> suite_pair(const PeriodicGrid& grid,
                                               const CommutatorSuiteConfig& cfg, int i);

CommutatorSuiteResult commutator_estimate_suite(const DyadicPartition& P,
                                                const CommutatorSuiteConfig& cfg);

}  // namespace relaxlab
