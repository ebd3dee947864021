#include "relaxlab/bony.hpp"

#include <algorithm>
#include <cmath>

#include "relaxlab/error.hpp"
#include "relaxlab/parallel.hpp"
#include "relaxlab/random_fields.hpp"

namespace relaxlab {

namespace {

std::vector<ScalarField> blocks_of(const DyadicPartition& P, const ScalarField& f) {
  std::vector<ScalarField> out;
  out.reserve(P.block_count());
  for (int q = P.q_min(); q <= P.q_max(); ++q) out.push_back(block(P, f, q));
  return out;
}

ScalarField sum_blocks(const ScalarField& base, const std::vector<ScalarField>& blocks,
                       std::size_t count) {
  Spectrum s(base.spectrum().begin(), base.spectrum().end());
  for (std::size_t j = 0; j < count; ++j) {
    const auto c = blocks[j].spectrum();
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += c[i];
  }
  return ScalarField::from_spectrum(base.grid(), std::move(s));
}

ScalarField accumulate(const PeriodicGrid& grid, const std::vector<ScalarField>& terms) {
  Spectrum s(grid.size(), Complex(0.0, 0.0));
  for (const auto& t : terms) {
    const auto c = t.spectrum();
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += c[i];
  }
  return ScalarField::from_spectrum(grid, std::move(s));
}

double relative(double num, double den) { return den > 0.0 ? num / den : num; }

}  // namespace

ScalarField low_part(const DyadicPartition& P, const ScalarField& f, int q) {
  const auto mean_part = ScalarField::constant(f.grid(), mean(f));
  const int top = std::min(q - 2, P.q_max());
  if (top < P.q_min()) return mean_part;
  std::vector<ScalarField> blocks;
  for (int k = P.q_min(); k <= top; ++k) blocks.push_back(block(P, f, k));
  return sum_blocks(mean_part, blocks, blocks.size());
}

ScalarField paraproduct(const DyadicPartition& P, const ScalarField& f, const ScalarField& g) {
  const auto fb = blocks_of(P, f);
  const auto mean_f = ScalarField::constant(f.grid(), mean(f));
  std::vector<ScalarField> terms;
  for (int q = P.q_min(); q <= P.q_max(); ++q) {
    const std::size_t n = static_cast<std::size_t>(std::max(0, q - 1 - P.q_min()));
    const ScalarField low = sum_blocks(mean_f, fb, n);
    terms.push_back(product(low, block(P, g, q)));
  }
  return accumulate(f.grid(), terms);
}

ScalarField remainder(const DyadicPartition& P, const ScalarField& f, const ScalarField& g) {
  const auto fb = blocks_of(P, f);
  const auto gb = blocks_of(P, g);
  const int n = P.block_count();
  std::vector<ScalarField> terms;
  for (int j = 0; j < n; ++j) {
    for (int k = std::max(0, j - 1); k <= std::min(n - 1, j + 1); ++k) {
      terms.push_back(product(fb[j], gb[k]));
    }
  }
  terms.push_back(ScalarField::constant(f.grid(), mean(f) * mean(g)));
  return accumulate(f.grid(), terms);
}

BonySplit bony_split(const DyadicPartition& P, const ScalarField& f, const ScalarField& g) {
  BonySplit out{paraproduct(P, f, g), paraproduct(P, g, f), remainder(P, f, g), 0.0};
  const ScalarField fg = product(f, g);
  const ScalarField diff = fg - out.Tfg - out.Tgf - out.Rfg;
  out.residual = relative(l2_norm(diff), l2_norm(fg));
  return out;
}

ScalarField commutator(const DyadicPartition& P, const ScalarField& f, const ScalarField& g, int q,
                       bool homogeneous) {
  return product(f, block(P, g, q, homogeneous)) - block(P, product(f, g), q, homogeneous);
}

TermDecomposition term_decomposition(const DyadicPartition& P, const ScalarField& f,
                                     const ScalarField& g, int q) {
  const ScalarField gq = block(P, g, q);
  std::vector<ScalarField> k1;
  for (int k = std::max(P.q_min(), q - 4); k <= std::min(P.q_max(), q + 4); ++k) {
    const ScalarField low = low_part(P, f, k);
    k1.push_back(product(low, block(P, gq, k)));
    k1.push_back(-block(P, product(low, block(P, g, k)), q));
  }
  TermDecomposition out{{accumulate(f.grid(), k1), remainder(P, f, gq),
                         -block(P, remainder(P, f, g), q), paraproduct(P, gq, f),
                         -block(P, paraproduct(P, g, f), q)},
                        0.0};
  const ScalarField comm = commutator(P, f, g, q);
  const ScalarField diff = accumulate(f.grid(), {out.K.begin(), out.K.end()}) - comm;
  out.residual = relative(l2_norm(diff), linf_norm(f) * l2_norm(g));
  return out;
}

CommutatorReport commutator_report(const DyadicPartition& P, const ScalarField& f,
                                   const ScalarField& g, int q, double s, double r,
                                   bool homogeneous, bool with_terms) {
  CommutatorReport rep;
  rep.q = q;
  rep.comm_norm = l2_norm(commutator(P, f, g, q, homogeneous));
  const double g_s = besov_norm(P, g, s, 2.0, r, homogeneous).value;
  const double f_s1 = besov_norm(P, f, s + 1.0, 2.0, r, homogeneous).value;
  rep.bound_rhs =
      std::exp2(-q * (s + 1.0)) * (gradient_linf(f) * g_s + linf_norm(g) * f_s1);
  rep.ratio = rep.bound_rhs > 0.0 ? rep.comm_norm / rep.bound_rhs : 0.0;
  if (with_terms && homogeneous) {
    const auto terms = term_decomposition(P, f, g, q);
    for (std::size_t i = 0; i < 5; ++i) rep.term_norms[i] = l2_norm(terms.K[i]);
    rep.term_residual = terms.residual;
  }
  return rep;
}

std::pair<ScalarField, ScalarField> suite_pair(const PeriodicGrid& grid,
                                               const CommutatorSuiteConfig& cfg, int i) {
  Rng rng(cfg.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(i));
  ScalarField f = random_smooth_field(grid, rng, cfg.decay, cfg.kmax);
  ScalarField g = random_smooth_field(grid, rng, cfg.decay, cfg.kmax);
  return {std::move(f), std::move(g)};
}

CommutatorSuiteResult commutator_estimate_suite(const DyadicPartition& P,
                                                const CommutatorSuiteConfig& cfg) {
  if (!(cfg.s > -1.0)) throw PreconditionError("commutator estimate needs s > -1");
  if (cfg.p != 2.0) throw PreconditionError("commutator suite is implemented for p = 2");
  if (cfg.pairs < 1) throw ConfigError("commutator suite needs at least one pair");
  CommutatorSuiteResult out;
  out.config = cfg;
  out.pairs = parallel_map(static_cast<std::size_t>(cfg.pairs), cfg.threads, [&](std::size_t i) {
    const auto [f, g] = suite_pair(P.grid(), cfg, static_cast<int>(i));
    CommutatorPairResult pr;
    pr.pair = static_cast<int>(i);
    std::vector<double> ratios;
    for (int q : block_range(P, cfg.homogeneous)) {
      pr.reports.push_back(commutator_report(P, f, g, q, cfg.s, cfg.r, cfg.homogeneous,
                                             cfg.with_terms));
      ratios.push_back(pr.reports.back().ratio);
      pr.max_term_residual = std::max(pr.max_term_residual, pr.reports.back().term_residual);
    }
    pr.ratio_lr = lr_norm(ratios, cfg.r);
    return pr;
  });
  for (const auto& pr : out.pairs) {
    out.sup_ratio_lr = std::max(out.sup_ratio_lr, pr.ratio_lr);
    out.max_term_residual = std::max(out.max_term_residual, pr.max_term_residual);
    for (const auto& rep : pr.reports) out.sup_ratio = std::max(out.sup_ratio, rep.ratio);
  }
  return out;
}

}  // namespace relaxlab
