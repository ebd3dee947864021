#include "relaxlab/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "relaxlab/error.hpp"

namespace relaxlab {

namespace {

void check_p(double p) {
  if (p != 2.0 && p != kInf) throw PreconditionError("integrability exponent must be 2 or inf");
}

void check_r(double r) {
  if (!(r >= 1.0)) throw PreconditionError("summation exponent must lie in [1, inf]");
}

double spectral_l2(const PeriodicGrid& grid, std::span<const Complex> c,
                   std::span<const double> m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (m[i] != 0.0) sum += m[i] * m[i] * std::norm(c[i]);
  }
  return std::sqrt(grid.volume() * sum);
}

}  // namespace

DyadicPartition::DyadicPartition(PeriodicGrid grid, BumpShape shape)
    : grid_(std::move(grid)), shape_(shape) {
  if (!(shape_.inner > 0.0) || !(shape_.outer > 2.0 * shape_.inner)) {
    throw ConfigError("bump support must satisfy 0 < inner and outer > 2 inner");
  }
  const double xi_lo = grid_.frequency_min();
  const double xi_hi = grid_.retained_frequency_max();

  q_min_ = static_cast<int>(std::floor(std::log2(xi_lo / shape_.outer)));
  while (!(phi0(std::ldexp(xi_lo, -q_min_)) > 0.0)) ++q_min_;
  q_max_ = static_cast<int>(std::ceil(std::log2(xi_hi / shape_.inner)));
  while (!(std::ldexp(shape_.inner, q_max_) < xi_hi)) --q_max_;

  if (q_max_ < 1 || q_max_ - q_min_ + 1 < 3) {
    throw ConfigError("grid too coarse for a dyadic decomposition: M=" +
                      std::to_string(grid_.points()) + ", L=" + std::to_string(grid_.period()) +
                      " resolves blocks " + std::to_string(q_min_) + ".." +
                      std::to_string(q_max_));
  }

  const int q_lo = std::min(q_min_, 0);
  phi_.assign(q_max_ - q_lo + 1, std::vector<double>(grid_.size(), 0.0));
  psi_.assign(grid_.size(), 0.0);
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!grid_.retained(i)) continue;
    const double xi = grid_.frequency_norm(i);
    if (xi == 0.0) {
      psi_[i] = 1.0;
      continue;
    }
    for (int q = q_min_; q <= q_max_; ++q) {
      const double v = profile(std::ldexp(xi, -q));
      phi_[q - q_lo][i] = v;
      if (q < 0) psi_[i] += v;
    }
  }
}

double DyadicPartition::phi0(double radius) const noexcept {
  if (!(radius > shape_.inner && radius < shape_.outer)) return 0.0;
  const double t = (2.0 * radius - shape_.inner - shape_.outer) / (shape_.outer - shape_.inner);
  const double d = 1.0 - t * t;
  if (d <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / d);
}

double DyadicPartition::profile(double radius) const noexcept {
  const double num = phi0(radius);
  if (num == 0.0) return 0.0;
  const int reach = static_cast<int>(std::ceil(std::log2(shape_.outer / shape_.inner)));
  double den = 0.0;
  for (int j = -reach; j <= reach; ++j) den += phi0(std::ldexp(radius, -j));
  return num / den;
}

std::span<const double> DyadicPartition::phi_hat(int q) const {
  if (q < q_min_ || q > q_max_) {
    throw RangeError("block " + std::to_string(q) + " outside representable range [" +
                     std::to_string(q_min_) + ", " + std::to_string(q_max_) + "]");
  }
  return phi_[q - std::min(q_min_, 0)];
}

std::span<const double> DyadicPartition::inhomogeneous_hat(int q) const {
  if (q == -1) return psi_;
  if (q < -1 || q > q_max_) {
    throw RangeError("inhomogeneous block " + std::to_string(q) + " outside [-1, " +
                     std::to_string(q_max_) + "]");
  }
  return phi_[q - std::min(q_min_, 0)];
}

ScalarField block(const DyadicPartition& P, const ScalarField& f, int q, bool homogeneous) {
  if (!(f.grid() == P.grid())) throw ConfigError("partition built for a different grid");
  if (homogeneous) return apply_multiplier(f, P.phi_hat(q));
  if (q <= -2) return ScalarField::zero(f.grid());
  return apply_multiplier(f, P.inhomogeneous_hat(q));
}

std::vector<int> block_range(const DyadicPartition& P, bool homogeneous) {
  std::vector<int> qs;
  for (int q = homogeneous ? P.q_min() : -1; q <= P.q_max(); ++q) qs.push_back(q);
  return qs;
}

double lp_norm(const ScalarField& f, double p) {
  check_p(p);
  return p == 2.0 ? l2_norm(f) : linf_norm(f);
}

double block_lp_norm(const DyadicPartition& P, const ScalarField& f, int q, double p,
                     bool homogeneous) {
  check_p(p);
  if (!homogeneous && q <= -2) return 0.0;
  if (p == 2.0) {
    const auto m = homogeneous ? P.phi_hat(q) : P.inhomogeneous_hat(q);
    return spectral_l2(f.grid(), f.spectrum(), m);
  }
  return linf_norm(block(P, f, q, homogeneous));
}

double lr_norm(std::span<const double> x, double r) {
  check_r(r);
  double big = 0.0;
  for (double v : x) big = std::max(big, std::abs(v));
  if (r == kInf || big == 0.0) return big;
  double sum = 0.0;
  for (double v : x) sum += std::pow(std::abs(v) / big, r);
  return big * std::pow(sum, 1.0 / r);
}

BesovNorm besov_norm(const DyadicPartition& P, const ScalarField& f, double s, double p, double r,
                     bool homogeneous) {
  check_p(p);
  check_r(r);
  BesovNorm out{s, p, r, homogeneous, 0.0, {}, 0.0, unresolved_l2(f)};
  std::vector<double> vals;
  for (int q : block_range(P, homogeneous)) {
    const double v = std::exp2(q * s) * block_lp_norm(P, f, q, p, homogeneous);
    out.per_block.push_back({q, v});
    vals.push_back(v);
  }
  out.value = lr_norm(vals, r);
  if (homogeneous) out.omitted_energy = std::sqrt(f.grid().volume()) * std::abs(f.spectrum()[0]);
  return out;
}

double besov_norm(const DyadicPartition& P, const VectorField& f, double s, double p, double r,
                  bool homogeneous) {
  double sum = 0.0;
  for (const auto& c : f) sum += besov_norm(P, c, s, p, r, homogeneous).value;
  return sum;
}

double time_norm(std::span<const double> times, std::span<const double> values, double theta) {
  if (times.size() != values.size() || times.empty()) {
    throw ConfigError("time norm needs matching, nonempty samples");
  }
  if (!(theta >= 1.0)) throw PreconditionError("time exponent must lie in [1, inf]");
  if (theta == kInf) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  if (times.size() < 2) throw ConfigError("a finite time exponent needs at least two snapshots");
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    sum += 0.5 * (times[k + 1] - times[k]) *
           (std::pow(std::abs(values[k]), theta) + std::pow(std::abs(values[k + 1]), theta));
  }
  return std::pow(sum, 1.0 / theta);
}

BesovNorm chemin_lerner_norm(const DyadicPartition& P, const std::vector<double>& times,
                             const std::vector<ScalarField>& series, double theta, double s,
                             double p, double r, bool homogeneous) {
  check_p(p);
  check_r(r);
  if (series.size() != times.size()) throw ConfigError("times and snapshots differ in length");
  if (theta != kInf && series.size() < 2) {
    throw ConfigError("a finite time exponent needs at least two snapshots");
  }
  BesovNorm out{s, p, r, homogeneous, 0.0, {}, 0.0, 0.0};
  const auto qs = block_range(P, homogeneous);
  std::vector<std::vector<double>> table(qs.size(), std::vector<double>(series.size()));
  for (std::size_t k = 0; k < series.size(); ++k) {
    for (std::size_t j = 0; j < qs.size(); ++j) {
      table[j][k] = block_lp_norm(P, series[k], qs[j], p, homogeneous);
    }
    out.unresolved_energy = std::max(out.unresolved_energy, unresolved_l2(series[k]));
    if (homogeneous) {
      out.omitted_energy =
          std::max(out.omitted_energy,
                   std::sqrt(P.grid().volume()) * std::abs(series[k].spectrum()[0]));
    }
  }
  std::vector<double> vals;
  for (std::size_t j = 0; j < qs.size(); ++j) {
    const double v = std::exp2(qs[j] * s) * time_norm(times, table[j], theta);
    out.per_block.push_back({qs[j], v});
    vals.push_back(v);
  }
  out.value = lr_norm(vals, r);
  return out;
}

BesovNorm chemin_lerner_norm(const DyadicPartition& P, const Trajectory& traj, std::size_t component,
                             double theta, double s, double p, double r, bool homogeneous) {
  return chemin_lerner_norm(P, traj.times(), traj.component(component), theta, s, p, r,
                            homogeneous);
}

double bochner_norm(const DyadicPartition& P, const std::vector<double>& times,
                    const std::vector<ScalarField>& series, double theta, double s, double p,
                    double r, bool homogeneous) {
  std::vector<double> v;
  v.reserve(series.size());
  for (const auto& f : series) v.push_back(besov_norm(P, f, s, p, r, homogeneous).value);
  return time_norm(times, v, theta);
}

double lebesgue_time_norm(const std::vector<double>& times, const std::vector<ScalarField>& series,
                          double theta, double p) {
  std::vector<double> v;
  v.reserve(series.size());
  for (const auto& f : series) v.push_back(lp_norm(f, p));
  return time_norm(times, v, theta);
}

double sobolev_norm(const ScalarField& f, double s) {
  const auto& grid = f.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!grid.retained(i)) continue;
    const double w = 2.0 * std::numbers::pi * grid.frequency_norm(i);
    sum += std::pow(1.0 + w * w, s) * std::norm(f.spectrum()[i]);
  }
  return std::sqrt(grid.volume() * sum);
}

PartitionResidual partition_residual(const DyadicPartition& P) {
  const auto& grid = P.grid();
  PartitionResidual out;
  std::vector<std::span<const double>> tabs;
  for (int q = P.q_min(); q <= P.q_max(); ++q) tabs.push_back(P.phi_hat(q));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!grid.retained(i)) continue;
    const double xi = grid.frequency_norm(i);
    double hom = 0.0;
    double inh = P.psi_hat()[i];
    for (int q = P.q_min(); q <= P.q_max(); ++q) {
      const double v = tabs[q - P.q_min()][i];
      hom += v;
      if (q >= 0) inh += v;
      out.scaling = std::max(out.scaling, std::abs(v - (xi == 0.0 ? 0.0 : P.profile(std::ldexp(xi, -q)))));
    }
    if (xi != 0.0) out.homogeneous = std::max(out.homogeneous, std::abs(hom - 1.0));
    out.inhomogeneous = std::max(out.inhomogeneous, std::abs(inh - 1.0));
  }
  return out;
}

BernsteinReport bernstein_ratio(const ScalarField& f, int k, double a, double b, double lambda,
                                SpectralRegion region, double r1, double r2) {
  check_p(a);
  check_p(b);
  if (a > b) throw PreconditionError("Bernstein exponents need a <= b");
  if (k < 0 || !(lambda > 0.0)) throw PreconditionError("Bernstein ratio needs k >= 0, lambda > 0");
  const auto& grid = f.grid();
  const double lo = region == SpectralRegion::annulus ? r1 * lambda : 0.0;
  const double hi = r2 * lambda;
  const double slack = 1e-12 * hi;
  double total = 0.0;
  double outside = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double e = std::norm(f.spectrum()[i]);
    total += e;
    const double xi = grid.frequency_norm(i);
    if (xi < lo - slack || xi > hi + slack) outside += e;
  }
  BernsteinReport out;
  out.leakage = total > 0.0 ? outside / total : 0.0;
  if (out.leakage > 1e-10) {
    throw ValidationError("field leaks " + std::to_string(out.leakage) +
                          " of its energy outside the declared spectral region");
  }
  const double fa = lp_norm(f, a);
  if (fa == 0.0) return out;
  const double inv_b = b == kInf ? 0.0 : 1.0 / b;
  const double inv_a = a == kInf ? 0.0 : 1.0 / a;
  double sup_b = 0.0;
  double sup_a = 0.0;
  for (const auto& alpha : multiindices(grid.dim(), k)) {
    const ScalarField d = k == 0 ? f : derivative(f, alpha);
    sup_b = std::max(sup_b, lp_norm(d, b));
    if (region == SpectralRegion::annulus) sup_a = std::max(sup_a, lp_norm(d, a));
  }
  out.upper = sup_b / (std::pow(lambda, k + grid.dim() * (inv_a - inv_b)) * fa);
  if (region == SpectralRegion::annulus) out.lower = sup_a / (std::pow(lambda, k) * fa);
  return out;
}

EmbeddingReport embedding_check(const DyadicPartition& P, const ScalarField& f, double s,
                                double s_tilde, double r, double r_tilde) {
  if (s_tilde > s || r > r_tilde) {
    throw PreconditionError("embedding needs s_tilde <= s and r <= r_tilde");
  }
  const double num = besov_norm(P, f, s_tilde, 2.0, r_tilde, false).value;
  const double den = besov_norm(P, f, s, 2.0, r, false).value;
  EmbeddingReport out;
  out.ratio = den > 0.0 ? num / den : 0.0;
  out.asserted = s_tilde == s;
  out.holds = !out.asserted || out.ratio <= 1.0 + 1e-12;
  return out;
}

SpaceEquivalenceReport space_equivalence_check(const DyadicPartition& P,
                                               const std::vector<double>& times,
                                               const std::vector<ScalarField>& series, double theta,
                                               double s, double p, double r) {
  if (theta < r) throw PreconditionError("space equivalence needs theta >= r");
  if (!(s > 0.0)) throw PreconditionError("space equivalence needs s > 0");
  SpaceEquivalenceReport out;
  out.lebesgue = lebesgue_time_norm(times, series, theta, p);
  out.homogeneous = chemin_lerner_norm(P, times, series, theta, s, p, r, true).value;
  out.inhomogeneous = chemin_lerner_norm(P, times, series, theta, s, p, r, false).value;
  const double side = out.lebesgue + out.homogeneous;
  if (side == 0.0 || out.inhomogeneous == 0.0) {
    out.degenerate = true;
    return out;
  }
  out.upper = out.inhomogeneous / side;
  out.lower = side / out.inhomogeneous;
  return out;
}

InequalityReport product_check(const DyadicPartition& P, const ScalarField& f, const ScalarField& g,
                               double s, double r) {
  InequalityReport out;
  out.lhs = besov_norm(P, product(f, g), s, 2.0, r, false).value;
  out.rhs = linf_norm(f) * besov_norm(P, g, s, 2.0, r, false).value +
            linf_norm(g) * besov_norm(P, f, s, 2.0, r, false).value;
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
  return out;
}

InequalityReport composition_check(const DyadicPartition& P, const ScalarField& f,
                                   const std::function<double(double)>& F, double s, double r) {
  if (F(0.0) != 0.0) throw PreconditionError("composition needs F(0) = 0");
  InequalityReport out;
  out.lhs = besov_norm(P, project(map(f, F)), s, 2.0, r, false).value;
  out.rhs = std::pow(1.0 + linf_norm(f), std::floor(s) + 1.0) *
            besov_norm(P, f, s, 2.0, r, false).value;
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
  return out;
}

}  // namespace relaxlab
