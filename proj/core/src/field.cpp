#include "relaxlab/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "relaxlab/error.hpp"

namespace relaxlab {

namespace {

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw ConfigError("fields live on different grids");
}

Spectrum hermitian_part(const PeriodicGrid& grid, const Spectrum& c) {
  Spectrum out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    out[i] = 0.5 * (c[i] + std::conj(c[grid.negated(i)]));
  }
  return out;
}

}  // namespace

ScalarField::ScalarField(PeriodicGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ConfigError("field size does not match grid");
  }
  spectrum_ = fft::forward(grid_, std::span<const double>(values_));
}

ScalarField::ScalarField(PeriodicGrid grid, std::vector<double> values, Spectrum spectrum)
    : grid_(std::move(grid)), values_(std::move(values)), spectrum_(std::move(spectrum)) {}

ScalarField ScalarField::from_spectrum(PeriodicGrid grid, Spectrum coefficients) {
  if (coefficients.size() != grid.size()) {
    throw ConfigError("spectrum size does not match grid");
  }
  Spectrum herm = hermitian_part(grid, coefficients);
  std::vector<double> values = fft::inverse_real(grid, herm);
  return ScalarField(std::move(grid), std::move(values), std::move(herm));
}

ScalarField ScalarField::constant(PeriodicGrid grid, double value) {
  std::vector<double> values(grid.size(), value);
  Spectrum spec(grid.size(), Complex(0.0, 0.0));
  spec[0] = value;
  return ScalarField(std::move(grid), std::move(values), std::move(spec));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  Spectrum s(a.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.spectrum()[i] + b.spectrum()[i];
  return ScalarField::from_spectrum(a.grid(), std::move(s));
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  Spectrum s(a.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.spectrum()[i] - b.spectrum()[i];
  return ScalarField::from_spectrum(a.grid(), std::move(s));
}

ScalarField operator-(const ScalarField& a) { return -1.0 * a; }

ScalarField operator*(double c, const ScalarField& a) {
  Spectrum s(a.spectrum().begin(), a.spectrum().end());
  for (auto& x : s) x *= c;
  return ScalarField::from_spectrum(a.grid(), std::move(s));
}

ScalarField add_constant(const ScalarField& a, double c) {
  Spectrum s(a.spectrum().begin(), a.spectrum().end());
  s[0] += c;
  return ScalarField::from_spectrum(a.grid(), std::move(s));
}

ScalarField project(const ScalarField& f) {
  const auto& grid = f.grid();
  Spectrum s(f.spectrum().begin(), f.spectrum().end());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!grid.retained(i)) s[i] = 0.0;
  }
  return ScalarField::from_spectrum(grid, std::move(s));
}

ScalarField product(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  const ScalarField pa = project(a);
  const ScalarField pb = project(b);
  std::vector<double> v(pa.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = pa[i] * pb[i];
  return project(ScalarField(a.grid(), std::move(v)));
}

ScalarField apply_multiplier(const ScalarField& f, std::span<const double> multiplier) {
  if (multiplier.size() != f.size()) throw ConfigError("multiplier size does not match grid");
  Spectrum s(f.spectrum().begin(), f.spectrum().end());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] *= multiplier[i];
  return ScalarField::from_spectrum(f.grid(), std::move(s));
}

ScalarField derivative(const ScalarField& f, const Multiindex& alpha) {
  const auto& grid = f.grid();
  const int half = grid.points() / 2;
  Spectrum s(f.spectrum().begin(), f.spectrum().end());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Wavevector k = grid.wavevector(i);
    Complex factor(1.0, 0.0);
    for (int d = 0; d < grid.dim(); ++d) {
      if (alpha[d] == 0) continue;
      if (k[d] == -half && alpha[d] % 2 == 1) {
        factor = 0.0;
        break;
      }
      const Complex ik(0.0, 2.0 * std::numbers::pi * grid.frequency(i, d));
      factor *= std::pow(ik, alpha[d]);
    }
    s[i] *= factor;
  }
  return ScalarField::from_spectrum(grid, std::move(s));
}

ScalarField derivative(const ScalarField& f, int axis) {
  Multiindex alpha{0, 0, 0};
  alpha[axis] = 1;
  return derivative(f, alpha);
}

VectorField gradient(const ScalarField& f) {
  VectorField g;
  g.reserve(f.grid().dim());
  for (int d = 0; d < f.grid().dim(); ++d) g.push_back(derivative(f, d));
  return g;
}

ScalarField divergence(const VectorField& u) {
  if (u.empty()) throw ConfigError("divergence of an empty vector field");
  const auto& grid = u.front().grid();
  if (static_cast<int>(u.size()) != grid.dim()) {
    throw ConfigError("vector field component count must equal the grid dimension");
  }
  const int half = grid.points() / 2;
  Spectrum s(grid.size(), Complex(0.0, 0.0));
  for (int d = 0; d < grid.dim(); ++d) {
    const auto c = u[d].spectrum();
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (grid.wavevector(i)[d] == -half) continue;
      s[i] += Complex(0.0, 2.0 * std::numbers::pi * grid.frequency(i, d)) * c[i];
    }
  }
  return ScalarField::from_spectrum(grid, std::move(s));
}

ScalarField map(const ScalarField& f, const std::function<double(double)>& fn) {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(f[i]);
  return ScalarField(f.grid(), std::move(v));
}

double l2_norm(const ScalarField& f) {
  double sum = 0.0;
  for (const auto& c : f.spectrum()) sum += std::norm(c);
  return std::sqrt(f.grid().volume() * sum);
}

double linf_norm(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double mean(const ScalarField& f) { return f.spectrum()[0].real(); }

double integral(const ScalarField& f) { return f.grid().volume() * mean(f); }

double min_value(const ScalarField& f) {
  return *std::min_element(f.values().begin(), f.values().end());
}

double gradient_linf(const ScalarField& f) {
  const VectorField g = gradient(f);
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double n2 = 0.0;
    for (const auto& c : g) n2 += c[i] * c[i];
    m = std::max(m, std::sqrt(n2));
  }
  return m;
}

double unresolved_l2(const ScalarField& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f.grid().retained(i)) sum += std::norm(f.spectrum()[i]);
  }
  return std::sqrt(f.grid().volume() * sum);
}

std::vector<Multiindex> multiindices(int dim, int order) {
  std::vector<Multiindex> out;
  if (dim == 1) {
    out.push_back({order, 0, 0});
  } else if (dim == 2) {
    for (int a = 0; a <= order; ++a) out.push_back({a, order - a, 0});
  } else {
    for (int a = 0; a <= order; ++a)
      for (int b = 0; b <= order - a; ++b) out.push_back({a, b, order - a - b});
  }
  return out;
}

}  // namespace relaxlab
