#include "relaxlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace relaxlab::fft {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans live for the process lifetime.
class PlanRegistry {
 public:
  static PlanRegistry& instance() {
    static PlanRegistry registry;
    return registry;
  }

  fftw_plan get(int dim, int points, int sign) {
    const auto key = std::make_tuple(dim, points, sign);
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    int n[kMaxDim] = {points, points, points};
    std::size_t total = 1;
    for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(points);
    std::vector<Complex> in(total), out(total);
    fftw_plan plan = fftw_plan_dft(dim, n, reinterpret_cast<fftw_complex*>(in.data()),
                                   reinterpret_cast<fftw_complex*>(out.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanRegistry() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void execute(const PeriodicGrid& grid, int sign, std::vector<Complex>& in,
             std::vector<Complex>& out) {
  fftw_plan plan = PlanRegistry::instance().get(grid.dim(), grid.points(), sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

Spectrum forward(const PeriodicGrid& grid, std::span<const double> values) {
  std::vector<Complex> in(values.begin(), values.end());
  Spectrum out(grid.size());
  execute(grid, FFTW_FORWARD, in, out);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& c : out) c *= scale;
  return out;
}

Spectrum forward(const PeriodicGrid& grid, std::span<const Complex> values) {
  std::vector<Complex> in(values.begin(), values.end());
  Spectrum out(grid.size());
  execute(grid, FFTW_FORWARD, in, out);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& c : out) c *= scale;
  return out;
}

std::vector<Complex> inverse(const PeriodicGrid& grid, std::span<const Complex> coefficients) {
  std::vector<Complex> in(coefficients.begin(), coefficients.end());
  std::vector<Complex> out(grid.size());
  execute(grid, FFTW_BACKWARD, in, out);
  return out;
}

std::vector<double> inverse_real(const PeriodicGrid& grid,
                                 std::span<const Complex> coefficients) {
  const auto full = inverse(grid, coefficients);
  std::vector<double> out(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) out[i] = full[i].real();
  return out;
}

std::string backend_version() { return fftw_version; }

}  // namespace relaxlab::fft
