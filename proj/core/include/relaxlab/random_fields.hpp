#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "relaxlab/field.hpp"

namespace relaxlab {

using Rng = std::mt19937_64;

/// cos(2 pi k.x / L + phase) scaled by amplitude.
ScalarField pure_mode(const PeriodicGrid& grid, const Wavevector& k, double amplitude = 1.0,
                      double phase = 0.0);

/// Real field with independent complex gaussian coefficients scaled by
/// weight(flat index); the zero mode is real.
ScalarField random_weighted_field(const PeriodicGrid& grid, Rng& rng,
                                  const std::function<double(std::size_t)>& weight);

/// Smooth mean-free random field: coefficients decay like (1 + |k|)^(-decay)
/// and vanish for |k|_inf > kmax. Normalized to unit L2 norm.
ScalarField random_smooth_field(const PeriodicGrid& grid, Rng& rng, double decay = 3.0,
                                int kmax = 16);

}  // namespace relaxlab
