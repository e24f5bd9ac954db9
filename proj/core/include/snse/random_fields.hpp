#pragma once

#include <random>

#include "snse/field.hpp"

namespace snse {

using Rng = std::mt19937_64;

/// Random real trigonometric polynomial: independent Gaussian coefficients on
/// |k_a| <= kmax, Hermitian-symmetrized, mean zero.
SpectralField random_trig_poly(const Grid& g, int comps, int kmax, Rng& rng);

/// Random mean-zero field with prescribed spectral envelope |u_hat(k)| ~ |k|^{-decay}
/// on 1 <= |k| and |k_a| <= kmax. Slow decays nearly saturate truncation bounds.
SpectralField random_decay_spectrum(const Grid& g, int comps, int kmax,
                                    double decay, Rng& rng);

/// Random divergence-free mean-zero vector field (random poly, Leray-projected).
SpectralField random_divergence_free(const Grid& g, int kmax, Rng& rng);

/// Taylor-Green-type divergence-free initial datum, amplitude `amp`.
/// d=2: (sin cos, -cos sin); d=3 adds the classical third-component pattern.
SpectralField taylor_green(const Grid& g, double amp = 1.0);

}  // namespace snse
