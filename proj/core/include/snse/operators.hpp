#pragma once

#include "snse/field.hpp"

namespace snse {

/// Rectangular Fourier truncation: keep modes with |k_a| <= n_a on every axis.
SpectralField rect_truncate(const SpectralField& F, const MultiIndex& n);

/// Cubic truncation (all axes bounded by n).
SpectralField square_truncate(const SpectralField& F, int n);

bool support_within(const SpectralField& F, const MultiIndex& n, double tol = 0.0);

/// Bessel potential: multiplier (1 + 4 pi^2 |k|^2)^{s/2}.
SpectralField bessel_potential(const SpectralField& F, double s);

/// Riesz transform along `axis`: multiplier -i k_axis / |k|, k != 0.
/// Requires a mean-zero field.
SpectralField riesz_transform(const SpectralField& F, int axis);

/// Leray projection onto divergence-free mean-zero fields: per-mode matrix
/// delta_{jl} - k_j k_l / |k|^2. Requires comps == dim and mean zero.
SpectralField leray_project(const SpectralField& U);

/// Delta^{-1} div: scalar field with multiplier (-1/(4 pi^2 |k|^2)) sum_l 2 pi i k_l u_hat_l.
SpectralField inv_laplace_div(const SpectralField& U);

/// Spectral partial derivative: multiplier 2 pi i k_axis.
SpectralField derivative(const SpectralField& F, int axis);

/// Max over modes of |sum_j 2 pi i k_j u_hat_j(k)|.
double divergence_linf(const SpectralField& U);

/// L^2 inner product sum_c sum_k a_hat conj(b_hat) (Parseval, real part).
double l2_inner(const SpectralField& a, const SpectralField& b);

/// Exact truncated product S_n(a * b) of two scalar fields band-limited at n.
/// The grid must satisfy points >= 4 max(n) + 2 so the lattice product aliases
/// nothing into the box.
SpectralField dealias_product(const SpectralField& a, const SpectralField& b,
                              const MultiIndex& n);

/// Mean-zero tolerance used by the singular multipliers, relative to field size.
bool is_mean_zero(const SpectralField& F, double rel_tol = 1e-13);

/// Copy modes to a grid of different resolution. Modes outside the common
/// symmetric band min(points)/2 - 1 are dropped.
SpectralField transfer_modes(const SpectralField& F, const Grid& target);

}  // namespace snse
