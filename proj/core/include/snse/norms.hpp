#pragma once

#include "snse/field.hpp"

namespace snse {

/// Lattice quadrature L^p norm, (sum_x |f(x)|^p / N^d)^{1/p}. For multi-
/// component fields |f(x)| is the pointwise Euclidean magnitude. p >= 1.
double lp_norm(const PhysicalField& f, double p);

/// L^p norm of a spectral field (transforms to physical samples first).
double lp_norm(const SpectralField& F, double p);

/// W^{s,p} norm ||J^s f||_p.
double sobolev_norm(const SpectralField& F, double s, double p);

/// ||f||_2 by Parseval, exact on coefficients.
double l2_norm(const SpectralField& F);

/// ||grad f||_2 by Parseval: (sum 4 pi^2 |k|^2 |f_hat|^2)^{1/2}.
double grad_l2_norm(const SpectralField& F);

/// sum_j integral |grad_fd(|u_j|^{p/2})|^2 dx with centered finite differences
/// on the physical lattice. The composite is not band-limited, so spectral
/// differentiation of its samples would alias.
double grad_abs_pow_l2_sq(const PhysicalField& u, double p);

}  // namespace snse
