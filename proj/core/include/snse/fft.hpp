#pragma once

#include "snse/field.hpp"

namespace snse {

/// Inverse transform: u(x) = sum_k u_hat(k) e^{2 pi i k.x}, sampled on the lattice.
/// Imaginary parts are discarded; callers keep fields Hermitian.
PhysicalField inverse_transform(const SpectralField& F);

/// Forward transform: u_hat(k) = (1/N^d) sum_x u(x) e^{-2 pi i k.x}.
SpectralField forward_transform(const PhysicalField& f);

}  // namespace snse
