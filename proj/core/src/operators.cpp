#include "snse/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "snse/fft.hpp"

namespace snse {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

void require_mean_zero(const SpectralField& F, const char* op) {
  if (!is_mean_zero(F))
    throw std::invalid_argument(std::string(op) + ": field must have zero mean");
}
}  // namespace

bool is_mean_zero(const SpectralField& F, double rel_tol) {
  double scale = F.max_abs();
  return F.mean_magnitude() <= rel_tol * std::max(scale, 1.0);
}

SpectralField rect_truncate(const SpectralField& F, const MultiIndex& n) {
  SpectralField out(F.grid, F.comps);
  const std::size_t total = F.grid.total();
  int k[3];
  for (std::size_t flat = 0; flat < total; ++flat) {
    flat_to_wavenumber(flat, F.grid, k);
    bool keep = true;
    for (int a = 0; a < F.grid.dim; ++a)
      if (std::abs(k[a]) > n[a]) { keep = false; break; }
    if (!keep) continue;
    for (int c = 0; c < F.comps; ++c) out.data[c][flat] = F.data[c][flat];
  }
  return out;
}

SpectralField square_truncate(const SpectralField& F, int n) {
  return rect_truncate(F, cubic_index(n));
}

bool support_within(const SpectralField& F, const MultiIndex& n, double tol) {
  const std::size_t total = F.grid.total();
  int k[3];
  for (std::size_t flat = 0; flat < total; ++flat) {
    flat_to_wavenumber(flat, F.grid, k);
    bool inside = true;
    for (int a = 0; a < F.grid.dim; ++a)
      if (std::abs(k[a]) > n[a]) { inside = false; break; }
    if (inside) continue;
    for (int c = 0; c < F.comps; ++c)
      if (std::abs(F.data[c][flat]) > tol) return false;
  }
  return true;
}

SpectralField bessel_potential(const SpectralField& F, double s) {
  SpectralField out(F.grid, F.comps);
  const std::size_t total = F.grid.total();
  int k[3];
  for (std::size_t flat = 0; flat < total; ++flat) {
    flat_to_wavenumber(flat, F.grid, k);
    double k2 = 0.0;
    for (int a = 0; a < F.grid.dim; ++a) k2 += double(k[a]) * k[a];
    const double mult = std::pow(1.0 + two_pi * two_pi * k2, s / 2.0);
    for (int c = 0; c < F.comps; ++c) out.data[c][flat] = mult * F.data[c][flat];
  }
  return out;
}

SpectralField riesz_transform(const SpectralField& F, int axis) {
  require_mean_zero(F, "riesz_transform");
  if (axis < 0 || axis >= F.grid.dim)
    throw std::invalid_argument("riesz_transform: axis out of range");
  SpectralField out(F.grid, F.comps);
  const std::size_t total = F.grid.total();
  int k[3];
  for (std::size_t flat = 1; flat < total; ++flat) {
    flat_to_wavenumber(flat, F.grid, k);
    double k2 = 0.0;
    for (int a = 0; a < F.grid.dim; ++a) k2 += double(k[a]) * k[a];
    if (k2 == 0.0) continue;
    const Complex mult(0.0, -k[axis] / std::sqrt(k2));
    for (int c = 0; c < F.comps; ++c) out.data[c][flat] = mult * F.data[c][flat];
  }
  out.enforce_hermitian();
  return out;
}

SpectralField leray_project(const SpectralField& U) {
  if (U.comps != U.grid.dim)
    throw std::invalid_argument("leray_project: need one component per axis");
  require_mean_zero(U, "leray_project");
  const int d = U.grid.dim;
  SpectralField out(U.grid, d);
  const std::size_t total = U.grid.total();
  int k[3];
  for (std::size_t flat = 1; flat < total; ++flat) {
    flat_to_wavenumber(flat, U.grid, k);
    double k2 = 0.0;
    for (int a = 0; a < d; ++a) k2 += double(k[a]) * k[a];
    if (k2 == 0.0) continue;
    Complex kdotu = 0.0;
    for (int l = 0; l < d; ++l) kdotu += double(k[l]) * U.data[l][flat];
    for (int j = 0; j < d; ++j)
      out.data[j][flat] = U.data[j][flat] - (double(k[j]) / k2) * kdotu;
  }
  out.enforce_hermitian();
  return out;
}

SpectralField inv_laplace_div(const SpectralField& U) {
  const int d = U.grid.dim;
  if (U.comps != d)
    throw std::invalid_argument("inv_laplace_div: need one component per axis");
  SpectralField out(U.grid, 1);
  const std::size_t total = U.grid.total();
  int k[3];
  for (std::size_t flat = 1; flat < total; ++flat) {
    flat_to_wavenumber(flat, U.grid, k);
    double k2 = 0.0;
    for (int a = 0; a < d; ++a) k2 += double(k[a]) * k[a];
    if (k2 == 0.0) continue;
    Complex div = 0.0;
    for (int l = 0; l < d; ++l)
      div += Complex(0.0, two_pi * k[l]) * U.data[l][flat];
    out.data[0][flat] = -div / (4.0 * std::numbers::pi * std::numbers::pi * k2);
  }
  out.enforce_hermitian();
  return out;
}

SpectralField derivative(const SpectralField& F, int axis) {
  SpectralField out(F.grid, F.comps);
  const std::size_t total = F.grid.total();
  int k[3];
  for (std::size_t flat = 0; flat < total; ++flat) {
    flat_to_wavenumber(flat, F.grid, k);
    const Complex mult(0.0, two_pi * k[axis]);
    for (int c = 0; c < F.comps; ++c) out.data[c][flat] = mult * F.data[c][flat];
  }
  return out;
}

double divergence_linf(const SpectralField& U) {
  const int d = U.grid.dim;
  const std::size_t total = U.grid.total();
  int k[3];
  double worst = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    flat_to_wavenumber(flat, U.grid, k);
    Complex div = 0.0;
    for (int l = 0; l < d; ++l)
      div += Complex(0.0, two_pi * k[l]) * U.data[l][flat];
    worst = std::max(worst, std::abs(div));
  }
  return worst;
}

double l2_inner(const SpectralField& a, const SpectralField& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("l2_inner: shape mismatch");
  double acc = 0.0;
  for (int c = 0; c < a.comps; ++c)
    for (std::size_t i = 0; i < a.data[c].size(); ++i)
      acc += (a.data[c][i] * std::conj(b.data[c][i])).real();
  return acc;
}

SpectralField dealias_product(const SpectralField& a, const SpectralField& b,
                              const MultiIndex& n) {
  if (!(a.grid == b.grid) || a.comps != 1 || b.comps != 1)
    throw std::invalid_argument("dealias_product: scalar fields on a common grid");
  int nmax = 0;
  for (int i = 0; i < a.grid.dim; ++i) nmax = std::max(nmax, n[i]);
  if (a.grid.points < 4 * nmax + 2)
    throw std::invalid_argument("dealias_product: grid too small for exact projection "
                                "(need points >= 4n+2)");
  if (!support_within(a, n) || !support_within(b, n))
    throw std::invalid_argument("dealias_product: inputs must be truncated at n");
  PhysicalField pa = inverse_transform(a);
  PhysicalField pb = inverse_transform(b);
  PhysicalField prod(a.grid, 1);
  for (std::size_t i = 0; i < prod.data[0].size(); ++i)
    prod.data[0][i] = pa.data[0][i] * pb.data[0][i];
  return rect_truncate(forward_transform(prod), n);
}

SpectralField transfer_modes(const SpectralField& F, const Grid& target) {
  if (target.dim != F.grid.dim)
    throw std::invalid_argument("transfer_modes: dimension mismatch");
  SpectralField out(target, F.comps);
  if (target == F.grid) {
    out = F;
    return out;
  }
  const int band = std::min(F.grid.points, target.points) / 2 - 1;
  int k[3] = {0, 0, 0};
  const int d = F.grid.dim;
  for (int a = 0; a < d; ++a) k[a] = -band;
  while (true) {
    for (int c = 0; c < F.comps; ++c) out.mode(c, k) = F.mode(c, k);
    int a = d - 1;
    while (a >= 0) {
      if (++k[a] <= band) break;
      k[a] = -band;
      --a;
    }
    if (a < 0) break;
  }
  return out;
}

}  // namespace snse
