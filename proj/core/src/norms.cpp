#include "snse/norms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "snse/fft.hpp"
#include "snse/operators.hpp"

namespace snse {

double lp_norm(const PhysicalField& f, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  const std::size_t total = f.grid.total();
  double acc = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    double mag2 = 0.0;
    for (int c = 0; c < f.comps; ++c) mag2 += f.data[c][i] * f.data[c][i];
    acc += std::pow(mag2, p / 2.0);
  }
  return std::pow(acc / total, 1.0 / p);
}

double lp_norm(const SpectralField& F, double p) {
  return lp_norm(inverse_transform(F), p);
}

double sobolev_norm(const SpectralField& F, double s, double p) {
  return lp_norm(bessel_potential(F, s), p);
}

double l2_norm(const SpectralField& F) {
  double acc = 0.0;
  for (const auto& c : F.data)
    for (const auto& z : c) acc += std::norm(z);
  return std::sqrt(acc);
}

double grad_l2_norm(const SpectralField& F) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const std::size_t total = F.grid.total();
  int k[3];
  double acc = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    flat_to_wavenumber(flat, F.grid, k);
    double k2 = 0.0;
    for (int a = 0; a < F.grid.dim; ++a) k2 += double(k[a]) * k[a];
    for (int c = 0; c < F.comps; ++c)
      acc += two_pi * two_pi * k2 * std::norm(F.data[c][flat]);
  }
  return std::sqrt(acc);
}

double grad_abs_pow_l2_sq(const PhysicalField& u, double p) {
  const Grid& g = u.grid;
  const int N = g.points;
  const std::size_t total = g.total();
  const double inv2h = 0.5 * N;  // 1/(2h), h = 1/N

  // strides for +-1 shifts per axis in row-major layout
  std::size_t stride[3] = {1, 1, 1};
  for (int a = g.dim - 2; a >= 0; --a)
    stride[a] = stride[a + 1] * static_cast<std::size_t>(N);

  std::vector<double> comp(total);
  std::vector<int> idx(3);
  double acc = 0.0;
  for (int c = 0; c < u.comps; ++c) {
    const auto& src = u.data[c];
    for (std::size_t i = 0; i < total; ++i)
      comp[i] = std::pow(std::abs(src[i]), p / 2.0);
    // centered differences with periodic wrap, axis by axis
    for (int a = 0; a < g.dim; ++a) {
      // decompose index along axis a on the fly
      for (std::size_t i = 0; i < total; ++i) {
        const int ia = static_cast<int>((i / stride[a]) % N);
        const std::size_t fwd =
            ia + 1 == N ? i - stride[a] * (N - 1) : i + stride[a];
        const std::size_t bwd = ia == 0 ? i + stride[a] * (N - 1) : i - stride[a];
        const double d = (comp[fwd] - comp[bwd]) * inv2h;
        acc += d * d;
      }
    }
  }
  return acc / static_cast<double>(total);
}

}  // namespace snse
