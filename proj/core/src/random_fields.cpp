#include "snse/random_fields.hpp"

#include <cmath>
#include <numbers>

#include "snse/fft.hpp"
#include "snse/operators.hpp"

namespace snse {

namespace {

SpectralField fill_band(const Grid& g, int comps, int kmax, Rng& rng,
                        double (*envelope)(double k2, double param), double param) {
  SpectralField F(g, comps);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t total = g.total();
  int k[3];
  for (int c = 0; c < comps; ++c) {
    for (std::size_t flat = 1; flat < total; ++flat) {
      flat_to_wavenumber(flat, g, k);
      bool inside = true;
      double k2 = 0.0;
      for (int a = 0; a < g.dim; ++a) {
        if (std::abs(k[a]) > kmax) { inside = false; break; }
        k2 += double(k[a]) * k[a];
      }
      if (!inside || k2 == 0.0) continue;
      const double env = envelope(k2, param);
      F.data[c][flat] = Complex(gauss(rng), gauss(rng)) * env;
    }
  }
  F.enforce_hermitian();
  F.set_zero_mean();
  return F;
}

double flat_envelope(double, double) { return 1.0; }
double power_envelope(double k2, double decay) {
  return std::pow(k2, -decay / 2.0);
}

}  // namespace

SpectralField random_trig_poly(const Grid& g, int comps, int kmax, Rng& rng) {
  return fill_band(g, comps, kmax, rng, flat_envelope, 0.0);
}

SpectralField random_decay_spectrum(const Grid& g, int comps, int kmax,
                                    double decay, Rng& rng) {
  return fill_band(g, comps, kmax, rng, power_envelope, decay);
}

SpectralField random_divergence_free(const Grid& g, int kmax, Rng& rng) {
  SpectralField F = random_trig_poly(g, g.dim, kmax, rng);
  return leray_project(F);
}

SpectralField taylor_green(const Grid& g, double amp) {
  const int N = g.points;
  PhysicalField f(g, g.dim);
  const double tp = 2.0 * std::numbers::pi;
  if (g.dim == 1) {
    // no nontrivial divergence-free field in 1-D; return a single mode
    for (int i = 0; i < N; ++i) f.data[0][i] = amp * std::sin(tp * i / N);
  } else if (g.dim == 2) {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        const double x = double(i) / N, y = double(j) / N;
        const std::size_t flat = std::size_t(i) * N + j;
        f.data[0][flat] = amp * std::sin(tp * x) * std::cos(tp * y);
        f.data[1][flat] = -amp * std::cos(tp * x) * std::sin(tp * y);
      }
  } else {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int l = 0; l < N; ++l) {
          const double x = double(i) / N, y = double(j) / N, z = double(l) / N;
          const std::size_t flat = (std::size_t(i) * N + j) * N + l;
          f.data[0][flat] = amp * std::sin(tp * x) * std::cos(tp * y) * std::cos(tp * z);
          f.data[1][flat] = -amp * std::cos(tp * x) * std::sin(tp * y) * std::cos(tp * z);
          f.data[2][flat] = 0.0;
        }
  }
  SpectralField F = forward_transform(f);
  F.enforce_hermitian();
  F.set_zero_mean();
  return F;
}

}  // namespace snse
