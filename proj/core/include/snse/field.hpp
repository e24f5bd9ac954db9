#pragma once

#include <complex>
#include <vector>

#include "snse/grid.hpp"

namespace snse {

using Complex = std::complex<double>;

/// Fourier coefficients u_hat(k) of a D-component field, stored on the full
/// FFT lattice in wrap-around order. Coefficients follow the integral
/// convention u_hat(k) = \int u(x) e^{-2 pi i k.x} dx.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(const Grid& g, int comps)
      : grid(g), comps(comps), data(comps, std::vector<Complex>(g.total())) {}

  Grid grid;
  int comps = 0;
  std::vector<std::vector<Complex>> data;  // data[c][flat]

  Complex& at(int c, std::size_t flat) { return data[c][flat]; }
  const Complex& at(int c, std::size_t flat) const { return data[c][flat]; }

  Complex& mode(int c, const int k[3]) { return data[c][wavenumber_to_flat(k, grid)]; }
  const Complex& mode(int c, const int k[3]) const {
    return data[c][wavenumber_to_flat(k, grid)];
  }

  bool same_shape(const SpectralField& o) const {
    return grid == o.grid && comps == o.comps;
  }

  double mean_magnitude() const;           // max_c |u_hat_c(0)|
  void set_zero_mean();                    // u_hat(0) = 0
  void enforce_hermitian();                // u_hat(-k) = conj u_hat(k)
  double max_abs() const;
  bool finite() const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Real samples on the grid lattice, row-major, data[c][flat].
class PhysicalField {
 public:
  PhysicalField() = default;
  PhysicalField(const Grid& g, int comps)
      : grid(g), comps(comps), data(comps, std::vector<double>(g.total())) {}

  Grid grid;
  int comps = 0;
  std::vector<std::vector<double>> data;

  double& at(int c, std::size_t flat) { return data[c][flat]; }
  const double& at(int c, std::size_t flat) const { return data[c][flat]; }
};

}  // namespace snse
