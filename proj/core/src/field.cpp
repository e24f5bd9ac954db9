#include "snse/field.hpp"

#include <cmath>
#include <stdexcept>

namespace snse {

double SpectralField::mean_magnitude() const {
  double m = 0.0;
  for (int c = 0; c < comps; ++c) m = std::max(m, std::abs(data[c][0]));
  return m;
}

void SpectralField::set_zero_mean() {
  for (int c = 0; c < comps; ++c) data[c][0] = 0.0;
}

void SpectralField::enforce_hermitian() {
  const int N = grid.points;
  const std::size_t total = grid.total();
  int k[3];
  for (int c = 0; c < comps; ++c) {
    auto& a = data[c];
    for (std::size_t flat = 0; flat < total; ++flat) {
      flat_to_wavenumber(flat, grid, k);
      int kc[3];
      bool self = true;
      for (int ax = 0; ax < grid.dim; ++ax) {
        // -N/2 is its own conjugate partner on an even grid
        kc[ax] = k[ax] == N / 2 ? N / 2 : -k[ax];
        if (kc[ax] != k[ax]) self = false;
      }
      if (self) {
        a[flat] = Complex(a[flat].real(), 0.0);
        continue;
      }
      std::size_t partner = wavenumber_to_flat(kc, grid);
      if (partner < flat) continue;  // each pair handled once
      Complex avg = 0.5 * (a[flat] + std::conj(a[partner]));
      a[flat] = avg;
      a[partner] = std::conj(avg);
    }
  }
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const auto& c : data)
    for (const auto& z : c) m = std::max(m, std::abs(z));
  return m;
}

bool SpectralField::finite() const {
  for (const auto& c : data)
    for (const auto& z : c)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  if (!same_shape(o)) throw std::invalid_argument("SpectralField: shape mismatch");
  for (int c = 0; c < comps; ++c)
    for (std::size_t i = 0; i < data[c].size(); ++i) data[c][i] += o.data[c][i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  if (!same_shape(o)) throw std::invalid_argument("SpectralField: shape mismatch");
  for (int c = 0; c < comps; ++c)
    for (std::size_t i = 0; i < data[c].size(); ++i) data[c][i] -= o.data[c][i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : data)
    for (auto& z : c) z *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

}  // namespace snse
