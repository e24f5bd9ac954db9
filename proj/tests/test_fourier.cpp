#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <vector>

#include "snse/fft.hpp"
#include "snse/norms.hpp"
#include "snse/operators.hpp"
#include "snse/random_fields.hpp"
#include "snse/snapshot.hpp"

using namespace snse;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// quadratic-time DFT, the oracle for the FFT-backed transforms
SpectralField naive_forward(const PhysicalField& f) {
  const Grid& g = f.grid;
  const std::size_t total = g.total();
  SpectralField out(g, f.comps);
  int k[3], x[3];
  for (std::size_t kf = 0; kf < total; ++kf) {
    flat_to_wavenumber(kf, g, k);
    for (int c = 0; c < f.comps; ++c) {
      Complex acc = 0.0;
      for (std::size_t xf = 0; xf < total; ++xf) {
        std::size_t rem = xf;
        for (int a = g.dim - 1; a >= 0; --a) {
          x[a] = static_cast<int>(rem % g.points);
          rem /= g.points;
        }
        double phase = 0.0;
        for (int a = 0; a < g.dim; ++a)
          phase += double(k[a]) * x[a] / g.points;
        acc += f.data[c][xf] * std::exp(Complex(0.0, -two_pi * phase));
      }
      out.data[c][kf] = acc / double(total);
    }
  }
  return out;
}

PhysicalField naive_inverse(const SpectralField& F) {
  const Grid& g = F.grid;
  const std::size_t total = g.total();
  PhysicalField out(g, F.comps);
  int k[3], x[3];
  for (std::size_t xf = 0; xf < total; ++xf) {
    std::size_t rem = xf;
    for (int a = g.dim - 1; a >= 0; --a) {
      x[a] = static_cast<int>(rem % g.points);
      rem /= g.points;
    }
    for (int c = 0; c < F.comps; ++c) {
      Complex acc = 0.0;
      for (std::size_t kf = 0; kf < total; ++kf) {
        flat_to_wavenumber(kf, g, k);
        double phase = 0.0;
        for (int a = 0; a < g.dim; ++a)
          phase += double(k[a]) * x[a] / g.points;
        acc += F.data[c][kf] * std::exp(Complex(0.0, two_pi * phase));
      }
      out.data[c][xf] = acc.real();
    }
  }
  return out;
}

double max_mode_diff(const SpectralField& a, const SpectralField& b) {
  REQUIRE(a.same_shape(b));
  double worst = 0.0;
  for (int c = 0; c < a.comps; ++c)
    for (std::size_t i = 0; i < a.data[c].size(); ++i)
      worst = std::max(worst, std::abs(a.data[c][i] - b.data[c][i]));
  return worst;
}

}  // namespace

TEST_CASE("forward transform matches the quadratic DFT oracle") {
  Rng rng(101);
  for (int dim : {1, 2, 3}) {
    const Grid g(dim, 8);
    PhysicalField f(g, 2);
    std::normal_distribution<double> gauss;
    for (auto& comp : f.data)
      for (auto& v : comp) v = gauss(rng);
    const SpectralField fast = forward_transform(f);
    const SpectralField slow = naive_forward(f);
    CHECK(max_mode_diff(fast, slow) < 1e-12);
  }
}

TEST_CASE("inverse transform matches the synthesis oracle and round-trips") {
  Rng rng(102);
  for (int dim : {1, 2, 3}) {
    const Grid g(dim, 8);
    const SpectralField F = random_trig_poly(g, 1, 3, rng);
    const PhysicalField fast = inverse_transform(F);
    const PhysicalField slow = naive_inverse(F);
    for (std::size_t i = 0; i < g.total(); ++i)
      CHECK(fast.data[0][i] == doctest::Approx(slow.data[0][i]).epsilon(1e-12));
    CHECK(max_mode_diff(forward_transform(fast), F) < 1e-12);
  }
}

TEST_CASE("rectangular truncation equals the restricted partial sum") {
  Rng rng(103);
  const Grid g(2, 16);
  const SpectralField F = random_trig_poly(g, 1, 7, rng);
  const MultiIndex n{3, 5, 0};
  const SpectralField T = rect_truncate(F, n);
  // oracle: synthesize only the kept modes by hand
  SpectralField kept(g, 1);
  int k[3];
  for (std::size_t flat = 0; flat < g.total(); ++flat) {
    flat_to_wavenumber(flat, g, k);
    if (std::abs(k[0]) <= n[0] && std::abs(k[1]) <= n[1])
      kept.data[0][flat] = F.data[0][flat];
  }
  CHECK(max_mode_diff(T, kept) == 0.0);
  CHECK(support_within(T, n));
  CHECK_FALSE(support_within(F, n));
}

TEST_CASE("nested truncations compose to the componentwise minimum") {
  Rng rng(104);
  const Grid g(2, 32);
  const SpectralField F = random_trig_poly(g, 2, 10, rng);
  const MultiIndex a{3, 9, 0}, b{7, 4, 0};
  const SpectralField lhs = rect_truncate(rect_truncate(F, a), b);
  const SpectralField rhs = rect_truncate(F, componentwise_min(a, b));
  CHECK(max_mode_diff(lhs, rhs) == 0.0);
}

TEST_CASE("truncation is an L2 contraction and converges on the grid") {
  Rng rng(105);
  const Grid g(1, 256);
  const SpectralField F = random_decay_spectrum(g, 1, 100, 1.5, rng);
  double prev = 1e300;
  for (int n : {4, 8, 16, 32, 64}) {
    const SpectralField T = square_truncate(F, n);
    CHECK(l2_norm(T) <= l2_norm(F) * (1.0 + 1e-14));
    const double rem = l2_norm(F - T);
    CHECK(rem < prev);
    prev = rem;
  }
  CHECK(l2_norm(F - square_truncate(F, 100)) < 1e-13);
}

TEST_CASE("bessel potential applies the exact single-mode multiplier") {
  const Grid g(3, 8);
  SpectralField F(g, 1);
  const int k[3] = {2, -1, 3};
  F.mode(0, k) = Complex(0.5, -0.25);
  F.enforce_hermitian();
  const double k2 = 4.0 + 1.0 + 9.0;
  for (double s : {-2.0, -1.0, 0.0, 1.0, 2.5}) {
    const SpectralField J = bessel_potential(F, s);
    const double mult = std::pow(1.0 + two_pi * two_pi * k2, s / 2.0);
    CHECK(std::abs(J.mode(0, k) - mult * F.mode(0, k)) < 1e-12);
  }
  // J^s then J^{-s} is the identity
  const SpectralField round = bessel_potential(bessel_potential(F, 1.7), -1.7);
  CHECK(max_mode_diff(round, F) < 1e-12);
}

TEST_CASE("sobolev norm at s=0 is the L^p norm and is exact on one mode") {
  Rng rng(106);
  const Grid g(2, 16);
  const SpectralField F = random_trig_poly(g, 1, 4, rng);
  CHECK(sobolev_norm(F, 0.0, 4.0) == doctest::Approx(lp_norm(F, 4.0)).epsilon(1e-12));
  // single mode cos(2 pi x): ||J^s f||_2 = (1 + 4 pi^2)^{s/2} / sqrt(2)
  SpectralField one(g, 1);
  const int k[3] = {1, 0, 0}, km[3] = {-1, 0, 0};
  one.mode(0, k) = 0.5;
  one.mode(0, km) = 0.5;
  const double expected = std::pow(1.0 + two_pi * two_pi, 0.75) / std::sqrt(2.0);
  CHECK(sobolev_norm(one, 1.5, 2.0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("riesz transforms: squares sum to minus the identity") {
  Rng rng(107);
  for (int dim : {1, 2, 3}) {
    const Grid g(dim, 12);
    const SpectralField F = random_trig_poly(g, 1, 4, rng);
    SpectralField acc(g, 1);
    for (int a = 0; a < dim; ++a)
      acc += riesz_transform(riesz_transform(F, a), a);
    acc += F;  // should vanish
    CHECK(acc.max_abs() < 1e-12);
  }
}

TEST_CASE("riesz transform rejects fields with nonzero mean") {
  const Grid g(2, 8);
  SpectralField F(g, 1);
  F.data[0][0] = 1.0;  // pure constant
  CHECK_THROWS_AS((void)riesz_transform(F, 0), std::invalid_argument);
}

TEST_CASE("leray projection annihilates gradients") {
  Rng rng(108);
  for (int dim : {2, 3}) {
    const Grid g(dim, 12);
    const SpectralField f = random_trig_poly(g, 1, 4, rng);
    SpectralField gradf(g, dim);
    for (int a = 0; a < dim; ++a) gradf.data[a] = derivative(f, a).data[0];
    const SpectralField proj = leray_project(gradf);
    CHECK(proj.max_abs() < 1e-12 * std::max(1.0, gradf.max_abs()));
  }
}

TEST_CASE("leray projection is idempotent and output is divergence-free") {
  Rng rng(109);
  const Grid g(3, 12);
  const SpectralField U = random_trig_poly(g, 3, 4, rng);
  const SpectralField P = leray_project(U);
  CHECK(divergence_linf(P) < 1e-11 * std::max(1.0, U.max_abs()));
  CHECK(max_mode_diff(leray_project(P), P) < 1e-12);
}

TEST_CASE("leray projection on a single mode matches the hand formula") {
  const Grid g(3, 8);
  SpectralField U(g, 3);
  const int k[3] = {1, 1, 0}, km[3] = {-1, -1, 0};
  U.mode(0, k) = 1.0;
  U.mode(0, km) = 1.0;
  // P u_hat = u_hat - k (k.u)/|k|^2 = (1,0,0) - (1,1,0)/2 = (1/2, -1/2, 0)
  const SpectralField P = leray_project(U);
  CHECK(std::abs(P.mode(0, k) - Complex(0.5, 0.0)) < 1e-14);
  const int k1[3] = {1, 1, 0};
  CHECK(std::abs(P.mode(1, k1) - Complex(-0.5, 0.0)) < 1e-14);
  CHECK(std::abs(P.mode(2, k1)) < 1e-14);
}

TEST_CASE("inverse laplacian of a divergence recovers the potential") {
  Rng rng(110);
  for (int dim : {2, 3}) {
    const Grid g(dim, 12);
    const SpectralField f = random_trig_poly(g, 1, 4, rng);
    SpectralField gradf(g, dim);
    for (int a = 0; a < dim; ++a) gradf.data[a] = derivative(f, a).data[0];
    const SpectralField back = inv_laplace_div(gradf);  // div grad = laplace
    CHECK(max_mode_diff(back, f) < 1e-12);
  }
}

TEST_CASE("spectral derivative matches closed forms") {
  const Grid g(1, 64);
  PhysicalField f(g, 1);
  for (int i = 0; i < g.points; ++i)
    f.data[0][i] = std::sin(two_pi * i / g.points);
  const SpectralField dF = derivative(forward_transform(f), 0);
  const PhysicalField df = inverse_transform(dF);
  for (int i = 0; i < g.points; ++i)
    CHECK(df.data[0][i] ==
          doctest::Approx(two_pi * std::cos(two_pi * i / g.points)).epsilon(1e-10));
}

TEST_CASE("lattice L^p norms: closed form, homogeneity, Parseval agreement") {
  const Grid g(1, 64);
  PhysicalField f(g, 1);
  for (int i = 0; i < g.points; ++i)
    f.data[0][i] = std::sin(two_pi * i / g.points);
  CHECK(lp_norm(f, 2.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  // ||sin||_4^4 = 3/8 on the torus
  CHECK(std::pow(lp_norm(f, 4.0), 4.0) == doctest::Approx(3.0 / 8.0).epsilon(1e-12));

  Rng rng(111);
  const Grid g2(2, 16);
  const SpectralField F = random_trig_poly(g2, 2, 5, rng);
  CHECK(lp_norm(3.5 * F, 4.0) == doctest::Approx(3.5 * lp_norm(F, 4.0)).epsilon(1e-12));
  CHECK(l2_norm(F) == doctest::Approx(lp_norm(F, 2.0)).epsilon(1e-10));
}

TEST_CASE("parseval gradient norm agrees with the lattice quadrature") {
  Rng rng(112);
  const Grid g(2, 24);
  const SpectralField F = random_trig_poly(g, 2, 5, rng);
  PhysicalField all(g, 2 * 2);
  for (int a = 0; a < 2; ++a) {
    PhysicalField da = inverse_transform(derivative(F, a));
    for (int c = 0; c < 2; ++c) all.data[a * 2 + c] = da.data[c];
  }
  CHECK(grad_l2_norm(F) == doctest::Approx(lp_norm(all, 2.0)).epsilon(1e-10));
}

TEST_CASE("poincare and bernstein inequalities on band-limited fields") {
  Rng rng(113);
  const Grid g(2, 64);
  const int n = 7;
  const SpectralField F = random_trig_poly(g, 2, n, rng);
  CHECK(l2_norm(F) <= grad_l2_norm(F) / two_pi * (1.0 + 1e-12));
  const double bernstein = two_pi * n * std::sqrt(2.0) * l2_norm(F);
  CHECK(grad_l2_norm(F) <= bernstein * (1.0 + 1e-12));
}

TEST_CASE("dealiased product matches the convolution oracle") {
  Rng rng(114);
  const Grid g(2, 4 * 5 + 4);
  const MultiIndex n{5, 5, 5};
  const SpectralField a = rect_truncate(random_trig_poly(g, 1, 5, rng), n);
  const SpectralField b = rect_truncate(random_trig_poly(g, 1, 5, rng), n);
  const SpectralField prod = dealias_product(a, b, n);

  // oracle: direct convolution over the supports, restricted to the box
  SpectralField conv(g, 1);
  for (int k0 = -5; k0 <= 5; ++k0)
    for (int k1 = -5; k1 <= 5; ++k1) {
      Complex acc = 0.0;
      for (int m0 = -5; m0 <= 5; ++m0)
        for (int m1 = -5; m1 <= 5; ++m1) {
          const int l0 = k0 - m0, l1 = k1 - m1;
          if (std::abs(l0) > 5 || std::abs(l1) > 5) continue;
          const int km[3] = {m0, m1, 0}, kl[3] = {l0, l1, 0};
          acc += a.mode(0, km) * b.mode(0, kl);
        }
      const int kk[3] = {k0, k1, 0};
      conv.mode(0, kk) = acc;
    }
  CHECK(max_mode_diff(prod, conv) < 1e-12);
}

TEST_CASE("dealiased product mean recovers the L2 pairing") {
  Rng rng(115);
  const Grid g(2, 32);
  const MultiIndex n{6, 6, 6};
  const SpectralField a = rect_truncate(random_trig_poly(g, 1, 6, rng), n);
  const SpectralField prod = dealias_product(a, a, n);
  // mean of a^2 is ||a||_2^2 (Parseval)
  CHECK(prod.data[0][0].real() ==
        doctest::Approx(l2_norm(a) * l2_norm(a)).epsilon(1e-12));
}

TEST_CASE("dealiased product rejects undersized grids and unclipped inputs") {
  Rng rng(116);
  const Grid g(1, 16);
  const MultiIndex n{4, 4, 4};
  const SpectralField a = rect_truncate(random_trig_poly(g, 1, 4, rng), n);
  CHECK_THROWS_AS((void)dealias_product(a, a, n), std::invalid_argument);
  const Grid big(1, 32);
  const SpectralField wide = random_trig_poly(big, 1, 10, rng);
  CHECK_THROWS_AS((void)dealias_product(wide, wide, n), std::invalid_argument);
}

TEST_CASE("hermitian enforcement produces a real synthesis") {
  const Grid g(2, 8);
  SpectralField F(g, 1);
  Rng rng(117);
  std::normal_distribution<double> gauss;
  for (auto& z : F.data[0]) z = Complex(gauss(rng), gauss(rng));
  F.enforce_hermitian();
  const PhysicalField f = inverse_transform(F);
  CHECK(max_mode_diff(forward_transform(f), F) < 1e-12);
}

TEST_CASE("mode transfer embeds and restricts without loss inside the band") {
  Rng rng(118);
  const Grid small(2, 16), big(2, 40);
  const SpectralField F = random_trig_poly(small, 2, 6, rng);
  const SpectralField up = transfer_modes(F, big);
  CHECK(l2_norm(up) == doctest::Approx(l2_norm(F)).epsilon(1e-13));
  const SpectralField back = transfer_modes(up, small);
  CHECK(max_mode_diff(back, F) < 1e-14);
}

TEST_CASE("snapshot files round-trip coefficients, box, and time") {
  Rng rng(119);
  const Grid g(3, 12);
  const SpectralField F = rect_truncate(random_trig_poly(g, 3, 4, rng),
                                        MultiIndex{3, 2, 4});
  const std::string path = "snapshot_roundtrip.bin";
  save_snapshot(path, F, MultiIndex{3, 2, 4}, 0.625);
  const Snapshot snap = load_snapshot(path, g);
  CHECK(snap.time == 0.625);
  CHECK(snap.box == MultiIndex{3, 2, 4});
  CHECK(max_mode_diff(snap.field, F) == 0.0);
  // reload on a strictly larger grid: same function, same norms
  const Grid big(3, 20);
  const Snapshot embedded = load_snapshot(path, big);
  CHECK(l2_norm(embedded.field) == doctest::Approx(l2_norm(F)).epsilon(1e-13));
  std::remove(path.c_str());
}
