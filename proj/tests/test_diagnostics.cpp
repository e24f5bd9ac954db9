#include <doctest.h>

#include <cmath>
#include <numbers>

#include "snse/diagnostics.hpp"
#include "snse/fft.hpp"
#include "snse/norms.hpp"
#include "snse/operators.hpp"

using namespace snse;

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

TEST_CASE("energy functional: closed forms on trigonometric data") {
  const Grid g(1, 256);
  PhysicalField f(g, 1);
  for (int i = 0; i < g.points; ++i)
    f.data[0][i] = std::sin(two_pi * i / g.points);
  // p = 4: ||sin||_4^4 = 3/8 and |sin|^2 is smooth, grad integral = 2 pi^2
  const auto [lp4, grad4] = energy_functional(f, 4.0);
  CHECK(lp4 == doctest::Approx(3.0 / 8.0).epsilon(1e-10));
  CHECK(grad4 == doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi)
                     .epsilon(1e-3));

  // p = 2 on a positive field: finite differences against the exact gradient
  PhysicalField pos(g, 1);
  for (int i = 0; i < g.points; ++i)
    pos.data[0][i] = 2.0 + std::sin(two_pi * i / g.points);
  const auto [lp2, grad2] = energy_functional(pos, 2.0);
  CHECK(lp2 == doctest::Approx(4.0 + 0.5).epsilon(1e-10));
  CHECK(grad2 == doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi)
                     .epsilon(0.01));
}

TEST_CASE("finite-difference composite gradient tracks the spectral one") {
  Rng rng(71);
  const Grid g(2, 128);
  const SpectralField F = random_trig_poly(g, 2, 3, rng);
  // p = 2 with a sign-definite shift is the plain gradient
  PhysicalField f = inverse_transform(F);
  double shift = 0.0;
  for (const auto& comp : f.data)
    for (double v : comp) shift = std::max(shift, std::abs(v));
  for (auto& comp : f.data)
    for (auto& v : comp) v += 2.0 * shift;
  const double fd = grad_abs_pow_l2_sq(f, 2.0);
  const double spectral = grad_l2_norm(F) * grad_l2_norm(F);
  CHECK(fd == doctest::Approx(spectral).epsilon(0.01));
}

TEST_CASE("embedding ratio is scale-invariant and positive") {
  Rng rng(72);
  const Grid g(3, 32);
  const SpectralField f = random_decay_spectrum(g, 1, 5, 2.0, rng);
  const double r1 = gn_ratio(f, 4.0);
  CHECK(r1 > 0.0);
  CHECK(std::isfinite(r1));
  CHECK(gn_ratio(3.0 * f, 4.0) == doctest::Approx(r1).epsilon(1e-10));
  CHECK_THROWS_AS((void)gn_ratio(SpectralField(g, 1), 4.0), std::invalid_argument);
}

TEST_CASE("predicted truncation exponents") {
  CHECK(predicted_alpha(2.0) == 1.0);
  CHECK(predicted_alpha(4.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  // q in (1,2): r = (1+q)/2
  const double q = 1.5, r = 1.25;
  CHECK(predicted_alpha(q) ==
        doctest::Approx((1 / r - 1 / q) / (1 / r - 0.5)).epsilon(1e-14));
  // q > 2: r = 2q collapses to 1/(q-1)
  CHECK(predicted_alpha(6.0) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK_THROWS_AS((void)predicted_alpha(1.0), std::invalid_argument);
}

TEST_CASE("decay study recovers the known exponent of a power spectrum") {
  // deterministic |f_hat(k)| = |k|^{-3/2}: the L2 remainder past n scales
  // like n^{-1}, saturating the gradient bound
  const Grid g(1, 512);
  SpectralField f(g, 1);
  for (int k = 1; k <= 200; ++k) {
    const int kp[3] = {k, 0, 0}, km[3] = {-k, 0, 0};
    f.mode(0, kp) = 0.5 * std::pow(double(k), -1.5);
    f.mode(0, km) = 0.5 * std::pow(double(k), -1.5);
  }
  const std::vector<int> ladder{4, 8, 16, 32, 64};
  const DecayStudy ds = operator_decay_study(2.0, ladder, {f});
  CHECK(ds.ladder == ladder);
  REQUIRE(ds.max_ratio.size() == ladder.size());
  for (std::size_t i = 1; i < ds.max_ratio.size(); ++i)
    CHECK(ds.max_ratio[i] < ds.max_ratio[i - 1]);
  CHECK(ds.fitted_slope == doctest::Approx(1.0).epsilon(0.05));
  CHECK(ds.predicted == 1.0);
  CHECK(ds.pass);
}

TEST_CASE("uniform bound study: contraction at q=2, stable ratios at q=4") {
  Rng rng(73);
  const Grid g(1, 512);
  std::vector<SpectralField> corpus;
  for (int i = 0; i < 6; ++i)
    corpus.push_back(random_decay_spectrum(g, 1, 128, 1.6, rng));
  const std::vector<int> ladder{4, 8, 16, 32, 64};
  for (double q : {2.0, 4.0}) {
    const UniformBoundStudy us = uniform_bound_study(q, ladder, corpus);
    REQUIRE(us.max_ratio.size() == ladder.size());
    CHECK(us.pass);
    CHECK(us.variation < 0.2);
    if (q == 2.0)
      for (double r : us.max_ratio) CHECK(r <= 1.0 + 1e-12);
  }
}

TEST_CASE("log-log slope fitting is exact on power laws") {
  std::vector<double> x{2, 4, 8, 16}, y;
  for (double v : x) y.push_back(5.0 * std::pow(v, -1.7));
  CHECK(loglog_slope(x, y) == doctest::Approx(-1.7).epsilon(1e-12));
  CHECK_THROWS_AS((void)loglog_slope({1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("ensemble statistics collapse for deterministic dynamics") {
  SolverConfig cfg;
  cfg.dim = 2;
  cfg.n = 4;
  cfg.dt = 1e-3;
  cfg.horizon = 0.01;
  cfg.p = 4.0;
  cfg.noise = std::make_shared<const NoiseModel>(NoiseModel::zero());
  const SpectralField u0 = taylor_green(cfg.grid(), 1.0);
  const EnsembleStats st =
      ensemble_expectation(cfg, u0, 8, EnsembleFunctional::L2Energy, 2);
  CHECK(st.paths == 8);
  CHECK(st.variance == 0.0);
  CHECK(st.std_error == 0.0);
  CHECK(st.mean > 0.0);
}

TEST_CASE("ensemble statistics are independent of the thread count") {
  SolverConfig cfg;
  cfg.dim = 2;
  cfg.n = 4;
  cfg.dt = 1e-3;
  cfg.horizon = 0.01;
  cfg.p = 4.0;
  cfg.noise = std::make_shared<const NoiseModel>(
      NoiseModel::additive(cfg.grid(), 4, 0.2, 1.0, 3, 81));
  const SpectralField u0 = taylor_green(cfg.grid(), 1.0);
  for (auto functional : {EnsembleFunctional::L2Energy, EnsembleFunctional::LpEnergy,
                          EnsembleFunctional::TailIndicator}) {
    const EnsembleStats serial = ensemble_expectation(cfg, u0, 12, functional, 1);
    const EnsembleStats threaded = ensemble_expectation(cfg, u0, 12, functional, 4);
    CHECK(serial.mean == threaded.mean);
    CHECK(serial.variance == threaded.variance);
  }
}

TEST_CASE("coupled level differences shrink under refinement") {
  SolverConfig base;
  base.dim = 2;
  base.n = 8;
  base.dt = 1e-3;
  base.horizon = 0.01;
  base.p = 4.0;
  base.seed = 3;
  base.noise = std::make_shared<const NoiseModel>(
      NoiseModel::additive(Grid(2, 34), 4, 0.1, 1.0, 3, 83));
  const Grid gref(2, 4 * 8 + 2);
  Rng rng(84);
  // decaying spectrum: the per-band mass shrinks with the level
  const SpectralField u0 =
      leray_project(random_decay_spectrum(gref, 2, 8, 2.0, rng));
  const auto pairs = cauchy_study(base, {2, 4, 8}, u0, 4, 2);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].m == 2);
  CHECK(pairs[0].n == 4);
  CHECK(pairs[1].mean < pairs[0].mean);
  for (const auto& p : pairs) {
    CHECK(std::isfinite(p.mean));
    CHECK(p.paths == 4);
  }
  // identical call, identical numbers
  const auto again = cauchy_study(base, {2, 4, 8}, u0, 4, 4);
  CHECK(again[0].mean == pairs[0].mean);
  CHECK(again[1].mean == pairs[1].mean);
}

TEST_CASE("deterministic refinement differences decay with the level") {
  SolverConfig base;
  base.dim = 2;
  base.n = 8;
  base.dt = 1e-3;
  base.horizon = 0.01;
  base.p = 4.0;
  base.noise = std::make_shared<const NoiseModel>(NoiseModel::zero());
  const Grid gref(2, 4 * 16 + 2);
  Rng rng(85);
  const SpectralField u0 = random_divergence_free(gref, 16, rng);
  const auto diffs = deterministic_refinement(base, {2, 4, 8, 16}, u0);
  REQUIRE(diffs.size() == 3);
  for (std::size_t i = 1; i < diffs.size(); ++i) CHECK(diffs[i] < diffs[i - 1]);
  CHECK(diffs.back() > 0.0);
}

TEST_CASE("direct scheme and fixed point coincide within the step error") {
  SolverConfig cfg;
  cfg.dim = 2;
  cfg.n = 6;
  cfg.dt = 1e-3;
  cfg.horizon = 0.01;
  cfg.p = 4.0;
  cfg.cutoff_M = 100.0;
  cfg.noise = std::make_shared<const NoiseModel>(
      NoiseModel::additive(cfg.grid(), 4, 0.05, 1.0, 3, 87));
  const SpectralField u0 = taylor_green(cfg.grid(), 1.0);
  const double d1 = uniqueness_check(cfg, u0, 0.01, 1e-12, 50);
  CHECK(d1 < 10.0 * cfg.dt);
  const double d2 = uniqueness_check(cfg, u0, 0.01, 1e-12, 50);
  CHECK(d1 == d2);
}
