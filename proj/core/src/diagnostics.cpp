#include "snse/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "snse/fft.hpp"
#include "snse/norms.hpp"
#include "snse/operators.hpp"
#include "snse/parallel.hpp"

namespace snse {

namespace {

// L^q norm of the full gradient, pointwise Frobenius magnitude over all
// component/axis pairs.
double grad_lq_norm(const SpectralField& F, double q) {
  const int d = F.grid.dim;
  PhysicalField all(F.grid, F.comps * d);
  for (int a = 0; a < d; ++a) {
    PhysicalField da = inverse_transform(derivative(F, a));
    for (int c = 0; c < F.comps; ++c) all.data[a * F.comps + c] = std::move(da.data[c]);
  }
  return lp_norm(all, q);
}

SpectralField projected_truncation(const SpectralField& u0, int n) {
  SpectralField u = square_truncate(u0, n);
  u.set_zero_mean();
  return leray_project(u);
}

EnsembleStats reduce_stats(const std::vector<double>& values) {
  EnsembleStats st;
  st.paths = static_cast<int>(values.size());
  for (double v : values) st.mean += v;
  st.mean /= st.paths;
  if (st.paths >= 2) {
    for (double v : values) st.variance += (v - st.mean) * (v - st.mean);
    st.variance /= (st.paths - 1);
    st.std_error = std::sqrt(st.variance / st.paths);
  } else {
    st.variance = st.std_error = std::nan("");
  }
  return st;
}

}  // namespace

std::pair<double, double> energy_functional(const PhysicalField& u, double p) {
  return {std::pow(lp_norm(u, p), p), grad_abs_pow_l2_sq(u, p)};
}

double gn_ratio(const SpectralField& f, double p) {
  if (!is_mean_zero(f)) throw std::invalid_argument("gn_ratio: field must have zero mean");
  PhysicalField phys = inverse_transform(f);
  const double num = std::pow(lp_norm(phys, 3.0 * p), p);
  const double den = grad_abs_pow_l2_sq(phys, p);
  if (den <= 0.0) throw std::invalid_argument("gn_ratio: zero field");
  return num / den;
}

double predicted_alpha(double q) {
  if (q <= 1.0) throw std::invalid_argument("predicted_alpha: q must exceed 1");
  if (q == 2.0) return 1.0;
  const double r = q < 2.0 ? (1.0 + q) / 2.0 : 2.0 * q;
  return (1.0 / r - 1.0 / q) / (1.0 / r - 0.5);
}

DecayStudy operator_decay_study(double q, const std::vector<int>& ladder,
                                const std::vector<SpectralField>& corpus) {
  if (ladder.size() < 2 || corpus.empty())
    throw std::invalid_argument("operator_decay_study: need a ladder and a corpus");
  DecayStudy study;
  study.q = q;
  study.ladder = ladder;
  study.predicted = predicted_alpha(q);
  for (int n : ladder) {
    double worst = 0.0;
    for (const auto& f : corpus) {
      const SpectralField rem = f - square_truncate(f, n);
      const double den = grad_lq_norm(f, q);
      if (den <= 0.0) continue;
      worst = std::max(worst, lp_norm(rem, q) / den);
    }
    study.max_ratio.push_back(worst);
  }
  std::vector<double> xs(ladder.begin(), ladder.end());
  study.fitted_slope = -loglog_slope(xs, study.max_ratio);
  study.pass = study.fitted_slope >= study.predicted - 0.1;
  return study;
}

UniformBoundStudy uniform_bound_study(double q, const std::vector<int>& ladder,
                                      const std::vector<SpectralField>& corpus) {
  if (ladder.empty() || corpus.empty())
    throw std::invalid_argument("uniform_bound_study: need a ladder and a corpus");
  UniformBoundStudy study;
  study.q = q;
  study.ladder = ladder;
  for (int n : ladder) {
    double worst = 0.0;
    for (const auto& f : corpus) {
      const double den = lp_norm(f, q);
      if (den <= 0.0) continue;
      worst = std::max(worst, lp_norm(square_truncate(f, n), q) / den);
    }
    study.max_ratio.push_back(worst);
  }
  double lo = study.max_ratio.front(), hi = lo;
  for (double r : study.max_ratio) {
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  study.variation = lo > 0.0 ? (hi - lo) / lo : std::nan("");
  study.pass = std::isfinite(study.variation) && study.variation < 0.2;
  return study;
}

EnsembleStats ensemble_expectation(const SolverConfig& cfg, const SpectralField& u0,
                                   int paths, EnsembleFunctional functional,
                                   int jobs) {
  if (paths < 1) throw std::invalid_argument("ensemble_expectation: paths >= 1");
  std::vector<double> values(paths);
  parallel_for(jobs, paths, [&](int i) {
    SolverConfig c = cfg;
    c.seed = cfg.seed + static_cast<std::uint64_t>(i);
    const TrajectoryRecord rec = simulate_path(c, u0);
    double sup = 0.0, integral = 0.0;
    for (std::size_t s = 0; s < rec.rows.size(); ++s) {
      const TrajectoryRow& row = rec.rows[s];
      const bool last = s + 1 == rec.rows.size();
      switch (functional) {
        case EnsembleFunctional::L2Energy:
          sup = std::max(sup, row.norm_2 * row.norm_2);
          if (!last) integral += c.dt * row.grad_2 * row.grad_2;
          break;
        case EnsembleFunctional::LpEnergy:
        case EnsembleFunctional::TailIndicator:
          sup = std::max(sup, std::pow(row.norm_p, c.p));
          if (!last) integral += c.dt * row.energy_grad_p;
          break;
      }
    }
    double v = sup + integral;
    if (functional == EnsembleFunctional::TailIndicator)
      v = v >= std::pow(rec.cutoff_M, c.p) ? 1.0 : 0.0;
    values[i] = v;
  });
  return reduce_stats(values);
}

std::vector<ConvergencePair> cauchy_study(const SolverConfig& base,
                                          const std::vector<int>& n_list,
                                          const SpectralField& u0, int paths,
                                          int jobs) {
  if (n_list.size() < 2) throw std::invalid_argument("cauchy_study: need >= 2 levels");
  std::vector<ConvergencePair> out;
  for (std::size_t pi = 0; pi + 1 < n_list.size(); ++pi) {
    const int m = n_list[pi], n = n_list[pi + 1];
    // both levels evolve on one grid that dealiases the finer one, so the
    // driving noise is literally shared
    const Grid gf(base.dim, 4 * n + 2);
    const SpectralField u0f = transfer_modes(u0, gf);
    auto noise_f =
        std::make_shared<const NoiseModel>(base.noise->on_grid(gf));

    SolverConfig cm = base, cn = base;
    cm.n = m;
    cn.n = n;
    cm.grid_points = cn.grid_points = gf.points;
    cm.noise = cn.noise = noise_f;
    cm.validate();
    cn.validate();

    const int steps = static_cast<int>(std::llround(base.horizon / base.dt));
    std::vector<double> values(paths);
    parallel_for(jobs, paths, [&](int pth) {
      Rng rng(base.seed + static_cast<std::uint64_t>(pth));
      SolverState sm{0.0, projected_truncation(u0f, m)};
      SolverState sn{0.0, projected_truncation(u0f, n)};
      const double Mm = base.cutoff_M > 0.0 ? base.cutoff_M
                                            : 2.0 * lp_norm(sm.u, base.p) + 1.0;
      const double Mn = base.cutoff_M > 0.0 ? base.cutoff_M
                                            : 2.0 * lp_norm(sn.u, base.p) + 1.0;
      StoppingMonitor mon_m(Mm, base.p), mon_n(Mn, base.p);
      double sup_d = 0.0, int_d = 0.0;
      for (int s = 0; s <= steps; ++s) {
        const double t = s * base.dt;
        mon_m.record(t, lp_norm(sm.u, base.p), lp_norm(sm.u, 3.0 * base.p), base.dt);
        mon_n.record(t, lp_norm(sn.u, base.p), lp_norm(sn.u, 3.0 * base.p), base.dt);
        const SpectralField diff = sn.u - sm.u;
        sup_d = std::max(sup_d, std::pow(lp_norm(diff, base.p), base.p));
        if (mon_m.fired() || mon_n.fired() || s == steps) break;
        int_d += base.dt * std::pow(lp_norm(diff, 3.0 * base.p), base.p);
        const WienerIncrement inc = sample_increment(noise_f->basis(), base.dt, rng);
        const SpectralField st_m =
            square_truncate(noise_f->stochastic_increment(sm.u, inc), m);
        const SpectralField st_n =
            square_truncate(noise_f->stochastic_increment(sn.u, inc), n);
        step(sm, cm, st_m);
        step(sn, cn, st_n);
      }
      values[pth] = sup_d + int_d;
    });
    const EnsembleStats st = reduce_stats(values);
    out.push_back({m, n, st.mean, st.std_error, paths});
  }
  return out;
}

std::vector<double> deterministic_refinement(const SolverConfig& base,
                                             const std::vector<int>& n_list,
                                             const SpectralField& u0) {
  if (n_list.size() < 2)
    throw std::invalid_argument("deterministic_refinement: need >= 2 levels");
  const int n_ref = n_list.back();
  const Grid gf(base.dim, 4 * n_ref + 2);
  const SpectralField u0f = transfer_modes(u0, gf);
  auto zero_noise = std::make_shared<const NoiseModel>(NoiseModel::zero());
  const SpectralField no_stoch(gf, base.dim);

  std::vector<SolverState> states;
  std::vector<SolverConfig> cfgs;
  for (int n : n_list) {
    SolverConfig c = base;
    c.n = n;
    c.grid_points = gf.points;
    c.noise = zero_noise;
    c.validate();
    cfgs.push_back(c);
    states.push_back({0.0, projected_truncation(u0f, n)});
  }

  const int steps = static_cast<int>(std::llround(base.horizon / base.dt));
  std::vector<double> sup_diff(n_list.size() - 1, 0.0);
  for (int s = 0; s <= steps; ++s) {
    for (std::size_t l = 0; l + 1 < n_list.size(); ++l)
      sup_diff[l] = std::max(
          sup_diff[l], lp_norm(states[l].u - states.back().u, base.p));
    if (s == steps) break;
    for (std::size_t l = 0; l < n_list.size(); ++l)
      step(states[l], cfgs[l], no_stoch);
  }
  return sup_diff;
}

double uniqueness_check(const SolverConfig& cfg, const SpectralField& u0,
                        double horizon, double tol, int max_iters) {
  const PicardResult pr = picard_solve(cfg, u0, horizon, tol, max_iters);

  SolverState state{0.0, projected_truncation(u0, cfg.n)};
  Rng rng(cfg.seed);
  const int steps = static_cast<int>(std::llround(horizon / cfg.dt));
  double sup = lp_norm(state.u - pr.trajectory[0], cfg.p);
  for (int s = 0; s < steps; ++s) {
    const WienerIncrement inc = sample_increment(cfg.noise->basis(), cfg.dt, rng);
    const SpectralField stoch =
        square_truncate(cfg.noise->stochastic_increment(state.u, inc), cfg.n);
    step(state, cfg, stoch);
    sup = std::max(sup, lp_norm(state.u - pr.trajectory[s + 1], cfg.p));
  }
  return sup;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("loglog_slope: need matched samples, >= 2");
  const std::size_t n = x.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace snse
