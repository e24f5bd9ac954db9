#include "snse/solver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "snse/fft.hpp"
#include "snse/norms.hpp"
#include "snse/operators.hpp"

namespace snse {

namespace {
constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;

// Per-mode linear factor: exact heat semigroup, or the semi-implicit resolvent.
void apply_linear_factor(SpectralField& F, double dt, Scheme scheme) {
  const std::size_t total = F.grid.total();
  int k[3];
  for (std::size_t flat = 0; flat < total; ++flat) {
    flat_to_wavenumber(flat, F.grid, k);
    double k2 = 0.0;
    for (int a = 0; a < F.grid.dim; ++a) k2 += double(k[a]) * k[a];
    const double lambda = four_pi_sq * k2;
    const double factor = scheme == Scheme::ExponentialEM
                              ? std::exp(-lambda * dt)
                              : 1.0 / (1.0 + lambda * dt);
    for (int c = 0; c < F.comps; ++c) F.data[c][flat] *= factor;
  }
}

void restore_invariants(SpectralField& u, int n) {
  u = square_truncate(u, n);
  u.set_zero_mean();
  u = leray_project(u);  // also re-symmetrizes
}

TrajectoryRow make_row(const SpectralField& u, double t, double p,
                       const StoppingMonitor& monitor) {
  PhysicalField phys = inverse_transform(u);
  TrajectoryRow row;
  row.t = t;
  row.norm_2 = l2_norm(u);
  row.grad_2 = grad_l2_norm(u);
  row.norm_p = lp_norm(phys, p);
  row.norm_3p = lp_norm(phys, 3.0 * p);
  row.energy_grad_p = grad_abs_pow_l2_sq(phys, p);
  row.monitor_stat = monitor.statistic();
  row.stopped = monitor.fired();
  return row;
}

}  // namespace

Grid SolverConfig::grid() const {
  const int N = grid_points > 0 ? grid_points : 4 * n + 2;
  return Grid(dim, N % 2 == 0 ? N : N + 1);
}

void SolverConfig::validate() const {
  if (dim < 2 || dim > 3) throw std::invalid_argument("SolverConfig: dim must be 2 or 3");
  if (n < 1) throw std::invalid_argument("SolverConfig: n must be >= 1");
  if (p <= dim) throw std::invalid_argument("SolverConfig: p must exceed the dimension");
  if (dt <= 0.0) throw std::invalid_argument("SolverConfig: dt must be positive");
  if (horizon <= 0.0) throw std::invalid_argument("SolverConfig: horizon must be positive");
  if (cutoff_M < 0.0) throw std::invalid_argument("SolverConfig: cutoff level must be >= 0");
  if (!noise) throw std::invalid_argument("SolverConfig: noise model not set");
  const Grid g = grid();
  if (g.points < 4 * n + 2)
    throw std::invalid_argument(
        "SolverConfig: grid cannot dealias quadratic products at this n "
        "(need points >= 4n+2)");
}

void StoppingMonitor::record(double t, double norm_p, double norm_3p, double dt) {
  sup_p_ = std::max(sup_p_, norm_p);
  if (!fired_at_ && statistic() >= M_) fired_at_ = t;
  integral_ += dt * std::pow(norm_3p, p_);
}

double StoppingMonitor::statistic() const {
  return sup_p_ + std::pow(integral_, 1.0 / p_);
}

SpectralField nonlinear_term(const SpectralField& u, int n) {
  const Grid& g = u.grid;
  const int d = g.dim;
  if (u.comps != d) throw std::invalid_argument("nonlinear_term: need d components");
  if (g.points < 4 * n + 2)
    throw std::invalid_argument("nonlinear_term: grid too small to dealias at n");
  const PhysicalField phys = inverse_transform(u);
  const std::size_t total = g.total();
  SpectralField result(g, d);
  for (int i = 0; i < d; ++i) {
    PhysicalField prod(g, d);
    for (int j = 0; j < d; ++j)
      for (std::size_t x = 0; x < total; ++x)
        prod.data[j][x] = phys.data[i][x] * phys.data[j][x];
    SpectralField W = rect_truncate(forward_transform(prod), cubic_index(n));
    W.set_zero_mean();
    W = leray_project(W);
    result -= derivative(W, i);
  }
  result.enforce_hermitian();
  return result;
}

SpectralField advective_term(const SpectralField& v, const SpectralField& u, int n) {
  const Grid& g = u.grid;
  const int d = g.dim;
  const PhysicalField pv = inverse_transform(v);
  const std::size_t total = g.total();
  PhysicalField acc(g, d);
  for (int i = 0; i < d; ++i) {
    const PhysicalField du = inverse_transform(derivative(u, i));
    for (int j = 0; j < d; ++j)
      for (std::size_t x = 0; x < total; ++x)
        acc.data[j][x] += pv.data[i][x] * du.data[j][x];
  }
  SpectralField F = rect_truncate(forward_transform(acc), cubic_index(n));
  F.set_zero_mean();
  return leray_project(F);
}

void step(SolverState& state, const SolverConfig& cfg, const SpectralField& stoch) {
  SpectralField rhs = state.u;
  if (!cfg.linear_only) {
    SpectralField B = nonlinear_term(state.u, cfg.n);
    B *= cfg.dt;
    rhs += B;
  }
  rhs += stoch;
  apply_linear_factor(rhs, cfg.dt, cfg.scheme);
  restore_invariants(rhs, cfg.n);
  state.u = std::move(rhs);
  state.t += cfg.dt;
}

TrajectoryRecord simulate_path(const SolverConfig& cfg, const SpectralField& u0) {
  cfg.validate();
  const Grid g = cfg.grid();
  if (!(u0.grid == g))
    throw std::invalid_argument("simulate_path: u0 grid mismatch");

  SolverState state;
  state.u = square_truncate(u0, cfg.n);
  state.u.set_zero_mean();
  state.u = leray_project(state.u);
  state.t = 0.0;

  const double M = cfg.cutoff_M > 0.0 ? cfg.cutoff_M
                                      : 2.0 * lp_norm(state.u, cfg.p) + 1.0;
  StoppingMonitor monitor(M, cfg.p);
  Rng rng(cfg.seed);

  TrajectoryRecord rec;
  rec.cutoff_M = M;
  const int steps = static_cast<int>(std::llround(cfg.horizon / cfg.dt));
  for (int s = 0; s <= steps; ++s) {
    const double t = s * cfg.dt;
    {
      PhysicalField phys = inverse_transform(state.u);
      const double np = lp_norm(phys, cfg.p);
      const double n3p = lp_norm(phys, 3.0 * cfg.p);
      monitor.record(t, np, n3p, cfg.dt);
      TrajectoryRow row;
      row.t = t;
      row.norm_2 = l2_norm(state.u);
      row.grad_2 = grad_l2_norm(state.u);
      row.norm_p = np;
      row.norm_3p = n3p;
      row.energy_grad_p = grad_abs_pow_l2_sq(phys, cfg.p);
      row.monitor_stat = monitor.statistic();
      row.stopped = monitor.fired();
      rec.rows.push_back(row);
    }
    if (monitor.fired()) {
      rec.stopped = true;
      rec.tau = *monitor.fired_at();
      break;
    }
    if (s == steps) break;
    WienerIncrement inc = sample_increment(cfg.noise->basis(), cfg.dt, rng);
    SpectralField stoch =
        square_truncate(cfg.noise->stochastic_increment(state.u, inc), cfg.n);
    step(state, cfg, stoch);
    if (!state.u.finite()) {
      rec.blown_up = true;
      rec.tau = t;  // last finite state
      break;
    }
  }
  if (!rec.stopped && !rec.blown_up) rec.tau = cfg.horizon;
  rec.final_state = std::move(state.u);
  return rec;
}

PicardResult picard_solve(const SolverConfig& cfg, const SpectralField& u0,
                          double horizon, double tol, int max_iters) {
  cfg.validate();
  const Grid g = cfg.grid();

  SpectralField u_init = square_truncate(u0, cfg.n);
  u_init.set_zero_mean();
  u_init = leray_project(u_init);

  const double M = cfg.cutoff_M > 0.0 ? cfg.cutoff_M : 2.0 * l2_norm(u_init) + 1.0;
  const SmoothGate gate(M);
  const int steps = static_cast<int>(std::llround(horizon / cfg.dt));

  Rng rng(cfg.seed);
  std::vector<WienerIncrement> incs;
  incs.reserve(steps);
  for (int s = 0; s < steps; ++s)
    incs.push_back(sample_increment(cfg.noise->basis(), cfg.dt, rng));

  // iterate 0: pure heat flow from S_n u0
  std::vector<SpectralField> prev(steps + 1);
  prev[0] = u_init;
  for (int s = 0; s < steps; ++s) {
    SpectralField next = prev[s];
    apply_linear_factor(next, cfg.dt, cfg.scheme);
    prev[s + 1] = std::move(next);
  }

  PicardResult result;
  std::vector<SpectralField> cur(steps + 1);
  for (int iter = 1; iter <= max_iters; ++iter) {
    cur[0] = u_init;
    for (int s = 0; s < steps; ++s) {
      const double phi_cur = gate(l2_norm(cur[s]));
      const double phi_prev = gate(l2_norm(prev[s]));
      SpectralField rhs = cur[s];
      if (!cfg.linear_only && phi_cur > 0.0) {
        SpectralField B = nonlinear_term(cur[s], cfg.n);
        B *= cfg.dt * phi_cur * phi_cur;
        rhs += B;
      }
      if (phi_prev > 0.0) {
        SpectralField stoch = square_truncate(
            cfg.noise->stochastic_increment(prev[s], incs[s]), cfg.n);
        stoch *= phi_prev * phi_prev;
        rhs += stoch;
      }
      apply_linear_factor(rhs, cfg.dt, cfg.scheme);
      restore_invariants(rhs, cfg.n);
      cur[s + 1] = std::move(rhs);
    }
    double delta = 0.0;
    for (int s = 0; s <= steps; ++s) delta = std::max(delta, l2_norm(cur[s] - prev[s]));
    prev = cur;
    result.record.picard_iterations = iter;
    result.last_delta = delta;
    if (delta < tol) {
      result.converged = true;
      break;
    }
  }

  // materialize the fixed-point trajectory
  StoppingMonitor monitor(M, cfg.p);
  for (int s = 0; s <= steps; ++s) {
    const double t = s * cfg.dt;
    PhysicalField phys = inverse_transform(prev[s]);
    monitor.record(t, lp_norm(phys, cfg.p), lp_norm(phys, 3.0 * cfg.p), cfg.dt);
    result.record.rows.push_back(make_row(prev[s], t, cfg.p, monitor));
  }
  result.record.cutoff_M = M;
  result.record.stopped = monitor.fired();
  result.record.tau = monitor.fired() ? *monitor.fired_at() : horizon;
  result.record.final_state = prev.back();
  result.trajectory = std::move(prev);
  return result;
}

double detect_stop(const TrajectoryRecord& record, double horizon) {
  for (const auto& row : record.rows)
    if (row.stopped) return row.t;
  return horizon;
}

}  // namespace snse
