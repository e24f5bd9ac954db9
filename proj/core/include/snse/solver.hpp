#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "snse/field.hpp"
#include "snse/gate.hpp"
#include "snse/noise.hpp"

namespace snse {

enum class Scheme { ExponentialEM, SemiImplicitEM };

struct SolverConfig {
  int dim = 2;
  int n = 8;           // cubic truncation index
  int grid_points = 0; // 0 = smallest admissible (4n+2 rounded up to even)
  double dt = 1e-3;
  double horizon = 0.5;
  double p = 4.0;      // L^p exponent, must exceed dim
  double cutoff_M = 0.0;  // 0 = auto: 2 ||S_n u0||_p + 1
  std::shared_ptr<const NoiseModel> noise;
  std::uint64_t seed = 1;
  Scheme scheme = Scheme::ExponentialEM;
  bool linear_only = false;  // drop the convective term (scheme validation)

  Grid grid() const;
  void validate() const;
};

/// Running statistics behind the stopping time: sup_{s<=t} ||u||_p and the
/// left-endpoint integral of ||u||_{3p}^p. Fires at the first step where
/// sup + integral^{1/p} >= M.
class StoppingMonitor {
 public:
  StoppingMonitor(double M, double p) : M_(M), p_(p) {}

  /// Record the state at time t, then advance the integral by dt using the
  /// left-endpoint value (the statistic at t never sees the future).
  void record(double t, double norm_p, double norm_3p, double dt);

  double sup_norm_p() const { return sup_p_; }
  double integral_3p() const { return integral_; }
  double statistic() const;
  bool fired() const { return fired_at_.has_value(); }
  std::optional<double> fired_at() const { return fired_at_; }
  double level() const { return M_; }

 private:
  double M_, p_;
  double sup_p_ = 0.0;
  double integral_ = 0.0;
  std::optional<double> fired_at_;
};

struct SolverState {
  double t = 0.0;
  SpectralField u;
};

struct TrajectoryRow {
  double t;
  double norm_2, grad_2, norm_p, norm_3p;
  double energy_grad_p;  // sum_j int |grad(|u_j|^{p/2})|^2
  double monitor_stat;
  bool stopped;
};

struct TrajectoryRecord {
  std::vector<TrajectoryRow> rows;
  double tau = 0.0;        // stopping time (horizon if never fired)
  bool stopped = false;    // monitor fired before the horizon
  bool blown_up = false;   // non-finite coefficients encountered
  double cutoff_M = 0.0;
  SpectralField final_state;
  int picard_iterations = 0;  // only set by picard_solve
};

/// -S_n P((u.grad)u) in divergence form: -sum_i d_i S_n(P(u_i u))_j, evaluated
/// with exact dealiased lattice products. Output is band-limited, mean-zero,
/// divergence-free.
SpectralField nonlinear_term(const SpectralField& u, int n);

/// Advective form S_n P((v.grad)u), for cross-checks against the divergence form.
SpectralField advective_term(const SpectralField& v, const SpectralField& u, int n);

/// One Euler-Maruyama step. `stoch` is sum_k S_n sigma(u) e_k dW_k evaluated at
/// the pre-step state. Restores band limit, zero mean, divergence-freeness and
/// Hermitian symmetry.
void step(SolverState& state, const SolverConfig& cfg, const SpectralField& stoch);

/// Simulate one path from S_n u0 up to min(horizon, tau_n^M, blow-up).
TrajectoryRecord simulate_path(const SolverConfig& cfg, const SpectralField& u0);

/// Truncated Picard iteration: sub-problems with gate factors (phi^M)^2 and the
/// noise frozen at the previous iterate, all driven by the same Wiener draws.
/// Converges for small horizons; non-contraction is reported via `converged`.
struct PicardResult {
  TrajectoryRecord record;
  std::vector<SpectralField> trajectory;  // fixed-point iterate at every step
  bool converged = false;
  double last_delta = 0.0;
};
PicardResult picard_solve(const SolverConfig& cfg, const SpectralField& u0,
                          double horizon, double tol, int max_iters);

/// First monitor time where the combined statistic crossed M; horizon if never.
double detect_stop(const TrajectoryRecord& record, double horizon);

}  // namespace snse
