#pragma once

#include <functional>
#include <string>
#include <vector>

#include "snse/solver.hpp"

namespace snse {

/// (||u||_p^p, sum_j int |grad(|u_j|^{p/2})|^2 dx), gradient by centered
/// finite differences on the lattice.
std::pair<double, double> energy_functional(const PhysicalField& u, double p);

/// ||f||_{3p}^p / ||grad(|f|^{p/2})||_2^2 for mean-zero nonzero f.
double gn_ratio(const SpectralField& f, double p);

/// Interpolation exponent of the truncation decay bound: 1 at q=2, and
/// (1/r - 1/q)/(1/r - 1/2) with r=(1+q)/2 for q in (1,2), r=2q for q>2.
double predicted_alpha(double q);

struct DecayStudy {
  double q = 0.0;
  std::vector<int> ladder;
  std::vector<double> max_ratio;  // sup_corpus ||(T_n - T_m) f||_q / ||grad f||_q per rung
  double fitted_slope = 0.0;      // log-log slope of max_ratio against minn
  double predicted = 0.0;
  bool pass = false;              // fitted_slope >= predicted - 0.1
};

/// Truncation-difference decay against a corpus of slowly decaying spectra.
/// Each rung n is paired with the untruncated field (m beyond the band limit).
DecayStudy operator_decay_study(double q, const std::vector<int>& ladder,
                                const std::vector<SpectralField>& corpus);

struct UniformBoundStudy {
  double q = 0.0;
  std::vector<int> ladder;
  std::vector<double> max_ratio;  // max_corpus ||T_n f||_q / ||f||_q per rung
  double variation = 0.0;         // (max - min)/min across the ladder
  bool pass = false;
};

UniformBoundStudy uniform_bound_study(double q, const std::vector<int>& ladder,
                                      const std::vector<SpectralField>& corpus);

struct EnsembleStats {
  int paths = 0;
  double mean = 0.0;
  double variance = 0.0;
  double std_error = 0.0;  // NaN when paths < 2
};

enum class EnsembleFunctional {
  L2Energy,       // sup ||u||_2^2 + int ||grad u||_2^2 ds, up to tau
  LpEnergy,       // sup ||u||_p^p + int sum_j ||grad |u_j|^{p/2}||_2^2 ds, up to tau
  TailIndicator,  // 1{LpEnergy >= M^p} at the path's cutoff level
};

/// Plain Monte-Carlo estimate over independent-seed paths (seed, seed+1, ...).
/// Deterministic given (cfg, paths, jobs-independent fixed reduction order).
EnsembleStats ensemble_expectation(const SolverConfig& cfg, const SpectralField& u0,
                                   int paths, EnsembleFunctional functional,
                                   int jobs = 1);

struct ConvergencePair {
  int m = 0, n = 0;
  double mean = 0.0;       // E[sup ||u_n - u_m||_p^p + int ||diff||_{3p}^p]
  double std_error = 0.0;
  int paths = 0;
};

/// Eq-style Cauchy diagnostics: coupled paths (same seed, hence identical
/// per-mode draws) at consecutive truncation levels, differences measured up
/// to tau_n ^ tau_m ^ horizon.
std::vector<ConvergencePair> cauchy_study(const SolverConfig& base,
                                          const std::vector<int>& n_list,
                                          const SpectralField& u0, int paths,
                                          int jobs = 1);

/// Deterministic (zero-noise) refinement differences sup_t ||u_n - u_ref||_p
/// for each n against the largest level; used for the spectral-convergence slope.
std::vector<double> deterministic_refinement(const SolverConfig& base,
                                             const std::vector<int>& n_list,
                                             const SpectralField& u0);

/// sup_t || EM path - Picard fixed point ||_p on identical draws.
double uniqueness_check(const SolverConfig& cfg, const SpectralField& u0,
                        double horizon, double tol, int max_iters);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace snse
