#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "snse/field.hpp"
#include "snse/random_fields.hpp"

namespace snse {

/// Truncation of the cylindrical basis {e_k}: K modes.
struct NoiseBasis {
  int K = 16;
};

/// Independent N(0, dt) draws, one per basis mode.
struct WienerIncrement {
  std::vector<double> dW;
  double dt = 0.0;
};

WienerIncrement sample_increment(const NoiseBasis& basis, double dt, Rng& rng);

enum class NoiseVariant { Zero, Additive, LinearDiagonal };

/// Noise coefficient sigma mapping velocity fields to per-mode coefficient
/// fields sigma(u) e_k. Immutable after construction.
class NoiseModel {
 public:
  static NoiseModel zero();
  /// sigma(u) e_k = g_k, fixed divergence-free mean-zero fields with
  /// amplitude c_k = c0 k^{-beta}.
  static NoiseModel additive(const Grid& g, int K, double c0, double beta,
                             int kmax, std::uint64_t seed);
  /// sigma(u) e_k = c_k u with c_k = c0 k^{-beta}; linear, divergence- and
  /// mean-preserving by construction.
  static NoiseModel linear_diagonal(int K, double c0, double beta);

  NoiseVariant variant() const { return variant_; }
  const NoiseBasis& basis() const { return basis_; }
  const std::vector<double>& coeffs() const { return c_; }

  /// sigma(u) e_k for k = 1..K.
  std::vector<SpectralField> apply_sigma(const SpectralField& u) const;

  /// sum_k sigma(u) e_k dW_k, computed without materializing the list.
  SpectralField stochastic_increment(const SpectralField& u,
                                     const WienerIncrement& inc) const;

  double hs_mass() const;                   // sum_{k<=K} c_k^2
  double hs_tail(int K_full = 4096) const;  // sum_{k>K} c_k^2 for the decay law

  /// Same model acting on fields of a different resolution; additive basis
  /// fields are transferred mode by mode so coupled runs share one noise.
  NoiseModel on_grid(const Grid& g) const;

  std::string variant_name() const;

 private:
  NoiseVariant variant_ = NoiseVariant::Zero;
  NoiseBasis basis_{0};
  std::vector<double> c_;
  std::vector<SpectralField> g_;  // additive fields, already scaled by c_k
  double c0_ = 0.0, beta_ = 0.0;
};

/// Hilbert-Schmidt L^p norm of a mode list: pointwise l^2 over modes and
/// components, then lattice L^p.
double hs_lp_norm(const std::vector<SpectralField>& fields, double p);

struct AssumptionReport {
  struct RatioStat {
    double r = 0.0;
    double max_ratio = 0.0;
  };
  std::vector<RatioStat> growth;     // ||sigma(u)||_{L^r} / (||u||_r + 1), r in {2,p,3p}
  std::vector<RatioStat> lipschitz;  // ||sigma(u)-sigma(v)||_{L^r} / ||u-v||_r, r in {2,p}
  double max_gradient_ratio = 0.0;   // ||grad sigma(u)||_{L^2} / ||u||_2
  double max_divergence_residual = 0.0;
  double max_mean_residual = 0.0;
  double hs_tail = 0.0;
  bool pass = false;
};

/// Any map u -> {sigma(u) e_k} can be checked, including user models.
using SigmaFn = std::function<std::vector<SpectralField>(const SpectralField&)>;

/// Statistical check of the sub-linear growth, Lipschitz, gradient-sublinearity
/// and divergence/mean-preservation assumptions over a corpus of mean-zero
/// divergence-free fields.
AssumptionReport verify_assumptions(const SigmaFn& sigma,
                                    const std::vector<SpectralField>& corpus,
                                    double p, double hs_tail = 0.0);
AssumptionReport verify_assumptions(const NoiseModel& model,
                                    const std::vector<SpectralField>& corpus,
                                    double p);

}  // namespace snse
