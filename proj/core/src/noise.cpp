#include "snse/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "snse/fft.hpp"
#include "snse/norms.hpp"
#include "snse/operators.hpp"

namespace snse {

WienerIncrement sample_increment(const NoiseBasis& basis, double dt, Rng& rng) {
  if (dt < 0.0) throw std::invalid_argument("sample_increment: dt must be >= 0");
  WienerIncrement inc;
  inc.dt = dt;
  inc.dW.resize(basis.K);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double scale = std::sqrt(dt);
  for (int k = 0; k < basis.K; ++k) inc.dW[k] = scale * gauss(rng);
  return inc;
}

NoiseModel NoiseModel::zero() {
  NoiseModel m;
  m.variant_ = NoiseVariant::Zero;
  m.basis_ = NoiseBasis{1};
  m.c_ = {0.0};
  return m;
}

NoiseModel NoiseModel::additive(const Grid& g, int K, double c0, double beta,
                                int kmax, std::uint64_t seed) {
  NoiseModel m;
  m.variant_ = NoiseVariant::Additive;
  m.basis_ = NoiseBasis{K};
  m.c0_ = c0;
  m.beta_ = beta;
  Rng rng(seed);
  for (int k = 1; k <= K; ++k) {
    const double ck = c0 * std::pow(double(k), -beta);
    m.c_.push_back(ck);
    SpectralField gk = g.dim >= 2 ? random_divergence_free(g, kmax, rng)
                                  : random_trig_poly(g, 1, kmax, rng);
    const double norm = l2_norm(gk);
    if (norm > 0.0) gk *= ck / norm;
    m.g_.push_back(std::move(gk));
  }
  return m;
}

NoiseModel NoiseModel::linear_diagonal(int K, double c0, double beta) {
  NoiseModel m;
  m.variant_ = NoiseVariant::LinearDiagonal;
  m.basis_ = NoiseBasis{K};
  m.c0_ = c0;
  m.beta_ = beta;
  for (int k = 1; k <= K; ++k)
    m.c_.push_back(c0 * std::pow(double(k), -beta));
  return m;
}

std::vector<SpectralField> NoiseModel::apply_sigma(const SpectralField& u) const {
  std::vector<SpectralField> out;
  out.reserve(basis_.K);
  switch (variant_) {
    case NoiseVariant::Zero:
      for (int k = 0; k < basis_.K; ++k)
        out.emplace_back(u.grid, u.comps);
      break;
    case NoiseVariant::Additive:
      for (const auto& gk : g_) out.push_back(gk);
      break;
    case NoiseVariant::LinearDiagonal:
      if (!is_mean_zero(u))
        throw std::invalid_argument("apply_sigma: field must have zero mean");
      for (double ck : c_) out.push_back(ck * u);
      break;
  }
  return out;
}

SpectralField NoiseModel::stochastic_increment(const SpectralField& u,
                                               const WienerIncrement& inc) const {
  if (static_cast<int>(inc.dW.size()) < basis_.K)
    throw std::invalid_argument("stochastic_increment: increment/basis size mismatch");
  SpectralField acc(u.grid, u.comps);
  switch (variant_) {
    case NoiseVariant::Zero:
      break;
    case NoiseVariant::Additive:
      for (int k = 0; k < basis_.K; ++k) {
        SpectralField term = g_[k];
        term *= inc.dW[k];
        acc += term;
      }
      break;
    case NoiseVariant::LinearDiagonal: {
      double weight = 0.0;
      for (int k = 0; k < basis_.K; ++k) weight += c_[k] * inc.dW[k];
      acc = u;
      acc *= weight;
      break;
    }
  }
  return acc;
}

double NoiseModel::hs_mass() const {
  double s = 0.0;
  for (double ck : c_) s += ck * ck;
  return s;
}

double NoiseModel::hs_tail(int K_full) const {
  if (variant_ == NoiseVariant::Zero || beta_ == 0.0) return 0.0;
  double s = 0.0;
  for (int k = basis_.K + 1; k <= K_full; ++k) {
    const double ck = c0_ * std::pow(double(k), -beta_);
    s += ck * ck;
  }
  return s;
}

NoiseModel NoiseModel::on_grid(const Grid& g) const {
  NoiseModel m = *this;
  for (auto& gk : m.g_) gk = transfer_modes(gk, g);
  return m;
}

std::string NoiseModel::variant_name() const {
  switch (variant_) {
    case NoiseVariant::Zero: return "zero";
    case NoiseVariant::Additive: return "additive";
    case NoiseVariant::LinearDiagonal: return "linear";
  }
  return "?";
}

double hs_lp_norm(const std::vector<SpectralField>& fields, double p) {
  if (fields.empty()) throw std::invalid_argument("hs_lp_norm: empty mode list");
  const Grid& g = fields.front().grid;
  const std::size_t total = g.total();
  std::vector<double> mag2(total, 0.0);
  for (const auto& F : fields) {
    if (!(F.grid == g)) throw std::invalid_argument("hs_lp_norm: grid mismatch");
    PhysicalField f = inverse_transform(F);
    for (std::size_t i = 0; i < total; ++i)
      for (int c = 0; c < F.comps; ++c)
        mag2[i] += f.data[c][i] * f.data[c][i];
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < total; ++i) acc += std::pow(mag2[i], p / 2.0);
  return std::pow(acc / total, 1.0 / p);
}

AssumptionReport verify_assumptions(const SigmaFn& sigma,
                                    const std::vector<SpectralField>& corpus,
                                    double p, double hs_tail) {
  AssumptionReport rep;
  const double rs_growth[3] = {2.0, p, 3.0 * p};
  const double rs_lip[2] = {2.0, p};
  for (double r : rs_growth) rep.growth.push_back({r, 0.0});
  for (double r : rs_lip) rep.lipschitz.push_back({r, 0.0});
  rep.hs_tail = hs_tail;

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const SpectralField& u = corpus[i];
    auto su = sigma(u);
    for (std::size_t ri = 0; ri < 3; ++ri) {
      const double r = rs_growth[ri];
      const double num = hs_lp_norm(su, r);
      rep.growth[ri].max_ratio =
          std::max(rep.growth[ri].max_ratio, num / (lp_norm(u, r) + 1.0));
    }
    // gradient sublinearity
    std::vector<SpectralField> grads;
    for (const auto& sk : su)
      for (int a = 0; a < u.grid.dim; ++a) grads.push_back(derivative(sk, a));
    const double u2 = l2_norm(u);
    if (u2 > 0.0)
      rep.max_gradient_ratio =
          std::max(rep.max_gradient_ratio, hs_lp_norm(grads, 2.0) / u2);
    // preserved divergence and mean
    for (const auto& sk : su) {
      rep.max_divergence_residual =
          std::max(rep.max_divergence_residual, divergence_linf(sk));
      rep.max_mean_residual = std::max(rep.max_mean_residual, sk.mean_magnitude());
    }
    // Lipschitz against the next corpus element
    if (i + 1 < corpus.size()) {
      const SpectralField& v = corpus[i + 1];
      auto sv = sigma(v);
      std::vector<SpectralField> diff;
      for (std::size_t k = 0; k < su.size(); ++k) diff.push_back(su[k] - sv[k]);
      const SpectralField duv = u - v;
      for (std::size_t ri = 0; ri < 2; ++ri) {
        const double r = rs_lip[ri];
        const double den = lp_norm(duv, r);
        if (den > 0.0)
          rep.lipschitz[ri].max_ratio =
              std::max(rep.lipschitz[ri].max_ratio, hs_lp_norm(diff, r) / den);
      }
    }
  }

  bool finite = std::isfinite(rep.max_gradient_ratio);
  for (const auto& s : rep.growth) finite = finite && std::isfinite(s.max_ratio);
  for (const auto& s : rep.lipschitz) finite = finite && std::isfinite(s.max_ratio);
  rep.pass = finite && rep.max_divergence_residual < 1e-10 &&
             rep.max_mean_residual < 1e-10;
  return rep;
}

AssumptionReport verify_assumptions(const NoiseModel& model,
                                    const std::vector<SpectralField>& corpus,
                                    double p) {
  return verify_assumptions(
      [&model](const SpectralField& u) { return model.apply_sigma(u); }, corpus,
      p, model.hs_tail());
}

}  // namespace snse
