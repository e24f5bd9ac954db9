// snse: spectral Galerkin runs for the stochastic incompressible flow model
// on the periodic unit box, plus the empirical verification battery.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "snse/config.hpp"
#include "snse/diagnostics.hpp"
#include "snse/fft.hpp"
#include "snse/norms.hpp"
#include "snse/operators.hpp"
#include "snse/snapshot.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace snse;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_root;
  int jobs = 1;
  int paths = 64;
  std::vector<int> levels{8, 16, 32};
  // config overrides; sentinel = untouched
  int n = -1;
  int grid_points = -1;
  double dt = -1.0;
  double horizon = -1.0;
  double p = -1.0;
  double cutoff_M = -1.0;
  std::string noise_type;
  long long seed = -1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "run configuration file");
  cmd->add_option("--out", o.out_root, "output root (default $SNSE_OUT or ./out)");
  cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--n", o.n, "truncation index override");
  cmd->add_option("--grid", o.grid_points, "grid points per axis override");
  cmd->add_option("--dt", o.dt, "time step override");
  cmd->add_option("--horizon", o.horizon, "horizon override");
  cmd->add_option("--p", o.p, "integrability exponent override");
  cmd->add_option("--cutoff-M", o.cutoff_M, "stopping level override (0 = auto)");
  cmd->add_option("--noise", o.noise_type, "noise type override")
      ->check(CLI::IsMember({"zero", "additive", "linear"}));
  cmd->add_option("--seed", o.seed, "seed override");
}

RunConfig load_config(const CommonOpts& o) {
  RunConfig cfg = o.config_path.empty() ? RunConfig::defaults()
                                        : RunConfig::from_file(o.config_path);
  if (o.n >= 0) cfg.set("grid", "n", std::to_string(o.n));
  if (o.grid_points >= 0) cfg.set("grid", "points", std::to_string(o.grid_points));
  if (o.dt > 0.0) cfg.set("solver", "dt", std::to_string(o.dt));
  if (o.horizon > 0.0) cfg.set("solver", "horizon", std::to_string(o.horizon));
  if (o.p > 0.0) cfg.set("solver", "p", std::to_string(o.p));
  if (o.cutoff_M >= 0.0) cfg.set("solver", "cutoff_M", std::to_string(o.cutoff_M));
  if (!o.noise_type.empty()) cfg.set("noise", "type", o.noise_type);
  if (o.seed >= 0) cfg.set("solver", "seed", std::to_string(o.seed));
  return cfg;
}

fs::path prepare_run_dir(const CommonOpts& o, const RunConfig& cfg,
                         const std::string& command) {
  std::string root = o.out_root;
  if (root.empty()) {
    const char* env = std::getenv("SNSE_OUT");
    root = env ? env : "out";
  }
  const fs::path dir = fs::path(root) / cfg.content_hash();
  fs::create_directories(dir / "reports");
  fs::create_directories(dir / "data");
  fs::create_directories(dir / "fields");

  json manifest;
  manifest["command"] = command;
  manifest["config_hash"] = cfg.content_hash();
  manifest["config"] = cfg.canonical();
  manifest["started_at_unix"] = std::chrono::duration_cast<std::chrono::seconds>(
                                    std::chrono::system_clock::now().time_since_epoch())
                                    .count();
  std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';
  return dir;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path);
  os << j.dump(2) << '\n';
  std::cout << "wrote " << path.string() << '\n';
}

int run_simulate(const CommonOpts& o) {
  const RunConfig cfg = load_config(o);
  const SolverConfig sc = cfg.solver_config();
  sc.validate();
  const fs::path dir = prepare_run_dir(o, cfg, "simulate");

  const SpectralField u0 = cfg.initial_datum(sc.grid());
  const TrajectoryRecord rec = simulate_path(sc, u0);

  {
    std::ofstream csv(dir / "data" / "trajectory.csv");
    csv << "t,norm_2,grad_2,norm_p,norm_3p,energy_grad_p,monitor_stat,stopped\n";
    for (const auto& r : rec.rows)
      csv << r.t << ',' << r.norm_2 << ',' << r.grad_2 << ',' << r.norm_p << ','
          << r.norm_3p << ',' << r.energy_grad_p << ',' << r.monitor_stat << ','
          << (r.stopped ? 1 : 0) << '\n';
  }
  save_snapshot((dir / "fields" / "final.bin").string(), rec.final_state,
                cubic_index(sc.n), rec.rows.empty() ? 0.0 : rec.rows.back().t);

  json rep;
  rep["tau"] = rec.tau;
  rep["stopped"] = rec.stopped;
  rep["blown_up"] = rec.blown_up;
  rep["cutoff_M"] = rec.cutoff_M;
  rep["steps"] = rec.rows.size();
  rep["final_norm_2"] = l2_norm(rec.final_state);
  rep["pass"] = !rec.blown_up;
  write_json(dir / "reports" / "simulate.json", rep);
  std::cout << "tau = " << rec.tau << (rec.stopped ? " (stopped)" : "")
            << (rec.blown_up ? " (blown up)" : "") << '\n';
  return rec.blown_up ? 1 : 0;
}

int run_ensemble(const CommonOpts& o) {
  const RunConfig cfg = load_config(o);
  const SolverConfig sc = cfg.solver_config();
  sc.validate();
  const fs::path dir = prepare_run_dir(o, cfg, "ensemble");
  const SpectralField u0 = cfg.initial_datum(sc.grid());

  const EnsembleStats e2 =
      ensemble_expectation(sc, u0, o.paths, EnsembleFunctional::L2Energy, o.jobs);
  const EnsembleStats ep =
      ensemble_expectation(sc, u0, o.paths, EnsembleFunctional::LpEnergy, o.jobs);
  const EnsembleStats tail =
      ensemble_expectation(sc, u0, o.paths, EnsembleFunctional::TailIndicator, o.jobs);

  json rep;
  auto pack = [](const EnsembleStats& s) {
    return json{{"paths", s.paths},
                {"mean", s.mean},
                {"variance", s.variance},
                {"std_error", s.std_error}};
  };
  rep["l2_energy"] = pack(e2);
  rep["lp_energy"] = pack(ep);
  rep["tail_probability"] = pack(tail);
  const bool pass = std::isfinite(e2.mean) && std::isfinite(ep.mean);
  rep["pass"] = pass;
  write_json(dir / "reports" / "ensemble.json", rep);
  std::cout << "E[l2 energy] = " << e2.mean << " +- " << e2.std_error << '\n'
            << "E[lp energy] = " << ep.mean << " +- " << ep.std_error << '\n'
            << "P[tail]      = " << tail.mean << '\n';
  return pass ? 0 : 1;
}

int run_cauchy(const CommonOpts& o) {
  const RunConfig cfg = load_config(o);
  const SolverConfig sc = cfg.solver_config();
  sc.validate();
  const fs::path dir = prepare_run_dir(o, cfg, "cauchy");
  const int n_max = *std::max_element(o.levels.begin(), o.levels.end());
  const Grid gref(sc.dim, 4 * n_max + 2);
  const SpectralField u0 = cfg.initial_datum(gref);

  const auto pairs = cauchy_study(sc, o.levels, u0, o.paths, o.jobs);
  {
    std::ofstream csv(dir / "data" / "cauchy.csv");
    csv << "m,n,mean,std_error,paths\n";
    for (const auto& p : pairs)
      csv << p.m << ',' << p.n << ',' << p.mean << ',' << p.std_error << ','
          << p.paths << '\n';
  }
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < pairs.size(); ++i)
    decreasing = decreasing && pairs[i + 1].mean < pairs[i].mean;

  json rep;
  rep["levels"] = o.levels;
  for (const auto& p : pairs)
    rep["pairs"].push_back({{"m", p.m},
                            {"n", p.n},
                            {"mean", p.mean},
                            {"std_error", p.std_error}});
  rep["decreasing"] = decreasing;
  rep["pass"] = decreasing;
  write_json(dir / "reports" / "cauchy.json", rep);
  for (const auto& p : pairs)
    std::cout << "levels (" << p.m << ", " << p.n << "): " << p.mean << " +- "
              << p.std_error << '\n';
  std::cout << (decreasing ? "PASS" : "FAIL")
            << ": consecutive-level differences decreasing\n";
  return decreasing ? 0 : 1;
}

int run_assumptions(const CommonOpts& o) {
  const RunConfig cfg = load_config(o);
  const SolverConfig sc = cfg.solver_config();
  const fs::path dir = prepare_run_dir(o, cfg, "assumptions");
  const Grid g = sc.grid();

  Rng rng(sc.seed);
  std::vector<SpectralField> corpus;
  for (int i = 0; i < 12; ++i) {
    SpectralField u = random_divergence_free(g, std::min(sc.n, 6), rng);
    u *= std::pow(2.0, i % 5 - 2);  // span a few magnitudes
    corpus.push_back(std::move(u));
  }
  const AssumptionReport rep = verify_assumptions(*sc.noise, corpus, sc.p);

  json j;
  j["noise"] = sc.noise->variant_name();
  for (const auto& s : rep.growth)
    j["growth"].push_back({{"r", s.r}, {"max_ratio", s.max_ratio}});
  for (const auto& s : rep.lipschitz)
    j["lipschitz"].push_back({{"r", s.r}, {"max_ratio", s.max_ratio}});
  j["max_gradient_ratio"] = rep.max_gradient_ratio;
  j["max_divergence_residual"] = rep.max_divergence_residual;
  j["max_mean_residual"] = rep.max_mean_residual;
  j["hs_tail"] = rep.hs_tail;
  j["pass"] = rep.pass;
  write_json(dir / "reports" / "assumptions.json", j);
  std::cout << (rep.pass ? "PASS" : "FAIL") << ": noise assumption battery ("
            << sc.noise->variant_name() << ")\n";
  return rep.pass ? 0 : 1;
}

int run_verify(const CommonOpts& o) {
  const RunConfig cfg = load_config(o);
  const fs::path dir = prepare_run_dir(o, cfg, "verify");
  json rep;
  bool all = true;
  auto verdict = [&](const std::string& name, bool ok, json detail) {
    detail["pass"] = ok;
    rep[name] = std::move(detail);
    all = all && ok;
    std::cout << (ok ? "PASS" : "FAIL") << ": " << name << '\n';
  };

  {
    // truncation decay and uniform boundedness on a 1-D corpus of slowly
    // decaying spectra
    const Grid g(1, 1024);
    Rng rng(7);
    std::vector<SpectralField> corpus;
    for (int i = 0; i < 8; ++i)
      corpus.push_back(random_decay_spectrum(g, 1, 128, 1.6, rng));
    const std::vector<int> ladder{4, 8, 16, 32, 64};
    for (double q : {2.0, 4.0}) {
      const DecayStudy ds = operator_decay_study(q, ladder, corpus);
      verdict("truncation_decay_q" + std::to_string(int(q)), ds.pass,
              {{"fitted_slope", ds.fitted_slope}, {"predicted", ds.predicted}});
      const UniformBoundStudy us = uniform_bound_study(q, ladder, corpus);
      verdict("uniform_bound_q" + std::to_string(int(q)), us.pass,
              {{"variation", us.variation}, {"max_ratio", us.max_ratio}});
    }
  }
  {
    // interpolation-compactness ratio finite on smooth 3-D fields
    const Grid g(3, 32);
    Rng rng(11);
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
      const SpectralField f = random_decay_spectrum(g, 1, 6, 2.0, rng);
      worst = std::max(worst, gn_ratio(f, 4.0));
    }
    verdict("embedding_ratio_finite", std::isfinite(worst) && worst > 0.0,
            {{"max_ratio", worst}});
  }
  {
    const SolverConfig sc = cfg.solver_config();
    sc.validate();
    const Grid g = sc.grid();
    Rng rng(13);
    std::vector<SpectralField> corpus;
    for (int i = 0; i < 8; ++i)
      corpus.push_back(random_divergence_free(g, std::min(sc.n, 6), rng));
    const AssumptionReport ar = verify_assumptions(*sc.noise, corpus, sc.p);
    verdict("noise_assumptions", ar.pass,
            {{"max_divergence_residual", ar.max_divergence_residual},
             {"max_mean_residual", ar.max_mean_residual}});

    // short stopped run must be finite and report tau >= 0
    SolverConfig quick = sc;
    quick.horizon = std::min(sc.horizon, 20 * sc.dt);
    const TrajectoryRecord rec = simulate_path(quick, cfg.initial_datum(g));
    verdict("short_run_finite", !rec.blown_up && rec.tau >= 0.0,
            {{"tau", rec.tau}, {"stopped", rec.stopped}});
  }

  rep["pass"] = all;
  write_json(dir / "reports" / "verify.json", rep);
  std::cout << (all ? "PASS" : "FAIL") << ": verification battery\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral Galerkin runs for stochastic incompressible flow"};
  app.require_subcommand(1);

  CommonOpts opts;
  CLI::App* simulate = app.add_subcommand("simulate", "integrate one path");
  CLI::App* ensemble = app.add_subcommand("ensemble", "Monte-Carlo energy statistics");
  CLI::App* cauchy = app.add_subcommand("cauchy", "coupled truncation-level differences");
  CLI::App* assumptions = app.add_subcommand("assumptions", "noise assumption battery");
  CLI::App* verify = app.add_subcommand("verify", "operator and solver verification battery");
  for (CLI::App* cmd : {simulate, ensemble, cauchy, assumptions, verify})
    add_common(cmd, opts);
  for (CLI::App* cmd : {ensemble, cauchy})
    cmd->add_option("--paths", opts.paths, "Monte-Carlo paths")->check(CLI::PositiveNumber);
  cauchy->add_option("--levels", opts.levels, "truncation ladder");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(opts);
    if (ensemble->parsed()) return run_ensemble(opts);
    if (cauchy->parsed()) return run_cauchy(opts);
    if (assumptions->parsed()) return run_assumptions(opts);
    if (verify->parsed()) return run_verify(opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    const std::string msg = e.what();
    if (msg.find("dealias") != std::string::npos ||
        msg.find("4n+2") != std::string::npos)
      std::cerr << "hint: quadratic products of band-n fields need at least "
                   "4n+2 grid points per axis; raise --grid or lower --n\n";
    return 2;
  }
  return 2;
}
