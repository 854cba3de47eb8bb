// Command-line front end: five subcommands over the simulation library.
// A JSON config file supplies defaults; explicitly passed flags override it.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "grodeph/io.hpp"
#include "grodeph/version.hpp"

namespace {

using grodeph::io::Command;
using grodeph::io::ExperimentConfig;

struct Flags {
  std::string config_file;
  int n = 0;
  int k = 0;
  std::string kind = "decoupled";
  bool target_noisy = false;
  double p = 0.0;
  double q = 0.0;
  int steps = 0;
  bool analytic = false;
  std::string grid;
  double mu = -1.0;
  std::string mode = "fixed_m0";
  double cap_factor = 4.0;
  std::string fit_out;
  std::string density = "uniform";
  double a = 1.0;
  double phi = 0.0;
  std::string density_file;
  int shots = 0;
  std::uint64_t seed = 1;
  std::string out;
};

void add_problem_options(CLI::App* cmd, Flags& f) {
  cmd->add_option("--n", f.n, "database size N");
  cmd->add_option("--k", f.k, "number of noisy normal elements");
  cmd->add_option("--kind", f.kind, "noise kind: coupled | decoupled");
  cmd->add_flag("--target-noisy", f.target_noisy, "the target also dephases");
  cmd->add_option("--p", f.p, "dephasing rate on the noisy normal set");
  cmd->add_option("--q", f.q, "dephasing rate on the target (implies --target-noisy)");
}

ExperimentConfig load_base_config(const std::string& path) {
  if (path.empty()) return ExperimentConfig{};
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  return grodeph::io::config_from_json(buffer.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grover search under localized dephasing: simulators, closed "
               "forms, spectra, scaling scans and star-graph walks"};
  app.set_version_flag("--version", std::string(grodeph::kVersion));
  app.require_subcommand(1);

  Flags f;
  app.add_option("--config", f.config_file, "JSON config file; flags override it");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "reduced-propagator evolution trace (CSV)");
  add_problem_options(simulate, f);
  simulate->add_option("--steps", f.steps, "number of oracle calls");
  simulate->add_flag("--analytic", f.analytic, "add the closed-form column");
  simulate->add_option("--out", f.out, "output CSV path (default stdout)");

  CLI::App* compare = app.add_subcommand(
      "compare", "dense oracle vs reduced propagator vs closed form (CSV)");
  add_problem_options(compare, f);
  compare->add_option("--steps", f.steps, "number of oracle calls");
  compare->add_option("--out", f.out, "output CSV path (default stdout)");

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "first-order eigenvalue check of the 4-dim step (JSON)");
  spectrum->add_option("--n", f.n, "database size N");
  spectrum->add_option("--p", f.p, "dephasing rate on the normal set");
  spectrum->add_option("--q", f.q, "dephasing rate on the target");
  spectrum->add_option("--out", f.out, "output JSON path (default stdout)");

  CLI::App* scaling = app.add_subcommand(
      "scaling", "expected-cost scan over N with exponent fit (CSV + JSON)");
  scaling->add_option("--grid", f.grid, "N grid: '2^A..2^B' or 'n1,n2,...'");
  scaling->add_option("--k", f.k, "fixed noisy-set size");
  scaling->add_option("--mu", f.mu, "noisy-set size rule k = ceil(N^mu)");
  scaling->add_option("--kind", f.kind, "noise kind: coupled | decoupled");
  scaling->add_flag("--target-noisy", f.target_noisy, "the target also dephases");
  scaling->add_option("--p", f.p, "dephasing rate on the noisy normal set");
  scaling->add_option("--q", f.q, "dephasing rate on the target");
  scaling->add_option("--mode", f.mode, "stopping rule: fixed_m0 | minimized");
  scaling->add_option("--cap-factor", f.cap_factor, "scan window, multiples of m0");
  scaling->add_option("--out", f.out, "records CSV path (default stdout)");
  scaling->add_option("--fit-out", f.fit_out, "exponent-fit JSON path (default stdout)");

  CLI::App* walk = app.add_subcommand(
      "walk", "star-graph walk with faulty vertices (CSV)");
  walk->add_option("--n", f.n, "number of spokes");
  walk->add_option("--k", f.k, "number of faulty vertices (labels 2..k+1)");
  walk->add_option("--density", f.density, "phase density: uniform | point | custom");
  walk->add_option("--a", f.a, "half width of the density support");
  walk->add_option("--phi", f.phi, "point-mass phase");
  walk->add_option("--density-file", f.density_file,
                   "samples of a custom density over [-a, a]");
  walk->add_option("--steps", f.steps, "trace length in mapped search steps");
  walk->add_option("--shots", f.shots, "Monte Carlo shots (0 = averaged only)");
  walk->add_option("--seed", f.seed, "Monte Carlo seed");
  walk->add_option("--out", f.out, "output CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  ExperimentConfig cfg;
  try {
    cfg = load_base_config(f.config_file);
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << '\n';
    return grodeph::io::kExitConfigError;
  }

  CLI::App* active = app.get_subcommands().front();
  const std::string name = active->get_name();
  if (name == "simulate") cfg.command = Command::Simulate;
  if (name == "compare") cfg.command = Command::Compare;
  if (name == "spectrum") cfg.command = Command::Spectrum;
  if (name == "scaling") cfg.command = Command::Scaling;
  if (name == "walk") cfg.command = Command::Walk;

  const auto passed = [&](const std::string& flag) {
    const CLI::Option* opt = active->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  try {
    if (passed("--n")) cfg.n = f.n;
    if (passed("--k")) cfg.k = f.k;
    if (passed("--kind")) {
      if (f.kind == "coupled") cfg.kind = grodeph::NoiseKind::Coupled;
      else if (f.kind == "decoupled") cfg.kind = grodeph::NoiseKind::Decoupled;
      else throw std::invalid_argument("kind must be 'coupled' or 'decoupled'");
    }
    if (passed("--target-noisy")) cfg.target_noisy = f.target_noisy;
    if (passed("--p")) cfg.p = f.p;
    if (passed("--q")) {
      cfg.q = f.q;
      if (f.q > 0.0) cfg.target_noisy = true;
    }
    if (passed("--steps")) cfg.steps = f.steps;
    if (passed("--analytic")) cfg.analytic = f.analytic;
    if (passed("--grid")) cfg.grid = f.grid;
    if (passed("--mu")) cfg.mu = f.mu;
    if (passed("--mode")) {
      if (f.mode == "fixed_m0") cfg.mode = grodeph::StoppingMode::FixedM0;
      else if (f.mode == "minimized") cfg.mode = grodeph::StoppingMode::Minimized;
      else throw std::invalid_argument("mode must be 'fixed_m0' or 'minimized'");
    }
    if (passed("--cap-factor")) cfg.cap_factor = f.cap_factor;
    if (passed("--fit-out")) cfg.fit_out = f.fit_out;
    if (passed("--density")) cfg.density = f.density;
    if (passed("--a")) cfg.a = f.a;
    if (passed("--phi")) cfg.phi = f.phi;
    if (passed("--density-file")) cfg.density_file = f.density_file;
    if (passed("--shots")) cfg.shots = f.shots;
    if (passed("--seed")) cfg.seed = f.seed;
    if (passed("--out")) cfg.out = f.out;
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << '\n';
    return grodeph::io::kExitConfigError;
  }

  return grodeph::io::run(cfg, std::cout);
}
