#include "grodeph/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "grodeph/analytics.hpp"
#include "grodeph/errors.hpp"
#include "grodeph/full_sim.hpp"
#include "grodeph/reduced.hpp"
#include "grodeph/spectral.hpp"
#include "grodeph/version.hpp"
#include "grodeph/walk.hpp"

namespace grodeph::io {

namespace {

using nlohmann::json;

std::string kind_name(NoiseKind kind) {
  return kind == NoiseKind::Coupled ? "coupled" : "decoupled";
}

NoiseKind kind_from(const std::string& name) {
  if (name == "coupled") return NoiseKind::Coupled;
  if (name == "decoupled") return NoiseKind::Decoupled;
  throw std::invalid_argument("kind must be 'coupled' or 'decoupled'");
}

std::string mode_name(StoppingMode mode) {
  return mode == StoppingMode::FixedM0 ? "fixed_m0" : "minimized";
}

StoppingMode mode_from(const std::string& name) {
  if (name == "fixed_m0") return StoppingMode::FixedM0;
  if (name == "minimized") return StoppingMode::Minimized;
  throw std::invalid_argument("mode must be 'fixed_m0' or 'minimized'");
}

std::string command_name(Command command) {
  switch (command) {
    case Command::Simulate: return "simulate";
    case Command::Compare: return "compare";
    case Command::Spectrum: return "spectrum";
    case Command::Scaling: return "scaling";
    case Command::Walk: return "walk";
  }
  return "simulate";
}

Command command_from(const std::string& name) {
  if (name == "simulate") return Command::Simulate;
  if (name == "compare") return Command::Compare;
  if (name == "spectrum") return Command::Spectrum;
  if (name == "scaling") return Command::Scaling;
  if (name == "walk") return Command::Walk;
  throw std::invalid_argument("unknown command '" + name + "'");
}

json config_json(const ExperimentConfig& c) {
  json j;
  j["command"] = command_name(c.command);
  j["n"] = c.n;
  j["k"] = c.k;
  j["kind"] = kind_name(c.kind);
  j["target_noisy"] = c.target_noisy;
  j["p"] = c.p;
  j["q"] = c.q;
  j["steps"] = c.steps;
  j["analytic"] = c.analytic;
  j["grid"] = c.grid;
  j["mu"] = c.mu;
  j["mode"] = mode_name(c.mode);
  j["cap_factor"] = c.cap_factor;
  j["fit_out"] = c.fit_out;
  j["density"] = c.density;
  j["a"] = c.a;
  j["phi"] = c.phi;
  j["density_file"] = c.density_file;
  j["shots"] = c.shots;
  j["seed"] = c.seed;
  j["out"] = c.out;
  return j;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& config) {
  return config_json(config).dump();
}

ExperimentConfig config_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

  static const json defaults = config_json(ExperimentConfig{});
  for (const auto& [key, value] : j.items()) {
    if (!defaults.contains(key))
      throw std::invalid_argument("unknown config key '" + key + "'");
    (void)value;
  }

  ExperimentConfig c;
  try {
    if (j.contains("command")) c.command = command_from(j["command"].get<std::string>());
    if (j.contains("n")) c.n = j["n"].get<int>();
    if (j.contains("k")) c.k = j["k"].get<int>();
    if (j.contains("kind")) c.kind = kind_from(j["kind"].get<std::string>());
    if (j.contains("target_noisy")) c.target_noisy = j["target_noisy"].get<bool>();
    if (j.contains("p")) c.p = j["p"].get<double>();
    if (j.contains("q")) c.q = j["q"].get<double>();
    if (j.contains("steps")) c.steps = j["steps"].get<int>();
    if (j.contains("analytic")) c.analytic = j["analytic"].get<bool>();
    if (j.contains("grid")) c.grid = j["grid"].get<std::string>();
    if (j.contains("mu")) c.mu = j["mu"].get<double>();
    if (j.contains("mode")) c.mode = mode_from(j["mode"].get<std::string>());
    if (j.contains("cap_factor")) c.cap_factor = j["cap_factor"].get<double>();
    if (j.contains("fit_out")) c.fit_out = j["fit_out"].get<std::string>();
    if (j.contains("density")) c.density = j["density"].get<std::string>();
    if (j.contains("a")) c.a = j["a"].get<double>();
    if (j.contains("phi")) c.phi = j["phi"].get<double>();
    if (j.contains("density_file")) c.density_file = j["density_file"].get<std::string>();
    if (j.contains("shots")) c.shots = j["shots"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) c.out = j["out"].get<std::string>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("ill-typed config value: ") + e.what());
  }
  return c;
}

std::string format_double(double value) {
  if (!std::isfinite(value))
    throw NumericError("non-finite value in output");
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

void write_csv(const CsvDocument& doc, std::ostream& out) {
  for (const std::string& comment : doc.comments) out << "# " << comment << '\n';
  for (std::size_t i = 0; i < doc.header.size(); ++i) {
    if (i) out << ',';
    out << doc.header[i];
  }
  out << '\n';
  for (const auto& row : doc.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const auto* iv = std::get_if<long long>(&row[i]))
        out << *iv;
      else if (const auto* dv = std::get_if<double>(&row[i]))
        out << format_double(*dv);
      else
        out << std::get<std::string>(row[i]);
    }
    out << '\n';
  }
}

void write_csv_file(const CsvDocument& doc, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
  write_csv(doc, file);
}

namespace {

std::vector<std::string> provenance(const ExperimentConfig& config,
                                    const std::string& schema) {
  return {"grodeph " + std::string(kVersion), "schema: " + schema,
          "config: " + config_to_json(config)};
}

void emit_csv(const CsvDocument& doc, const std::string& path, std::ostream& status) {
  if (path.empty())
    write_csv(doc, status);
  else
    write_csv_file(doc, path);
}

void emit_text(const std::string& text, const std::string& path, std::ostream& status) {
  if (path.empty()) {
    status << text << '\n';
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
  file << text << '\n';
}

void check_problem_fields(const ExperimentConfig& c) {
  if (c.steps < 0) throw std::invalid_argument("steps must be non-negative");
  if (c.q > 0.0 && !c.target_noisy)
    throw std::invalid_argument("q > 0 requires target_noisy");
}

struct ResolvedProblem {
  ProblemSpec spec;
  NoiseParams noise;
  double base_rate;
};

ResolvedProblem resolve_problem(const ExperimentConfig& c) {
  const ProblemSpec spec = select_basis(c.n, c.k, c.kind, c.target_noisy);
  // target_noisy without an explicit q means the target shares the base rate.
  const NoiseParams noise = (c.target_noisy && c.q > 0.0)
                                ? make_noise_params(spec, c.p, c.q)
                                : make_noise_params(spec, c.p);
  return {spec, noise, c.p};
}

double analytic_value(const ExperimentConfig& c, const ResolvedProblem& rp, int m) {
  switch (rp.spec.basis_kind) {
    case BasisKind::EqualTreatment4:
      // The resolved params already carry this basis' (normal, target) rates.
      return approx_equal_treatment(c.n, rp.noise.p, rp.noise.q, m).value;
    case BasisKind::Coupled6:
    case BasisKind::General7:
      if (c.kind == NoiseKind::Coupled) {
        const int effective_k = c.target_noisy ? c.n - c.k - 1 : c.k;
        return approx_coupled(c.n, effective_k, c.p, m).value;
      }
      return approx_decoupled_general(
                 c.n, c.k, c.p,
                 c.target_noisy ? (c.q > 0.0 ? c.q : c.p) : 0.0, m)
          .value;
  }
  return 0.0;
}

int run_simulate(const ExperimentConfig& c, std::ostream& status) {
  check_problem_fields(c);
  const ResolvedProblem rp = resolve_problem(c);
  const EvolutionTrace reduced = evolve(rp.spec, rp.noise, c.steps);

  CsvDocument doc;
  doc.comments = provenance(c, "grodeph.trace.v1");
  doc.header = {"m", "p_reduced"};
  if (c.analytic) doc.header.push_back("p_analytic");
  for (const TracePoint& pt : reduced.points) {
    std::vector<CsvValue> row{static_cast<long long>(pt.step), pt.p_success};
    if (c.analytic) row.emplace_back(analytic_value(c, rp, pt.step));
    doc.rows.push_back(std::move(row));
  }
  emit_csv(doc, c.out, status);
  return kExitOk;
}

int run_compare(const ExperimentConfig& c, std::ostream& status) {
  check_problem_fields(c);
  const ResolvedProblem rp = resolve_problem(c);
  const EvolutionTrace reduced = evolve(rp.spec, rp.noise, c.steps);

  // The dense oracle applies one uniform rate to the whole noisy set; an
  // independent target rate only exists there when the target is the set.
  double dense_rate = c.p;
  if (c.target_noisy) {
    const double target_rate = c.q > 0.0 ? c.q : c.p;
    if (c.k == 0)
      dense_rate = target_rate;
    else if (target_rate != c.p)
      throw std::invalid_argument(
          "compare supports a noisy target only at the shared base rate (q == p)");
  }
  const NoiseConfig full_noise = make_noise_config(rp.spec, dense_rate);
  const EvolutionTrace full = evolve_full(c.n, full_noise, c.steps);

  CsvDocument doc;
  doc.comments = provenance(c, "grodeph.trace.v1");
  doc.header = {"m", "p_full", "p_reduced", "p_analytic"};
  double max_dev_reduced = 0.0;
  double max_dev_analytic = 0.0;
  for (const TracePoint& pt : reduced.points) {
    const double p_full = full.at(pt.step);
    const double p_analytic = analytic_value(c, rp, pt.step);
    max_dev_reduced = std::max(max_dev_reduced, std::abs(p_full - pt.p_success));
    max_dev_analytic = std::max(max_dev_analytic, std::abs(p_full - p_analytic));
    doc.rows.push_back(std::vector<CsvValue>{static_cast<long long>(pt.step), p_full,
                                             pt.p_success, p_analytic});
  }
  emit_csv(doc, c.out, status);
  status << "max |p_full - p_reduced| = " << format_double(max_dev_reduced) << '\n';
  status << "max |p_full - p_analytic| = " << format_double(max_dev_analytic) << '\n';
  const ApproxResult region = approx_for(rp.spec, c.p, c.steps);
  status << "approximation region: "
         << (region.validity == Validity::InRegion ? "in" : "out") << " ("
         << region.constraint_note << ")\n";
  return kExitOk;
}

int run_spectrum(const ExperimentConfig& c, std::ostream& status) {
  const SpectrumReport report = verify_perturbation(c.n, c.p, c.q);
  json j;
  j["version"] = std::string(kVersion);
  j["config"] = config_json(c);
  auto complex_array = [](const std::vector<Complex>& values) {
    json arr = json::array();
    for (const Complex& z : values) arr.push_back({{"re", z.real()}, {"im", z.imag()}});
    return arr;
  };
  j["eigenvalues"] = complex_array(report.eigenvalues);
  j["predicted"] = complex_array(report.predicted);
  j["pairing"] = report.pairing;
  j["max_abs_error"] = report.max_abs_error;
  emit_text(j.dump(2), c.out, status);
  return kExitOk;
}

std::vector<int> parse_grid(const std::string& text) {
  std::vector<int> values;
  if (text.rfind("2^", 0) == 0 && text.find("..") != std::string::npos) {
    const auto dots = text.find("..");
    const std::string lo_text = text.substr(2, dots - 2);
    const std::string hi_part = text.substr(dots + 2);
    if (hi_part.rfind("2^", 0) != 0)
      throw std::invalid_argument("grid range must look like 2^A..2^B");
    const int lo = std::stoi(lo_text);
    const int hi = std::stoi(hi_part.substr(2));
    if (lo < 2 || hi < lo || hi > 30)
      throw std::invalid_argument("grid exponents must satisfy 2 <= A <= B <= 30");
    for (int e = lo; e <= hi; ++e) values.push_back(1 << e);
    return values;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stoi(item));
  }
  if (values.empty()) throw std::invalid_argument("grid is empty");
  return values;
}

int run_scaling(const ExperimentConfig& c, std::ostream& status) {
  GridConfig grid;
  grid.n_values = parse_grid(c.grid);
  grid.k_rule = c.mu >= 0.0 ? NoisySetRule::power_law(c.mu) : NoisySetRule::fixed(c.k);
  grid.kind = c.kind;
  grid.target_noisy = c.target_noisy;
  grid.normal_rate = c.p;
  grid.target_rate = c.q;
  grid.mode = c.mode;
  grid.scan_cap_factor = c.cap_factor;

  std::vector<std::string> errors;
  const std::vector<ScalingRecord> records = scaling_scan(grid, &errors);
  for (const std::string& err : errors) status << "skipped " << err << '\n';
  if (records.empty()) throw std::invalid_argument("no usable grid points");

  CsvDocument doc;
  doc.comments = provenance(c, "grodeph.scaling.v1");
  doc.header = {"N", "k", "p", "q", "kind", "mode", "m_used", "mbar"};
  for (const ScalingRecord& rec : records) {
    doc.rows.push_back(std::vector<CsvValue>{
        static_cast<long long>(rec.n_elements), static_cast<long long>(rec.noisy_count),
        rec.p, rec.q, kind_name(rec.kind), mode_name(rec.mode),
        static_cast<long long>(rec.m_used), rec.mbar});
  }
  emit_csv(doc, c.out, status);

  const ExponentFit fit = fit_exponent(records);
  json j;
  j["version"] = std::string(kVersion);
  j["config"] = config_json(c);
  j["beta"] = fit.beta;
  j["stderr"] = fit.stderr_;
  j["n_min"] = fit.n_min;
  j["n_max"] = fit.n_max;
  if (c.mu >= 0.0) j["mu"] = c.mu;
  emit_text(j.dump(2), c.fit_out, status);
  return kExitOk;
}

PhaseDensity density_from_config(const ExperimentConfig& c) {
  if (c.density == "uniform") return PhaseDensity::uniform(c.a);
  if (c.density == "point") return PhaseDensity::point_mass(c.phi);
  if (c.density == "custom") {
    std::ifstream file(c.density_file);
    if (!file)
      throw std::invalid_argument("cannot open density_file '" + c.density_file + "'");
    std::vector<double> samples;
    double v = 0.0;
    while (file >> v) samples.push_back(v);
    return PhaseDensity::custom(c.a, std::move(samples));
  }
  throw std::invalid_argument("density must be 'uniform', 'point' or 'custom'");
}

int run_walk(const ExperimentConfig& c, std::ostream& status) {
  if (c.steps < 0) throw std::invalid_argument("steps must be non-negative");
  const StarWalkSpec spec = make_star_walk(c.n, c.k, density_from_config(c));
  const EvolutionTrace averaged = simulate_walk_averaged(spec, c.steps);

  EvolutionTrace sampled;
  if (c.shots > 0)
    sampled = simulate_walk_montecarlo(spec, c.steps, c.shots, c.seed);

  CsvDocument doc;
  doc.comments = provenance(c, "grodeph.walk.v1");
  doc.header = {"m", "p_walk"};
  if (c.shots > 0) {
    doc.header.push_back("p_mc");
    doc.header.push_back("stderr");
  }
  for (std::size_t i = 0; i < averaged.points.size(); ++i) {
    std::vector<CsvValue> row{static_cast<long long>(averaged.points[i].step),
                              averaged.points[i].p_success};
    if (c.shots > 0) {
      row.emplace_back(sampled.points[i].p_success);
      row.emplace_back(sampled.std_error[i]);
    }
    doc.rows.push_back(std::move(row));
  }
  emit_csv(doc, c.out, status);
  return kExitOk;
}

}  // namespace

int run(const ExperimentConfig& config, std::ostream& status) {
  try {
    switch (config.command) {
      case Command::Simulate: return run_simulate(config, status);
      case Command::Compare: return run_compare(config, status);
      case Command::Spectrum: return run_spectrum(config, status);
      case Command::Scaling: return run_scaling(config, status);
      case Command::Walk: return run_walk(config, status);
    }
    throw std::invalid_argument("unknown command");
  } catch (const ResourceCapError& e) {
    status << "error: " << e.what() << '\n';
    return kExitResourceCap;
  } catch (const NumericError& e) {
    status << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    status << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    status << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace grodeph::io
