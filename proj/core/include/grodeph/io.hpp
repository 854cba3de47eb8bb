#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "grodeph/metrics.hpp"
#include "grodeph/problem.hpp"

namespace grodeph::io {

enum class Command { Simulate, Compare, Spectrum, Scaling, Walk };

/// Fully resolved experiment description. Every field is serialized into the
/// output files, so a run can be reproduced from any artifact it wrote.
struct ExperimentConfig {
  Command command = Command::Simulate;

  // Search problem (simulate / compare / walk).
  int n = 0;
  int k = 0;
  NoiseKind kind = NoiseKind::Decoupled;
  bool target_noisy = false;
  double p = 0.0;  // dephasing rate on the noisy normal set
  double q = 0.0;  // dephasing rate on the target (implies target_noisy)
  int steps = 0;
  bool analytic = false;  // add the closed-form column to `simulate`

  // Spectrum uses n, p, q.

  // Scaling.
  std::string grid = "2^6..2^16";  // "2^A..2^B" or comma-separated list
  double mu = -1.0;                // k = ceil(N^mu) when >= 0, else fixed k
  StoppingMode mode = StoppingMode::FixedM0;
  double cap_factor = 4.0;
  std::string fit_out;

  // Walk.
  std::string density = "uniform";  // uniform | point | custom
  double a = 1.0;
  double phi = 0.0;
  std::string density_file;  // whitespace-separated samples for `custom`
  int shots = 0;
  std::uint64_t seed = 1;

  std::string out;  // output path; empty writes to stdout

  bool operator==(const ExperimentConfig&) const = default;
};

/// Canonical single-line JSON form of the config (all fields, sorted keys).
std::string config_to_json(const ExperimentConfig& config);

/// Parses the JSON form; unknown keys and ill-typed values are rejected with
/// std::invalid_argument.
ExperimentConfig config_from_json(const std::string& json_text);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitResourceCap = 3;
inline constexpr int kExitNumeric = 4;

/// Executes the experiment, writing CSV/JSON products and human-readable
/// summaries to `status`. Returns one of the kExit* codes; error text goes
/// to `status` as well.
int run(const ExperimentConfig& config, std::ostream& status);

using CsvValue = std::variant<long long, double, std::string>;

struct CsvDocument {
  std::vector<std::string> comments;  // written as leading "# ..." lines
  std::vector<std::string> header;
  std::vector<std::vector<CsvValue>> rows;
};

/// Deterministic CSV: LF line endings, UTF-8, doubles as shortest
/// round-trip decimals. Non-finite numbers raise NumericError.
void write_csv(const CsvDocument& doc, std::ostream& out);
void write_csv_file(const CsvDocument& doc, const std::string& path);

std::string format_double(double value);

}  // namespace grodeph::io
