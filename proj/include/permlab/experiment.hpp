#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "permlab/json_io.hpp"

namespace permlab {

inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// One CLI invocation. Every field round-trips through JSON; `out` and
/// `format` only choose where records go and are left out of the hash.
struct ExperimentConfig {
  std::string command;  // alpha | enumerate | mc | chain | growth | bounds
  std::uint64_t q = 3;
  std::vector<double> weights;  // empty: uniform
  std::size_t n = 0;
  std::size_t s = 1;
  std::size_t ell = 1;
  std::uint64_t N = 10'000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string stat = "per";
  Value z = 0;
  /// mc events: "per=z", "det=z", "E(s)", "E(s,ell)", "rankH>=r", "true".
  /// Empty event means stat = z.
  std::string event;
  std::string given;
  std::vector<std::string> claims;
  std::size_t T = 0;  // growth: 0 picks (T, delta) from epsilon
  double delta = 0;
  double epsilon = 0.2;
  IndexSet J;  // growth target set; empty means the first 2T columns
  std::string out;
  std::string format = "json";

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

Json to_json(const ExperimentConfig& config);
/// Throws BadConfig on unknown keys or wrongly typed values.
ExperimentConfig config_from_json(const Json& j);
/// Throws BadConfig / Usage for values the command cannot run with.
void validate(const ExperimentConfig& config);
/// FNV-1a 64 over the canonical JSON of the config minus out/format, as 16
/// hex digits.
std::string config_hash(const ExperimentConfig& config);

/// Parses the mc event grammar above.
MatrixEvent parse_event(const std::string& text, Value default_z, Statistic default_stat);

/// Runs the command and returns its records in emission order:
///   {schema, kind, version, config, config_hash, seed, workers, index, result}
std::vector<Json> run_experiment(const ExperimentConfig& config);

/// True when any bound_verdict record says VIOLATED.
bool any_violation(const std::vector<Json>& records);

struct ReplaySummary {
  std::size_t records = 0;
  std::size_t configs = 0;
  std::size_t traces_verified = 0;
};

/// Re-runs every distinct config found in a JSON-lines log and requires the
/// regenerated result of each record to be identical. Growth traces are also
/// checked step by step against a fresh permanent computation. Throws
/// ReplayMismatch.
ReplaySummary replay_log(std::istream& log);

/// Human-readable summary table.
std::string render_table(const std::vector<Json>& records);
/// Scalar result fields, one row per record; numbers are printed exactly as
/// in the JSON form.
std::string render_csv(const std::vector<Json>& records);

/// Appends JSON lines (or writes CSV) to `config.out`, falling back to
/// $PERMLAB_LOG_DIR/permlab.jsonl (.csv). Returns the path written, or empty
/// when neither is set.
std::string persist(const ExperimentConfig& config, const std::vector<Json>& records);

}  // namespace permlab
