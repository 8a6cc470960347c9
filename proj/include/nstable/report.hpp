#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace nstable {

inline constexpr const char* kReportSchema = "nstable-report/1";
inline constexpr const char* kToolkitVersion = "0.1.0";

// One verdict row of an experiment: a named statistic, the value it took,
// the threshold it was held to, and whether it passed.  runtime_ms is
// informational and excluded from the determinism hash.
struct SimReport {
  std::string statistic_name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  double runtime_ms = 0.0;
};

// Fully resolved experiment description.  Optional fields are emitted only
// when set, so parse(emit(config)) == config field for field.
struct ExperimentConfig {
  std::string command;
  std::optional<std::string> index_spec;      // --N: offspring / index / generator
  std::optional<std::string> law_spec;        // --X: closed-form law
  std::optional<std::string> transform_spec;  // --L: Laplace transform
  std::optional<double> c;                    // --c: scale
  std::optional<std::string> c_grid;          // --c-grid: "a..b[,step]" or list
  std::optional<double> t;                    // --t: time horizon
  std::optional<std::uint64_t> k;             // --k: generation horizon
  std::uint64_t n = 10000;                    // --n: replicas / sample size
  std::uint64_t seed = 1;                     // --seed
  std::uint64_t order = 64;                   // --order: series truncation
  std::uint64_t threads = 0;                  // --threads: 0 = hardware default
  std::optional<std::string> out;             // --out: report path
};

nlohmann::json config_to_json(const ExperimentConfig& config);

// Strict parse: unknown keys or mistyped values throw std::invalid_argument.
ExperimentConfig config_from_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const SimReport& report);

// Assembled report document: schema tag, toolkit version, resolved config,
// verdict rows, and the determinism hash of everything except runtimes.
nlohmann::json experiment_report(const ExperimentConfig& config,
                                 const std::vector<SimReport>& reports);

// FNV-1a 64-bit hash (hex) of the canonical sorted-key serialization with
// every runtime_ms field removed: stable across re-runs of the same seed.
std::string report_hash(const nlohmann::json& report);

bool all_pass(const std::vector<SimReport>& reports);

// Grid text: either "a..b" (unit step), "a..b,step", or a comma-separated
// value list.  Throws std::invalid_argument on malformed text or grids
// larger than 100001 points.
std::vector<double> parse_c_grid(const std::string& text);

}  // namespace nstable
