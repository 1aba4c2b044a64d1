#pragma once

// Experiment configuration and runners. Each runner returns a table whose
// rows carry the demapper id, seed and output calibration they came from.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pamdemap/analog_model.hpp"
#include "pamdemap/dynamics.hpp"

namespace pamdemap {

inline constexpr std::uint64_t kMinSampleCount = 1000;

struct ExperimentConfig {
  std::string experiment;  ///< llr-curves | rate-penalty | ber-vs-rate | transitions
  std::vector<double> snr_db;
  std::vector<std::string> demappers;
  std::uint64_t samples = 1'000'000;         ///< paired GMI samples per SNR
  std::uint64_t symbols_per_rate = 100'000;  ///< symbols per rate point
  std::optional<std::uint64_t> seed;
  std::size_t workers = 0;
  std::size_t llr_grid_points = 561;
  std::vector<double> rates_sps;
  double transition_period_s = 10e-9;
  CircuitConstants circuit;
  std::map<std::string, AnalogModeParams> modes;     ///< keyed by demapper id
  std::map<std::string, DynamicsParams> dynamics;    ///< keyed by demapper id
  std::map<std::string, std::string> demapper_files; ///< optional, keyed by demapper id
  std::string out;

  /// Defaults for one experiment; the seed is left unset.
  static ExperimentConfig defaults(const std::string& experiment);

  /// Fields present in `text` override the defaults of the experiment named
  /// there (or of `experiment` when given, which must then agree).
  static ExperimentConfig from_json(std::string_view text, const std::string& experiment = {});
  static ExperimentConfig load(const std::filesystem::path& path,
                               const std::string& experiment = {});

  void validate() const;
  std::string to_json() const;
};

const std::vector<std::string>& experiment_ids();
const std::vector<std::string>& demapper_ids();

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  std::string to_csv() const;
};

/// Shortest round-trip decimal form.
std::string format_number(double x);

Table run_llr_curves(const ExperimentConfig& cfg);
Table run_rate_penalty(const ExperimentConfig& cfg);
Table run_ber_vs_rate(const ExperimentConfig& cfg);
Table run_transitions(const ExperimentConfig& cfg);

/// Dispatches on cfg.experiment.
Table run_experiment(const ExperimentConfig& cfg);

/// Writes the CSV to `csv_path` and the resolved config next to it as
/// <csv_path>.meta.json.
void write_outputs(const Table& table, const ExperimentConfig& cfg,
                   const std::filesystem::path& csv_path);

}  // namespace pamdemap
