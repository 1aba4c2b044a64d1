// demap: run one experiment and write its CSV table plus metadata.
//
//   demap <experiment> --config <path> [--seed N] [--snr-db LIST] [--out PATH]
//   demap synthesize --mode analog-mosfet --snr-db 10 --out demapper.json
//
// Precedence: built-in defaults < config file < command-line flags.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pamdemap/channel.hpp"
#include "pamdemap/constellation.hpp"
#include "pamdemap/error.hpp"
#include "pamdemap/harness.hpp"
#include "pamdemap/serialization.hpp"

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, end - pos);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size())
      throw pamdemap::DemapError("--snr-db: '" + item + "' is not a number");
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analog 8-PAM demapper experiments"};
  app.require_subcommand(1);

  std::string config_path, out_path, snr_text;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;

  std::vector<CLI::App*> runs;
  for (const auto& id : pamdemap::experiment_ids()) {
    auto* sub = app.add_subcommand(id, "Run the " + id + " experiment");
    sub->add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Master seed");
    sub->add_option("--snr-db", snr_text, "Comma-separated SNR list in dB");
    sub->add_option("--out", out_path, "Output CSV path");
    sub->add_option("--workers", workers, "Worker threads (0 = all cores)");
    runs.push_back(sub);
  }

  std::string mode = "analog-mosfet";
  double synth_snr = 10.0;
  std::string synth_out = "demapper.json";
  auto* synth = app.add_subcommand("synthesize", "Write an analog demapper description file");
  synth->add_option("--mode", mode, "analog-ideal, analog-bjt or analog-mosfet");
  synth->add_option("--snr-db", synth_snr, "SNR of the max-log target in dB");
  synth->add_option("--out", synth_out, "Output JSON path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      auto cfg = pamdemap::ExperimentConfig::defaults("llr-curves");
      const auto it = cfg.modes.find(mode);
      if (it == cfg.modes.end()) throw pamdemap::DemapError("--mode: unknown mode '" + mode + "'");
      const auto c = pamdemap::build_pam8();
      const auto d = pamdemap::build_analog_demapper(
          c, pamdemap::ChannelParams::from_snr_db(synth_snr), it->second, cfg.circuit);
      pamdemap::save_demapper(d, synth_out);
      std::cout << "wrote " << synth_out << "\n";
      return 0;
    }

    CLI::App* sub = nullptr;
    for (auto* s : runs)
      if (s->parsed()) sub = s;
    const std::string experiment = sub->get_name();

    auto cfg = config_path.empty() ? pamdemap::ExperimentConfig::defaults(experiment)
                                   : pamdemap::ExperimentConfig::load(config_path, experiment);
    if (seed) cfg.seed = *seed;
    if (!snr_text.empty()) cfg.snr_db = parse_list(snr_text);
    if (!out_path.empty()) cfg.out = out_path;
    if (workers) cfg.workers = *workers;
    cfg.validate();

    const auto table = pamdemap::run_experiment(cfg);
    pamdemap::write_outputs(table, cfg, cfg.out);
    std::cout << "wrote " << cfg.out << " (" << table.rows.size() << " rows)\n";
    return 0;
  } catch (const pamdemap::DemapError& e) {
    std::cerr << "demap: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "demap: error: " << e.what() << "\n";
    return 1;
  }
}
