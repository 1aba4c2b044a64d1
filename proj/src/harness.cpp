#include "pamdemap/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pamdemap/constellation.hpp"
#include "pamdemap/error.hpp"
#include "pamdemap/llr_source.hpp"
#include "pamdemap/metrics.hpp"
#include "pamdemap/serialization.hpp"

namespace pamdemap {

using nlohmann::json;

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids{"llr-curves", "rate-penalty", "ber-vs-rate",
                                            "transitions"};
  return ids;
}

const std::vector<std::string>& demapper_ids() {
  static const std::vector<std::string> ids{"exact", "maxlog", "analog-ideal", "analog-bjt",
                                            "analog-mosfet"};
  return ids;
}

namespace {

bool is_analog(const std::string& id) { return id.rfind("analog-", 0) == 0; }

[[noreturn]] void bad_field(const std::string& field, const std::string& what) {
  throw DemapError("config field '" + field + "': " + what);
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) bad_field(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad_field(field, "must be finite");
  return v;
}

std::uint64_t get_count(const json& j, const std::string& field) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v >= 0.0 && v == std::floor(v) && v < 1.8e19) return static_cast<std::uint64_t>(v);
  }
  bad_field(field, "expected a non-negative integer");
}

std::string get_string(const json& j, const std::string& field) {
  if (!j.is_string()) bad_field(field, "expected a string");
  return j.get<std::string>();
}

std::vector<double> get_number_list(const json& j, const std::string& field) {
  if (j.is_number()) return {get_number(j, field)};
  if (!j.is_array()) bad_field(field, "expected a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(get_number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::string> get_string_list(const json& j, const std::string& field) {
  if (!j.is_array()) bad_field(field, "expected a list of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(get_string(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

void require_object(const json& j, const std::string& field) {
  if (!j.is_object()) bad_field(field, "expected an object");
}

void reject_unknown(const json& j, const std::string& field,
                    std::initializer_list<const char*> known) {
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; }))
      bad_field(field.empty() ? key : field + "." + key, "unknown field");
  }
}

void check_demapper_id(const std::string& id, const std::string& field) {
  const auto& ids = demapper_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end())
    bad_field(field, "unknown demapper '" + id +
                         "' (expected exact, maxlog, analog-ideal, analog-bjt or analog-mosfet)");
}

void check_analog_id(const std::string& id, const std::string& field) {
  check_demapper_id(id, field);
  if (!is_analog(id)) bad_field(field, "'" + id + "' is not an analog demapper");
}

std::vector<double> snr_range(int lo, int hi) {
  std::vector<double> v;
  for (int s = lo; s <= hi; ++s) v.push_back(s);
  return v;
}

std::string join_maps(const std::vector<AffineMap>& maps, bool scale) {
  std::string s;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (i) s += ';';
    s += format_number(scale ? maps[i].scale : maps[i].offset);
  }
  return s;
}

std::string seed_string(const ExperimentConfig& cfg) { return std::to_string(*cfg.seed); }

CalibratedAnalogDemapper make_analog(const ExperimentConfig& cfg, const std::string& id,
                                     const Constellation& c, const ChannelParams& p) {
  AnalogDemapper d;
  if (auto f = cfg.demapper_files.find(id); f != cfg.demapper_files.end()) {
    d = load_demapper(f->second);
    d.id = id;
  } else {
    d = build_analog_demapper(c, p, cfg.modes.at(id), cfg.circuit);
  }
  return calibrate(std::move(d), c, p);
}

std::unique_ptr<LlrSource> make_source(const ExperimentConfig& cfg, const std::string& id,
                                       const Constellation& c, const ChannelParams& p) {
  if (id == "exact") return std::make_unique<ExactDemapper>(c, p);
  if (id == "maxlog") return std::make_unique<MaxLogDemapper>(c, p);
  return std::make_unique<CalibratedAnalogDemapper>(make_analog(cfg, id, c, p));
}

const std::vector<AffineMap>* maps_of(const LlrSource& s) {
  if (auto* a = dynamic_cast<const CalibratedAnalogDemapper*>(&s)) return &a->output_maps();
  return nullptr;
}

void check_ready(const ExperimentConfig& cfg, const char* experiment) {
  if (cfg.experiment != experiment)
    throw DemapError(std::string("config is for experiment '") + cfg.experiment + "', not '" +
                     experiment + "'");
  cfg.validate();
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) return "0";
  if (std::abs(x) < 1e15 && x == std::floor(x)) return std::to_string(static_cast<long long>(x));
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

ExperimentConfig ExperimentConfig::defaults(const std::string& experiment) {
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  for (auto mode : {AnalogModeParams::ideal(), AnalogModeParams::bjt(), AnalogModeParams::mosfet()})
    cfg.modes[mode.id] = mode;
  cfg.dynamics["analog-ideal"] = DynamicsParams::mosfet();
  cfg.dynamics["analog-bjt"] = DynamicsParams::bjt();
  cfg.dynamics["analog-mosfet"] = DynamicsParams::mosfet();
  for (int i = 1; i <= 10; ++i) cfg.rates_sps.push_back(50e6 * i);

  if (experiment == "rate-penalty") {
    cfg.snr_db = snr_range(-2, 16);
    cfg.demappers = {"exact", "maxlog", "analog-bjt", "analog-mosfet"};
  } else if (experiment == "ber-vs-rate" || experiment == "transitions") {
    cfg.snr_db = {10.0};
    cfg.demappers = {"analog-bjt", "analog-mosfet"};
  } else {
    cfg.snr_db = {10.0};
    cfg.demappers = {"exact", "maxlog", "analog-bjt", "analog-mosfet"};
  }
  cfg.out = experiment + ".csv";
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json(std::string_view text,
                                             const std::string& experiment) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DemapError(std::string("config is not valid JSON: ") + e.what());
  }
  require_object(j, "<root>");
  reject_unknown(j, "",
                 {"experiment", "seed", "snr_db", "demappers", "samples", "symbols_per_rate",
                  "workers", "llr_grid_points", "rates_sps", "transition_period_s", "circuit",
                  "modes", "dynamics", "out"});

  std::string id = experiment;
  if (j.contains("experiment")) {
    const std::string named = get_string(j["experiment"], "experiment");
    if (!id.empty() && named != id)
      bad_field("experiment", "config names '" + named + "' but '" + id + "' was requested");
    id = named;
  }
  if (id.empty()) bad_field("experiment", "missing");
  const auto& ids = experiment_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end())
    bad_field("experiment", "unknown experiment '" + id + "'");

  ExperimentConfig cfg = defaults(id);
  if (j.contains("seed")) cfg.seed = get_count(j["seed"], "seed");
  if (j.contains("snr_db")) cfg.snr_db = get_number_list(j["snr_db"], "snr_db");
  if (j.contains("demappers")) cfg.demappers = get_string_list(j["demappers"], "demappers");
  if (j.contains("samples")) cfg.samples = get_count(j["samples"], "samples");
  if (j.contains("symbols_per_rate"))
    cfg.symbols_per_rate = get_count(j["symbols_per_rate"], "symbols_per_rate");
  if (j.contains("workers")) cfg.workers = get_count(j["workers"], "workers");
  if (j.contains("llr_grid_points"))
    cfg.llr_grid_points = get_count(j["llr_grid_points"], "llr_grid_points");
  if (j.contains("rates_sps")) cfg.rates_sps = get_number_list(j["rates_sps"], "rates_sps");
  if (j.contains("transition_period_s"))
    cfg.transition_period_s = get_number(j["transition_period_s"], "transition_period_s");
  if (j.contains("out")) cfg.out = get_string(j["out"], "out");

  if (j.contains("circuit")) {
    const json& cj = j["circuit"];
    require_object(cj, "circuit");
    reject_unknown(cj, "circuit", {"vdd", "rout_ohm", "vin_min", "vin_max", "map_vmin", "map_vmax"});
    auto num = [&](const char* key, double& dst) {
      if (cj.contains(key)) dst = get_number(cj[key], std::string("circuit.") + key);
    };
    num("vdd", cfg.circuit.vdd);
    num("rout_ohm", cfg.circuit.rout_ohm);
    num("vin_min", cfg.circuit.vin_min);
    num("vin_max", cfg.circuit.vin_max);
    num("map_vmin", cfg.circuit.map_vmin);
    num("map_vmax", cfg.circuit.map_vmax);
  }

  if (j.contains("modes")) {
    require_object(j["modes"], "modes");
    for (const auto& [mid, mj] : j["modes"].items()) {
      const std::string field = "modes." + mid;
      check_analog_id(mid, field);
      require_object(mj, field);
      reject_unknown(mj, field, {"knee_eps", "ibias_a", "demapper_file"});
      auto& mode = cfg.modes[mid];
      if (mj.contains("knee_eps")) mode.knee_eps = get_number(mj["knee_eps"], field + ".knee_eps");
      if (mj.contains("ibias_a")) mode.ibias_a = get_number(mj["ibias_a"], field + ".ibias_a");
      if (mj.contains("demapper_file"))
        cfg.demapper_files[mid] = get_string(mj["demapper_file"], field + ".demapper_file");
    }
  }

  if (j.contains("dynamics")) {
    require_object(j["dynamics"], "dynamics");
    for (const auto& [mid, dj] : j["dynamics"].items()) {
      const std::string field = "dynamics." + mid;
      check_analog_id(mid, field);
      require_object(dj, field);
      reject_unknown(dj, field, {"tau", "t_plateau", "samples_per_symbol", "sample_fraction"});
      auto& dp = cfg.dynamics[mid];
      if (dj.contains("tau")) dp.tau = get_number(dj["tau"], field + ".tau");
      if (dj.contains("t_plateau")) dp.t_plateau = get_number(dj["t_plateau"], field + ".t_plateau");
      if (dj.contains("samples_per_symbol"))
        dp.samples_per_symbol =
            static_cast<int>(get_count(dj["samples_per_symbol"], field + ".samples_per_symbol"));
      if (dj.contains("sample_fraction"))
        dp.sample_fraction = get_number(dj["sample_fraction"], field + ".sample_fraction");
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path,
                                        const std::string& experiment) {
  std::ifstream in(path);
  if (!in) throw DemapError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str(), experiment);
}

void ExperimentConfig::validate() const {
  const auto& ids = experiment_ids();
  if (std::find(ids.begin(), ids.end(), experiment) == ids.end())
    bad_field("experiment", "unknown experiment '" + experiment + "'");
  if (!seed) bad_field("seed", "required; set it in the config or with --seed");
  if (snr_db.empty()) bad_field("snr_db", "must list at least one SNR");
  for (double s : snr_db)
    if (!std::isfinite(s)) bad_field("snr_db", "values must be finite");
  if (demappers.empty()) bad_field("demappers", "must list at least one demapper");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < demappers.size(); ++i) {
    const std::string field = "demappers[" + std::to_string(i) + "]";
    check_demapper_id(demappers[i], field);
    if (!seen.insert(demappers[i]).second) bad_field(field, "duplicate '" + demappers[i] + "'");
    if ((experiment == "ber-vs-rate" || experiment == "transitions") && !is_analog(demappers[i]))
      bad_field(field, "experiment " + experiment + " only runs analog demappers");
  }
  if (samples < kMinSampleCount)
    bad_field("samples", "must be >= " + std::to_string(kMinSampleCount) + " (got " +
                             std::to_string(samples) + ")");
  const std::uint64_t min_symbols =
      experiment == "ber-vs-rate" ? std::max<std::uint64_t>(kMinSampleCount, kMinRateSymbols)
                                  : kMinSampleCount;
  if (symbols_per_rate < min_symbols)
    bad_field("symbols_per_rate", "must be >= " + std::to_string(min_symbols) + " (got " +
                                      std::to_string(symbols_per_rate) + ")");
  if (llr_grid_points < 2) bad_field("llr_grid_points", "must be >= 2");
  if (experiment == "ber-vs-rate" && rates_sps.empty())
    bad_field("rates_sps", "must list at least one symbol rate");
  for (double r : rates_sps)
    if (!(r > 0.0)) bad_field("rates_sps", "symbol rates must be > 0");
  if (!(transition_period_s > 0.0)) bad_field("transition_period_s", "must be > 0");

  if (!(circuit.vdd > 0.0)) bad_field("circuit.vdd", "must be > 0");
  if (!(circuit.rout_ohm > 0.0)) bad_field("circuit.rout_ohm", "must be > 0");
  if (!(circuit.vin_min < circuit.vin_max)) bad_field("circuit.vin_min", "must be < vin_max");
  if (circuit.vin_max > kMaxInputVoltage)
    bad_field("circuit.vin_max", "must be <= " + format_number(kMaxInputVoltage) + " V");
  if (!(circuit.map_vmin < circuit.map_vmax)) bad_field("circuit.map_vmin", "must be < map_vmax");
  if (circuit.map_vmin < circuit.vin_min || circuit.map_vmax > circuit.vin_max)
    bad_field("circuit.map_vmin", "mapped swing must lie inside [vin_min, vin_max]");

  for (const auto& [id, mode] : modes) {
    if (!(mode.knee_eps >= 0.0)) bad_field("modes." + id + ".knee_eps", "must be >= 0");
    if (!(mode.ibias_a >= 0.0)) bad_field("modes." + id + ".ibias_a", "must be >= 0");
  }
  for (const auto& [id, dp] : dynamics) {
    try {
      dp.validate();
    } catch (const DemapError& e) {
      bad_field("dynamics." + id, e.what());
    }
  }
  for (const auto& id : demappers) {
    if (!is_analog(id)) continue;
    if (!modes.count(id) && !demapper_files.count(id)) bad_field("modes." + id, "missing");
    if ((experiment == "ber-vs-rate" || experiment == "transitions") && !dynamics.count(id))
      bad_field("dynamics." + id, "missing");
  }
  if (out.empty()) bad_field("out", "must not be empty");
}

std::string ExperimentConfig::to_json() const {
  json j;
  j["experiment"] = experiment;
  if (seed) j["seed"] = *seed;
  j["snr_db"] = snr_db;
  j["demappers"] = demappers;
  j["samples"] = samples;
  j["symbols_per_rate"] = symbols_per_rate;
  j["workers"] = workers;
  j["llr_grid_points"] = llr_grid_points;
  j["rates_sps"] = rates_sps;
  j["transition_period_s"] = transition_period_s;
  j["circuit"] = {{"vdd", circuit.vdd},           {"rout_ohm", circuit.rout_ohm},
                  {"vin_min", circuit.vin_min},   {"vin_max", circuit.vin_max},
                  {"map_vmin", circuit.map_vmin}, {"map_vmax", circuit.map_vmax}};
  json modes_j = json::object();
  for (const auto& [id, m] : modes) {
    modes_j[id] = {{"knee_eps", m.knee_eps}, {"ibias_a", m.ibias_a}};
    if (auto f = demapper_files.find(id); f != demapper_files.end())
      modes_j[id]["demapper_file"] = f->second;
  }
  j["modes"] = std::move(modes_j);
  json dyn = json::object();
  for (const auto& [id, dp] : dynamics)
    dyn[id] = {{"tau", dp.tau},
               {"t_plateau", dp.t_plateau},
               {"samples_per_symbol", dp.samples_per_symbol},
               {"sample_fraction", dp.sample_fraction}};
  j["dynamics"] = std::move(dyn);
  j["out"] = out;
  return j.dump(2) + "\n";
}

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw DemapError("table has no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::string Table::to_csv() const {
  std::string s;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) s += ',';
      s += cells[i];
    }
    s += '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return s;
}

Table run_llr_curves(const ExperimentConfig& cfg) {
  check_ready(cfg, "llr-curves");
  const Constellation c = build_pam8();
  const AffineMap in = input_map(c, cfg.circuit.map_vmin, cfg.circuit.map_vmax);
  Table t{{"snr_db", "demapper_id", "k", "vin_v", "r", "llr", "gamma_k", "zeta_k", "seed"}, {}};
  std::vector<double> llr(static_cast<std::size_t>(c.bits_per_symbol()));
  const std::size_t n = cfg.llr_grid_points;

  for (double snr : cfg.snr_db) {
    const ChannelParams p = ChannelParams::from_snr_db(snr);
    for (const auto& id : cfg.demappers) {
      const auto src = make_source(cfg, id, c, p);
      const auto* maps = maps_of(*src);
      for (std::size_t i = 0; i < n; ++i) {
        const double vin = (cfg.circuit.map_vmin * static_cast<double>(n - 1 - i) +
                            cfg.circuit.map_vmax * static_cast<double>(i)) /
                           static_cast<double>(n - 1);
        const double r = i == 0 ? -c.outer() : (i + 1 == n ? c.outer() : in.invert(vin));
        src->llrs(r, llr);
        for (int k = 1; k <= c.bits_per_symbol(); ++k) {
          const auto kk = static_cast<std::size_t>(k - 1);
          t.rows.push_back({format_number(snr), id, std::to_string(k), format_number(vin),
                            format_number(r), format_number(llr[kk]),
                            maps ? format_number((*maps)[kk].scale) : "",
                            maps ? format_number((*maps)[kk].offset) : "", seed_string(cfg)});
        }
      }
    }
  }
  return t;
}

Table run_rate_penalty(const ExperimentConfig& cfg) {
  check_ready(cfg, "rate-penalty");
  const Constellation c = build_pam8();
  Table t{{"snr_db", "demapper_id", "mi_b1", "mi_b2", "mi_b3", "gmi", "penalty_pct", "ber",
           "n_samples", "std_err", "penalty_std_err_pct", "gamma_k", "zeta_k", "seed"},
          {}};
  std::vector<std::string> ids = cfg.demappers;
  if (std::find(ids.begin(), ids.end(), "exact") == ids.end()) ids.insert(ids.begin(), "exact");

  for (double snr : cfg.snr_db) {
    const ChannelParams p = ChannelParams::from_snr_db(snr);
    std::vector<std::unique_ptr<LlrSource>> owned;
    std::vector<const LlrSource*> sources;
    for (const auto& id : ids) {
      owned.push_back(make_source(cfg, id, c, p));
      sources.push_back(owned.back().get());
    }
    const PairedEvaluation ev = evaluate_paired(c, p, sources, cfg.samples, *cfg.seed, cfg.workers);
    const std::size_t ref = ev.index_of("exact");
    const double gmi_exact = ev.gmi[ref].gmi;
    for (std::size_t s = 0; s < sources.size(); ++s) {
      const auto& g = ev.gmi[s];
      const auto* maps = maps_of(*sources[s]);
      std::vector<std::string> row{format_number(snr), ids[s]};
      for (double mi : g.per_bit_mi) row.push_back(format_number(mi));
      row.push_back(format_number(g.gmi));
      row.push_back(format_number(s == ref ? 0.0 : rate_penalty(g.gmi, gmi_exact)));
      row.push_back(format_number(ev.ber[s].ber));
      row.push_back(std::to_string(g.n_samples));
      row.push_back(format_number(g.std_error));
      row.push_back(format_number(s == ref ? 0.0
                                           : 100.0 * ev.difference_std_error(s, ref) / gmi_exact));
      row.push_back(maps ? join_maps(*maps, true) : "");
      row.push_back(maps ? join_maps(*maps, false) : "");
      row.push_back(seed_string(cfg));
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table run_ber_vs_rate(const ExperimentConfig& cfg) {
  check_ready(cfg, "ber-vs-rate");
  const Constellation c = build_pam8();
  Table t{{"snr_db", "demapper_id", "rate_sps", "ber", "errors", "bits", "std_err", "gamma_k",
           "zeta_k", "seed"},
          {}};
  auto push = [&](double snr, const RateRow& r, const std::vector<AffineMap>* maps) {
    const auto est = BerEstimate::from_counts(r.errors, r.bits);
    t.rows.push_back({format_number(snr), r.demapper_id, format_number(r.rate_sps),
                      format_number(r.ber), std::to_string(r.errors), std::to_string(r.bits),
                      format_number(est.std_error()), maps ? join_maps(*maps, true) : "",
                      maps ? join_maps(*maps, false) : "", seed_string(cfg)});
  };

  for (double snr : cfg.snr_db) {
    const ChannelParams p = ChannelParams::from_snr_db(snr);
    const SymbolStream symbols = generate_symbols(c, p, cfg.symbols_per_rate, *cfg.seed);
    RateRow ref = static_ber(c, symbols, ExactDemapper(c, p));
    ref.rate_sps = 0.0;
    push(snr, ref, nullptr);
    for (const auto& id : cfg.demappers) {
      const auto d = make_analog(cfg, id, c, p);
      for (const auto& row : ber_vs_rate(cfg.rates_sps, c, p, d, cfg.dynamics.at(id),
                                         cfg.symbols_per_rate, *cfg.seed, cfg.workers))
        push(snr, row, &d.output_maps());
    }
  }
  return t;
}

Table run_transitions(const ExperimentConfig& cfg) {
  check_ready(cfg, "transitions");
  const Constellation c = build_pam8();
  const ChannelParams p = ChannelParams::from_snr_db(cfg.snr_db.front());
  const double d = c.d();
  const int m = c.bits_per_symbol();
  Table t{{"transition", "demapper_id", "time_s"}, {}};
  for (int k = 1; k <= m; ++k) t.columns.push_back("vout_b" + std::to_string(k) + "_v");
  t.columns.push_back("seed");

  const struct {
    const char* name;
    double from, to;
  } transitions[] = {{"+3d_to_+7d", 3 * d, 7 * d}, {"-7d_to_-5d", -7 * d, -5 * d}};

  for (const auto& tr : transitions) {
    const double seq[] = {tr.from, tr.to};
    for (const auto& id : cfg.demappers) {
      AnalogDemapper dm;
      if (auto f = cfg.demapper_files.find(id); f != cfg.demapper_files.end())
        dm = load_demapper(f->second);
      else
        dm = build_analog_demapper(c, p, cfg.modes.at(id), cfg.circuit);
      const auto& dp = cfg.dynamics.at(id);
      std::vector<TransientTrace> traces;
      for (int k = 1; k <= m; ++k)
        traces.push_back(simulate_transient(seq, 1.0 / cfg.transition_period_s, dm, k, dp));
      for (std::size_t i = 0; i < traces[0].time.size(); ++i) {
        std::vector<std::string> row{tr.name, id,
                                     format_number(traces[0].time[i] - cfg.transition_period_s)};
        for (const auto& tr_k : traces) row.push_back(format_number(tr_k.vout[i]));
        row.push_back(seed_string(cfg));
        t.rows.push_back(std::move(row));
      }
    }
  }
  return t;
}

Table run_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment == "llr-curves") return run_llr_curves(cfg);
  if (cfg.experiment == "rate-penalty") return run_rate_penalty(cfg);
  if (cfg.experiment == "ber-vs-rate") return run_ber_vs_rate(cfg);
  if (cfg.experiment == "transitions") return run_transitions(cfg);
  bad_field("experiment", "unknown experiment '" + cfg.experiment + "'");
}

void write_outputs(const Table& table, const ExperimentConfig& cfg,
                   const std::filesystem::path& csv_path) {
  if (csv_path.has_parent_path()) std::filesystem::create_directories(csv_path.parent_path());
  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw DemapError("cannot open '" + csv_path.string() + "' for writing");
    out << table.to_csv();
  }
  json meta;
  meta["experiment"] = cfg.experiment;
  meta["csv"] = csv_path.filename().string();
  meta["columns"] = table.columns;
  meta["rows"] = table.rows.size();
  meta["config"] = json::parse(cfg.to_json());
  std::filesystem::path meta_path = csv_path;
  meta_path += ".meta.json";
  std::ofstream out(meta_path, std::ios::binary);
  if (!out) throw DemapError("cannot open '" + meta_path.string() + "' for writing");
  out << meta.dump(2) << "\n";
}

}  // namespace pamdemap
