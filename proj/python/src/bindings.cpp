#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pamdemap/analog_model.hpp"
#include "pamdemap/dynamics.hpp"
#include "pamdemap/error.hpp"
#include "pamdemap/harness.hpp"
#include "pamdemap/llr_source.hpp"
#include "pamdemap/metrics.hpp"
#include "pamdemap/reference_demappers.hpp"
#include "pamdemap/serialization.hpp"

namespace py = pybind11;
using namespace pamdemap;

namespace {

AnalogModeParams mode_by_id(const std::string& id) {
  for (auto m : {AnalogModeParams::ideal(), AnalogModeParams::bjt(), AnalogModeParams::mosfet()})
    if (m.id == id) return m;
  throw DemapError("unknown analog mode '" + id + "'");
}

py::dict paired_dict(const PairedEvaluation& ev) {
  py::dict out;
  for (std::size_t s = 0; s < ev.ids.size(); ++s) {
    py::dict row;
    row["per_bit_mi"] = ev.gmi[s].per_bit_mi;
    row["gmi"] = ev.gmi[s].gmi;
    row["std_error"] = ev.gmi[s].std_error;
    row["ber"] = ev.ber[s].ber;
    row["errors"] = ev.ber[s].errors;
    row["n_samples"] = ev.gmi[s].n_samples;
    out[py::str(ev.ids[s])] = row;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Analog 8-PAM demapper models";
  py::register_exception<DemapError>(m, "DemapError", PyExc_ValueError);

  py::class_<Constellation>(m, "Constellation")
      .def_static("pam", &Constellation::pam, py::arg("bits_per_symbol"))
      .def_property_readonly("d", &Constellation::d)
      .def_property_readonly("bits_per_symbol", &Constellation::bits_per_symbol)
      .def_property_readonly("points", [](const Constellation& c) {
        return std::vector<double>(c.points().begin(), c.points().end());
      })
      .def("label", &Constellation::label)
      .def("bit", &Constellation::bit, py::arg("i"), py::arg("k"))
      .def("map_bits", [](const Constellation& c, std::vector<int> bits) { return c.map_bits(bits); })
      .def("index_set", [](const Constellation& c, int k, int b) { return c.index_set(k, b).indices; });
  m.def("build_pam8", &build_pam8);

  py::class_<ChannelParams>(m, "ChannelParams")
      .def_static("from_snr_db", &ChannelParams::from_snr_db)
      .def_readonly("snr_db", &ChannelParams::snr_db)
      .def_readonly("sigma", &ChannelParams::sigma)
      .def_property_readonly("snr_linear", &ChannelParams::snr_linear);

  const auto c8 = std::make_shared<Constellation>(build_pam8());
  m.def("exact_llr", py::vectorize([c8](double r, int k, double snr_db) {
          return exact_llr(r, k, *c8, ChannelParams::from_snr_db(snr_db));
        }),
        py::arg("r"), py::arg("k"), py::arg("snr_db"));
  m.def("maxlog_llr", py::vectorize([c8](double r, int k, double snr_db) {
          return maxlog_llr(r, k, *c8, ChannelParams::from_snr_db(snr_db));
        }),
        py::arg("r"), py::arg("k"), py::arg("snr_db"));

  py::class_<AffineMap>(m, "AffineMap")
      .def(py::init<double, double>(), py::arg("scale"), py::arg("offset"))
      .def_readwrite("scale", &AffineMap::scale)
      .def_readwrite("offset", &AffineMap::offset)
      .def("apply", &AffineMap::apply)
      .def("invert", &AffineMap::invert);
  m.def("input_map", [c8](double vmin, double vmax) { return input_map(*c8, vmin, vmax); },
        py::arg("vmin") = 0.04, py::arg("vmax") = 0.60);
  m.def("fit_output_map",
        [](std::vector<double> vout, std::vector<double> ref, std::vector<double> weights) {
          return fit_output_map(vout, ref, weights);
        },
        py::arg("vout"), py::arg("ref"), py::arg("weights") = std::vector<double>{});

  py::class_<AnalogDemapper>(m, "AnalogDemapper")
      .def_readonly("id", &AnalogDemapper::id)
      .def_readonly("vdd", &AnalogDemapper::vdd)
      .def_readonly("input_map", &AnalogDemapper::input_map)
      .def("cell_count", [](const AnalogDemapper& d, int k) { return d.cells_for(k).size(); })
      .def("demap_static",
           [](const AnalogDemapper& d, py::array_t<double, py::array::c_style | py::array::forcecast> vin, int k) {
             py::array_t<double> out(vin.request().shape);
             auto* dst = out.mutable_data();
             const double* src = vin.data();
             for (py::ssize_t i = 0; i < vin.size(); ++i) dst[i] = demap_static(src[i], d, k);
             return out;
           },
           py::arg("vin"), py::arg("k"))
      .def("to_json", &demapper_to_json)
      .def_static("from_json", [](const std::string& s) { return demapper_from_json(s); });
  m.def("build_analog_demapper",
        [c8](const std::string& mode, double snr_db) {
          return build_analog_demapper(*c8, ChannelParams::from_snr_db(snr_db), mode_by_id(mode));
        },
        py::arg("mode") = "analog-mosfet", py::arg("snr_db") = 10.0);

  py::class_<CalibratedAnalogDemapper>(m, "CalibratedAnalogDemapper")
      .def_property_readonly("id", &CalibratedAnalogDemapper::id)
      .def_property_readonly("output_maps", &CalibratedAnalogDemapper::output_maps)
      .def_property_readonly("demapper", &CalibratedAnalogDemapper::demapper)
      .def("llrs", [](const CalibratedAnalogDemapper& d, double r) {
        std::vector<double> out(d.output_maps().size());
        d.llrs(r, out);
        return out;
      });
  m.def("calibrate",
        [c8](const AnalogDemapper& d, double snr_db) {
          return calibrate(d, *c8, ChannelParams::from_snr_db(snr_db));
        },
        py::arg("demapper"), py::arg("snr_db"));

  m.def("mi_bitwise",
        [](std::vector<int> bits, std::vector<double> llrs) {
          if (bits.size() != llrs.size()) throw DemapError("bits and llrs differ in length");
          std::vector<BitLlr> s(bits.size());
          for (std::size_t i = 0; i < bits.size(); ++i) s[i] = {bits[i], llrs[i]};
          return mi_bitwise(s);
        },
        py::arg("bits"), py::arg("llrs"));
  m.def("gmi", [](std::vector<double> v) { return gmi(v); });
  m.def("rate_penalty", &rate_penalty, py::arg("gmi_approx"), py::arg("gmi_exact"));
  m.def("hard_decide", &hard_decide);
  m.def("energy_per_bit", &energy_per_bit, py::arg("power_w"), py::arg("symbol_rate"),
        py::arg("bits_per_symbol"));

  m.def("evaluate_paired",
        [c8](double snr_db, std::vector<std::string> modes, std::uint64_t n, std::uint64_t seed,
             std::size_t workers) {
          const auto p = ChannelParams::from_snr_db(snr_db);
          std::vector<std::unique_ptr<LlrSource>> owned;
          owned.push_back(std::make_unique<ExactDemapper>(*c8, p));
          owned.push_back(std::make_unique<MaxLogDemapper>(*c8, p));
          for (const auto& id : modes)
            owned.push_back(std::make_unique<CalibratedAnalogDemapper>(
                calibrate(build_analog_demapper(*c8, p, mode_by_id(id)), *c8, p)));
          std::vector<const LlrSource*> srcs;
          for (const auto& o : owned) srcs.push_back(o.get());
          py::gil_scoped_release release;
          const auto ev = evaluate_paired(*c8, p, srcs, n, seed, workers);
          py::gil_scoped_acquire acquire;
          return paired_dict(ev);
        },
        py::arg("snr_db"), py::arg("modes") = std::vector<std::string>{"analog-bjt", "analog-mosfet"},
        py::arg("n") = 100000, py::arg("seed") = 1, py::arg("workers") = 0);

  m.def("simulate_transient",
        [](std::vector<double> seq, double rate, const AnalogDemapper& d, int k, bool bjt) {
          const auto t = simulate_transient(seq, rate, d, k, bjt ? DynamicsParams::bjt() : DynamicsParams::mosfet());
          return py::make_tuple(t.time, t.vout);
        },
        py::arg("symbols"), py::arg("symbol_rate"), py::arg("demapper"), py::arg("k"),
        py::arg("bjt_dynamics") = false);

  m.def("run_experiment",
        [](const std::string& experiment, const std::string& config_json,
           std::optional<std::uint64_t> seed, std::optional<std::size_t> workers) {
          auto cfg = ExperimentConfig::from_json(config_json.empty() ? "{}" : config_json, experiment);
          if (seed) cfg.seed = *seed;
          if (workers) cfg.workers = *workers;
          py::gil_scoped_release release;
          return run_experiment(cfg).to_csv();
        },
        py::arg("experiment"), py::arg("config_json") = "", py::arg("seed") = py::none(),
        py::arg("workers") = py::none());
}
