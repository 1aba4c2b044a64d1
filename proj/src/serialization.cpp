#include "pamdemap/serialization.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pamdemap/error.hpp"

namespace pamdemap {

using nlohmann::json;

namespace {

const char* to_string(Polarity p) { return p == Polarity::pos ? "pos" : "neg"; }
const char* to_string(Orientation o) {
  return o == Orientation::ramp_below ? "ramp_below" : "ramp_above";
}

Polarity polarity_from(const std::string& s) {
  if (s == "pos") return Polarity::pos;
  if (s == "neg") return Polarity::neg;
  throw DemapError("unknown polarity '" + s + "' (expected pos or neg)");
}

Orientation orientation_from(const std::string& s) {
  if (s == "ramp_below") return Orientation::ramp_below;
  if (s == "ramp_above") return Orientation::ramp_above;
  throw DemapError("unknown orientation '" + s + "' (expected ramp_below or ramp_above)");
}

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw DemapError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DemapError(where + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace

std::string demapper_to_json(const AnalogDemapper& d) {
  json j;
  j["id"] = d.id;
  j["vdd"] = d.vdd;
  j["vin_min"] = d.vin_min;
  j["vin_max"] = d.vin_max;
  j["input_map"] = {{"scale", d.input_map.scale}, {"offset", d.input_map.offset}};
  json bits = json::array();
  for (std::size_t k = 0; k < d.cells.size(); ++k) {
    json cells = json::array();
    for (const auto& c : d.cells[k])
      cells.push_back({{"vref", c.vref},
                       {"gain", c.gain},
                       {"isat_v", c.isat_v},
                       {"knee_eps", c.knee_eps},
                       {"polarity", to_string(c.polarity)},
                       {"orientation", to_string(c.orientation)}});
    bits.push_back({{"k", k + 1}, {"cells", std::move(cells)}});
  }
  j["bits"] = std::move(bits);
  return j.dump(2) + "\n";
}

AnalogDemapper demapper_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DemapError(std::string("demapper file is not valid JSON: ") + e.what());
  }
  AnalogDemapper d;
  const std::string where = "demapper";
  d.id = field<std::string>(j, "id", where);
  d.vdd = field<double>(j, "vdd", where);
  d.vin_min = field<double>(j, "vin_min", where);
  d.vin_max = field<double>(j, "vin_max", where);
  const json& map = j.contains("input_map") ? j["input_map"] : json();
  if (!map.is_object()) throw DemapError(where + ": missing object 'input_map'");
  d.input_map.scale = field<double>(map, "scale", where + ".input_map");
  d.input_map.offset = field<double>(map, "offset", where + ".input_map");

  if (!j.contains("bits") || !j["bits"].is_array()) throw DemapError(where + ": missing array 'bits'");
  for (const auto& bit : j["bits"]) {
    const int k = field<int>(bit, "k", where + ".bits");
    if (k != static_cast<int>(d.cells.size()) + 1)
      throw DemapError(where + ".bits: bit positions must be listed in order starting at 1");
    std::vector<CellSpec> cells;
    const std::string w = where + ".bits[" + std::to_string(k) + "]";
    if (!bit.contains("cells") || !bit["cells"].is_array())
      throw DemapError(w + ": missing array 'cells'");
    for (const auto& c : bit["cells"]) {
      CellSpec cell;
      cell.vref = field<double>(c, "vref", w);
      cell.gain = field<double>(c, "gain", w);
      cell.isat_v = field<double>(c, "isat_v", w);
      cell.knee_eps = field<double>(c, "knee_eps", w);
      cell.polarity = polarity_from(field<std::string>(c, "polarity", w));
      cell.orientation = orientation_from(field<std::string>(c, "orientation", w));
      cells.push_back(cell);
    }
    d.cells.push_back(std::move(cells));
  }
  d.validate();
  return d;
}

void save_demapper(const AnalogDemapper& d, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DemapError("cannot open '" + path.string() + "' for writing");
  out << demapper_to_json(d);
}

AnalogDemapper load_demapper(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DemapError("cannot open demapper file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return demapper_from_json(ss.str());
}

}  // namespace pamdemap
