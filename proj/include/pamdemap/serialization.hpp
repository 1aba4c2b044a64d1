#pragma once

// Human-readable JSON description of an analog demapper: supply, input range,
// input map, and every cell of every bit position.

#include <filesystem>
#include <string>
#include <string_view>

#include "pamdemap/analog_model.hpp"

namespace pamdemap {

std::string demapper_to_json(const AnalogDemapper& d);
AnalogDemapper demapper_from_json(std::string_view text);

void save_demapper(const AnalogDemapper& d, const std::filesystem::path& path);
AnalogDemapper load_demapper(const std::filesystem::path& path);

}  // namespace pamdemap
