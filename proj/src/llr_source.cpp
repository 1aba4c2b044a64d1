#include "pamdemap/llr_source.hpp"

#include "pamdemap/error.hpp"
#include "pamdemap/reference_demappers.hpp"

namespace pamdemap {

void ExactDemapper::llrs(double r, std::span<double> out) const { exact_llrs(r, c_, p_, out); }

void MaxLogDemapper::llrs(double r, std::span<double> out) const { maxlog_llrs(r, c_, p_, out); }

CalibratedAnalogDemapper::CalibratedAnalogDemapper(AnalogDemapper demapper,
                                                   std::vector<AffineMap> output_maps)
    : demapper_(std::move(demapper)), maps_(std::move(output_maps)) {
  demapper_.validate();
  if (maps_.size() != demapper_.cells.size())
    throw DemapError("calibrated demapper '" + demapper_.id + "' needs one output map per bit");
}

double CalibratedAnalogDemapper::vout(double r, int k) const {
  return demap_static(demapper_.input_map.apply(r), demapper_, k);
}

void CalibratedAnalogDemapper::llrs(double r, std::span<double> out) const {
  if (out.size() != maps_.size()) throw DemapError("LLR output span has the wrong length");
  const double vin = demapper_.input_map.apply(r);
  for (std::size_t k = 0; k < maps_.size(); ++k)
    out[k] = maps_[k].apply(demap_static(vin, demapper_, static_cast<int>(k) + 1));
}

std::vector<AffineMap> fit_output_maps(const AnalogDemapper& d, const Constellation& c,
                                       const ChannelParams& p, std::span<const double> grid) {
  std::vector<double> owned;
  if (grid.empty()) {
    owned = calibration_grid(c);
    grid = owned;
  }
  if (d.bits() != c.bits_per_symbol())
    throw DemapError("demapper '" + d.id + "' has " + std::to_string(d.bits()) +
                     " bit positions, constellation has " + std::to_string(c.bits_per_symbol()));
  const auto w = quadrature_weights(grid);
  std::vector<AffineMap> maps;
  std::vector<double> v(grid.size()), l(grid.size());
  for (int k = 1; k <= d.bits(); ++k) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      v[i] = demap_static(d.input_map.apply(grid[i]), d, k);
      l[i] = exact_llr(grid[i], k, c, p);
    }
    maps.push_back(fit_output_map(v, l, w));
  }
  return maps;
}

CalibratedAnalogDemapper calibrate(AnalogDemapper d, const Constellation& c,
                                   const ChannelParams& p) {
  auto maps = fit_output_maps(d, c, p);
  return {std::move(d), std::move(maps)};
}

}  // namespace pamdemap
