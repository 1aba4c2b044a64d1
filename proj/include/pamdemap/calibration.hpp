#pragma once

// Affine conversion blocks around the analog demapper:
//   input  r -> V_in  = alpha * r + beta
//   output V_out,k -> L_k = gamma_k * V_out,k + zeta_k   (least squares)

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pamdemap/constellation.hpp"

namespace pamdemap {

struct AffineMap {
  double scale = 1.0;
  double offset = 0.0;

  double apply(double x) const noexcept { return scale * x + offset; }
  /// Inverse map; scale must be nonzero.
  double invert(double y) const;
};

/// Maps the outer constellation points -outer and +outer onto vmin and vmax.
AffineMap input_map(const Constellation& c, double vmin, double vmax);

inline constexpr std::size_t kCalibrationGridPoints = 2001;

/// Uniform r-grid for the output fit. It spans the outer constellation points,
/// which is the image of the nominal input swing under input_map.
std::vector<double> calibration_grid(const Constellation& c,
                                     std::size_t points = kCalibrationGridPoints);

/// Quadrature weights of an increasing grid: composite Simpson on uniform grids
/// with an odd number of points, trapezoid otherwise.
std::vector<double> quadrature_weights(std::span<const double> grid);

/// Ordinary least squares of ref against (vout, 1). Optional non-negative
/// weights; throws DemapError if vout is constant over the samples.
AffineMap fit_output_map(std::span<const double> vout, std::span<const double> ref,
                         std::span<const double> weights = {});

/// Fit over an r-grid with quadrature_weights.
AffineMap fit_output_map(std::span<const double> grid,
                         const std::function<double(double)>& vout_curve,
                         const std::function<double(double)>& ref_llr);

/// Mean of (map(vout) - ref)^2 over the samples.
double mean_squared_error(const AffineMap& map, std::span<const double> vout,
                          std::span<const double> ref);

}  // namespace pamdemap
