#include "pamdemap/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pamdemap/error.hpp"

namespace pamdemap {

double AffineMap::invert(double y) const {
  if (scale == 0.0 || !std::isfinite(scale)) throw DemapError("affine map is not invertible");
  return (y - offset) / scale;
}

AffineMap input_map(const Constellation& c, double vmin, double vmax) {
  if (!std::isfinite(vmin) || !std::isfinite(vmax) || !(vmax > vmin))
    throw DemapError("input range must satisfy vmax > vmin (got vmin=" + std::to_string(vmin) +
                     ", vmax=" + std::to_string(vmax) + ")");
  return {(vmax - vmin) / (2.0 * c.outer()), 0.5 * (vmax + vmin)};
}

std::vector<double> calibration_grid(const Constellation& c, std::size_t points) {
  if (points < 2) throw DemapError("calibration grid needs at least 2 points");
  std::vector<double> grid(points);
  const double lo = -c.outer();
  const double step = 2.0 * c.outer() / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo + step * static_cast<double>(i);
  grid.back() = c.outer();
  return grid;
}

std::vector<double> quadrature_weights(std::span<const double> grid) {
  const std::size_t n = grid.size();
  std::vector<double> w(n, 0.0);
  if (n < 2) return w;
  bool uniform = n % 2 == 1;
  const double h0 = grid[1] - grid[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double h = grid[i] - grid[i - 1];
    if (!(h > 0.0)) throw DemapError("quadrature_weights: grid must be strictly increasing");
    uniform = uniform && std::abs(h - h0) <= 1e-9 * h0;
  }
  if (uniform) {
    const double h = (grid.back() - grid.front()) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
      w[i] = h / 3.0 * (i == 0 || i + 1 == n ? 1.0 : (i % 2 ? 4.0 : 2.0));
    return w;
  }
  for (std::size_t i = 1; i < n; ++i) {
    const double h = grid[i] - grid[i - 1];
    w[i - 1] += 0.5 * h;
    w[i] += 0.5 * h;
  }
  return w;
}

AffineMap fit_output_map(std::span<const double> vout, std::span<const double> ref,
                         std::span<const double> weights) {
  if (vout.size() != ref.size()) throw DemapError("fit_output_map: size mismatch");
  if (!weights.empty() && weights.size() != vout.size())
    throw DemapError("fit_output_map: weight vector has the wrong length");
  if (vout.size() < 2) throw DemapError("fit_output_map: need at least 2 samples");

  auto w = [&](std::size_t i) { return weights.empty() ? 1.0 : weights[i]; };
  double sw = 0.0, sv = 0.0, sl = 0.0;
  for (std::size_t i = 0; i < vout.size(); ++i) {
    sw += w(i);
    sv += w(i) * vout[i];
    sl += w(i) * ref[i];
  }
  if (!(sw > 0.0)) throw DemapError("fit_output_map: weights sum to zero");
  const double mv = sv / sw;
  const double ml = sl / sw;

  double svv = 0.0, svl = 0.0, scale_v = 0.0;
  for (std::size_t i = 0; i < vout.size(); ++i) {
    const double dv = vout[i] - mv;
    svv += w(i) * dv * dv;
    svl += w(i) * dv * (ref[i] - ml);
    scale_v = std::max(scale_v, std::abs(vout[i]));
  }
  // Rank deficiency: the spread of vout vanishes relative to its magnitude.
  const double tol = 1e-24 * sw * std::max(1.0, scale_v * scale_v);
  if (!(svv > tol)) throw DemapError("fit_output_map: output curve is constant on the grid");

  const double gamma = svl / svv;
  return {gamma, ml - gamma * mv};
}

AffineMap fit_output_map(std::span<const double> grid,
                         const std::function<double(double)>& vout_curve,
                         const std::function<double(double)>& ref_llr) {
  std::vector<double> v(grid.size()), l(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    v[i] = vout_curve(grid[i]);
    l[i] = ref_llr(grid[i]);
  }
  return fit_output_map(v, l, quadrature_weights(grid));
}

double mean_squared_error(const AffineMap& map, std::span<const double> vout,
                          std::span<const double> ref) {
  if (vout.size() != ref.size() || vout.empty())
    throw DemapError("mean_squared_error: size mismatch or empty input");
  double s = 0.0;
  for (std::size_t i = 0; i < vout.size(); ++i) {
    const double e = map.apply(vout[i]) - ref[i];
    s += e * e;
  }
  return s / static_cast<double>(vout.size());
}

}  // namespace pamdemap
