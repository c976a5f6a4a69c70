#include "krrgc/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace krrgc {

QuantileGrid fit_quantile_grid(std::span<const double> sample, int n_quantiles) {
  if (sample.empty()) throw std::invalid_argument("quantile fit range is empty");
  if (n_quantiles < 2) throw std::invalid_argument("need at least 2 quantiles");
  const std::size_t n = sample.size();
  const std::size_t k = std::max<std::size_t>(2, std::min<std::size_t>(n, n_quantiles));

  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());

  QuantileGrid grid;
  grid.references.resize(k);
  grid.quantiles.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double p = static_cast<double>(i) / static_cast<double>(k - 1);
    grid.references[i] = p;
    // Linear interpolation between order statistics.
    const double pos = p * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double frac = pos - static_cast<double>(lo);
    grid.quantiles[i] = sorted[lo] + frac * (sorted[hi] - sorted[lo]);
  }
  for (std::size_t i = 1; i < k; ++i)
    grid.quantiles[i] = std::max(grid.quantiles[i], grid.quantiles[i - 1]);
  grid.constant = grid.quantiles.front() == grid.quantiles.back();
  return grid;
}

double QuantileGrid::map(double x) const {
  if (constant) return 0.5;
  const auto& q = quantiles;
  const auto& r = references;
  if (x <= q.front()) return 0.0;
  if (x >= q.back()) return 1.0;
  // Average of the interpolations from the right and from the left so a run
  // of repeated quantiles maps to the middle of its reference interval.
  const auto up = std::upper_bound(q.begin(), q.end(), x);
  const auto i = static_cast<std::size_t>(up - q.begin()) - 1;
  const double fwd = r[i] + (x - q[i]) * (r[i + 1] - r[i]) / (q[i + 1] - q[i]);
  const auto lo = std::lower_bound(q.begin(), q.end(), x);
  const auto j = static_cast<std::size_t>(lo - q.begin());
  const double bwd = r[j - 1] + (x - q[j - 1]) * (r[j] - r[j - 1]) / (q[j] - q[j - 1]);
  return std::clamp(0.5 * (fwd + bwd), 0.0, 1.0);
}

QuantileTransformResult quantile_transform(std::span<const double> series, int n_quantiles,
                                           RowRange fit_range) {
  if (fit_range.begin >= fit_range.end || fit_range.end > series.size()) {
    throw std::invalid_argument("quantile fit range is empty or out of bounds");
  }
  const auto grid =
      fit_quantile_grid(series.subspan(fit_range.begin, fit_range.size()), n_quantiles);
  QuantileTransformResult out;
  out.constant = grid.constant;
  out.values.reserve(series.size());
  for (double x : series) out.values.push_back(grid.map(x));
  return out;
}

}  // namespace krrgc
