#pragma once

#include <span>
#include <vector>

#include "krrgc/lag_design.hpp"

namespace krrgc {

// Empirical quantile grid: quantiles[k] is the sample value at probability
// references[k], references evenly spaced on [0, 1].
struct QuantileGrid {
  std::vector<double> quantiles;
  std::vector<double> references;
  // Zero-width grid; every value maps to 0.5.
  bool constant = false;

  double map(double x) const;
};

// n_quantiles >= 2, capped at the sample size.
QuantileGrid fit_quantile_grid(std::span<const double> sample, int n_quantiles);

struct QuantileTransformResult {
  std::vector<double> values;
  bool constant = false;
};

// Fits the grid on series[fit_range] and maps the whole series onto [0, 1].
QuantileTransformResult quantile_transform(std::span<const double> series, int n_quantiles,
                                           RowRange fit_range);

}  // namespace krrgc
