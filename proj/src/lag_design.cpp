#include "krrgc/lag_design.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace krrgc {

LagDesign build_lag_design(const Panel& panel, std::size_t target,
                           std::span<const std::size_t> columns, int lags) {
  if (lags < 1) throw std::invalid_argument("lag count must be at least 1");
  if (target >= panel.num_series()) throw std::invalid_argument("target column out of range");
  const std::size_t len = panel.length();
  const auto L = static_cast<std::size_t>(lags);
  if (L >= len) {
    throw std::invalid_argument("lag count " + std::to_string(lags) +
                                " must be below the panel length " + std::to_string(len));
  }
  const std::size_t n = len - L;
  const std::size_t dim = L * columns.size();

  LagDesign d;
  d.lags = lags;
  d.first_panel_row = L;
  d.features.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  d.target.resize(static_cast<Eigen::Index>(n));
  const auto& v = panel.values();
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] >= panel.num_series()) throw std::invalid_argument("column out of range");
    d.included.push_back(panel.names()[columns[c]]);
  }
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      for (std::size_t l = 1; l <= L; ++l) {
        d.features(t, c * L + (l - 1)) = v(t + L - l, columns[c]);
      }
    }
    d.target(t) = v(t + L, target);
  }
  return d;
}

LagDesign build_lag_design(const Panel& panel, std::string_view target,
                           std::span<const std::string> excluded, int lags) {
  const std::size_t target_col = panel.index_of(target);
  std::vector<bool> drop(panel.num_series(), false);
  for (const auto& id : excluded) {
    const std::size_t g = panel.index_of(id);
    if (g == target_col) {
      throw std::invalid_argument("target '" + std::string(target) + "' cannot be excluded");
    }
    drop[g] = true;
  }
  std::vector<std::size_t> columns;
  for (std::size_t g = 0; g < panel.num_series(); ++g)
    if (!drop[g]) columns.push_back(g);
  return build_lag_design(panel, target_col, columns, lags);
}

SplitRanges split_ranges(std::size_t rows, const SplitSpec& spec, int lags) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw std::invalid_argument("train fraction must lie in (0, 1)");
  }
  const int gap = spec.gap.value_or(lags);
  if (gap < 0) throw std::invalid_argument("gap must be nonnegative");
  // The epsilon keeps e.g. 0.7 * 100 from flooring to 69.
  const auto n_train =
      static_cast<std::size_t>(std::floor(spec.train_fraction * static_cast<double>(rows) + 1e-9));
  if (n_train == 0) throw std::invalid_argument("split leaves the training set empty");
  const std::size_t test_begin = n_train + static_cast<std::size_t>(gap);
  if (test_begin >= rows) {
    throw std::invalid_argument("split leaves the test set empty (" + std::to_string(rows) +
                                " rows, " + std::to_string(n_train) + " train, gap " +
                                std::to_string(gap) + ")");
  }
  return {{0, n_train}, {test_begin, rows}};
}

LagDesign slice_rows(const LagDesign& design, RowRange range) {
  LagDesign out;
  const auto b = static_cast<Eigen::Index>(range.begin);
  const auto n = static_cast<Eigen::Index>(range.size());
  out.features = design.features.middleRows(b, n);
  out.target = design.target.segment(b, n);
  out.lags = design.lags;
  out.included = design.included;
  out.first_panel_row = design.first_panel_row + range.begin;
  return out;
}

std::pair<LagDesign, LagDesign> split_train_test(const LagDesign& design, const SplitSpec& spec) {
  const auto r = split_ranges(design.rows(), spec, design.lags);
  return {slice_rows(design, r.train), slice_rows(design, r.test)};
}

}  // namespace krrgc
