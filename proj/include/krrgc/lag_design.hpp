#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "krrgc/panel.hpp"

namespace krrgc {

// Lagged regression problem for one target series.
//
// Row t holds lags 1..L of every included series, grouped per series in panel
// column order with lag 1 first inside each group. target(t) is the target
// series at panel row first_panel_row + t, one step after the newest lag.
struct LagDesign {
  Matrix features;
  Vector target;
  int lags = 0;
  std::vector<std::string> included;
  std::size_t first_panel_row = 0;

  std::size_t rows() const { return static_cast<std::size_t>(features.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(features.cols()); }
};

LagDesign build_lag_design(const Panel& panel, std::string_view target,
                           std::span<const std::string> excluded, int lags);

// Index-based variant: `columns` lists the included panel columns in order.
LagDesign build_lag_design(const Panel& panel, std::size_t target,
                           std::span<const std::size_t> columns, int lags);

struct SplitSpec {
  double train_fraction = 0.7;
  // Rows discarded between train and test; defaults to the lag count.
  std::optional<int> gap;
};

// Half-open index range [begin, end).
struct RowRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  bool operator==(const RowRange&) const = default;
};

struct SplitRanges {
  RowRange train;
  RowRange test;
};

// Train takes floor(train_fraction * rows) leading rows, the gap is cut from
// the test side. Throws std::invalid_argument if either side ends up empty.
SplitRanges split_ranges(std::size_t rows, const SplitSpec& spec, int lags);

std::pair<LagDesign, LagDesign> split_train_test(const LagDesign& design, const SplitSpec& spec);

LagDesign slice_rows(const LagDesign& design, RowRange range);

}  // namespace krrgc
