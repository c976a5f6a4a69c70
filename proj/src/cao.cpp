#include "krrgc/cao.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace krrgc {

namespace {

struct Neighbour {
  std::size_t index;
  double dist;
};

// Nearest neighbour of every delay vector (x_i, ..., x_{i+d-1}),
// i < count, under the max norm. Identical vectors are skipped, ties go to
// the lower index. index == count marks "no neighbour".
std::vector<Neighbour> nearest_neighbours(std::span<const double> x, std::size_t count, std::size_t d) {
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<std::size_t> pos(count);
  for (std::size_t k = 0; k < count; ++k) pos[order[k]] = k;

  auto dist = [&](std::size_t a, std::size_t b) {
    double m = 0.0;
    for (std::size_t k = 0; k < d; ++k) m = std::max(m, std::abs(x[a + k] - x[b + k]));
    return m;
  };

  std::vector<Neighbour> out(count, {count, std::numeric_limits<double>::infinity()});
  for (std::size_t i = 0; i < count; ++i) {
    Neighbour best = out[i];
    auto consider = [&](std::size_t j) {
      const double dj = dist(i, j);
      if (dj > 0.0 && (dj < best.dist || (dj == best.dist && j < best.index))) best = {j, dj};
    };
    // The first coordinate bounds the max-norm distance, so scanning stops
    // once the gap along it exceeds the best distance found.
    for (std::size_t k = pos[i] + 1; k < count; ++k) {
      if (x[order[k]] - x[i] > best.dist) break;
      consider(order[k]);
    }
    for (std::size_t k = pos[i]; k-- > 0;) {
      if (x[i] - x[order[k]] > best.dist) break;
      consider(order[k]);
    }
    out[i] = best;
  }
  return out;
}

}  // namespace

CaoStatistics cao_statistics(std::span<const double> series, const CaoOptions& options) {
  if (options.max_dim < 2) throw std::invalid_argument("Cao: max_dim must be at least 2");
  if (!(options.plateau_tol > 0.0)) throw std::invalid_argument("Cao: plateau_tol must be positive");
  const auto dmax = static_cast<std::size_t>(options.max_dim);
  if (series.size() < dmax + 3) {
    throw std::invalid_argument("Cao: series of length " + std::to_string(series.size()) +
                                " is too short to embed in dimension " + std::to_string(dmax));
  }

  CaoStatistics stats;
  const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  const double scale = std::max({1.0, std::abs(*lo), std::abs(*hi)});
  if (*hi - *lo <= 1e-9 * scale) {
    stats.degenerate = true;
    stats.min_dim = 1;
    return stats;
  }

  // E(d) and E*(d) for d = 1..dmax.
  std::vector<double> e(dmax + 1, 0.0), estar(dmax + 1, 0.0);
  for (std::size_t d = 1; d <= dmax; ++d) {
    const std::size_t count = series.size() - d;
    const auto nn = nearest_neighbours(series, count, d);
    double sum_a = 0.0, sum_star = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < count; ++i) {
      if (nn[i].index == count) continue;
      const double ext = std::abs(series[i + d] - series[nn[i].index + d]);
      sum_a += std::max(nn[i].dist, ext) / nn[i].dist;
      sum_star += ext;
      ++used;
    }
    if (used > 0) {
      e[d] = sum_a / static_cast<double>(used);
      estar[d] = sum_star / static_cast<double>(used);
    }
  }

  stats.min_dim = options.max_dim;
  bool found = false;
  for (std::size_t d = 1; d < dmax; ++d) {
    const double e1 = e[d] > 0.0 ? e[d + 1] / e[d] : std::numeric_limits<double>::quiet_NaN();
    const double e2 = estar[d] > 0.0 ? estar[d + 1] / estar[d] : std::numeric_limits<double>::quiet_NaN();
    stats.e1.push_back(e1);
    stats.e2.push_back(e2);
    if (!found && std::abs(e1 - 1.0) < options.plateau_tol) {
      stats.min_dim = static_cast<int>(d);
      found = true;
    }
  }
  return stats;
}

int select_lag_cao(const Panel& panel, const CaoOptions& options) {
  const auto g = static_cast<Eigen::Index>(panel.num_series());
  std::vector<int> dims(static_cast<std::size_t>(g), 1);
  std::vector<std::string> errors(static_cast<std::size_t>(g));
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index j = 0; j < g; ++j) {
    try {
      const auto col = panel.column(static_cast<std::size_t>(j));
      dims[j] = cao_statistics(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())), options)
                    .min_dim;
    } catch (const std::exception& e) {
      errors[j] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::invalid_argument(e);
  const int best = *std::max_element(dims.begin(), dims.end());
  return std::clamp(best, 1, options.max_dim);
}

}  // namespace krrgc
