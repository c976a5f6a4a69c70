#pragma once

#include <span>
#include <vector>

#include "krrgc/panel.hpp"

namespace krrgc {

struct CaoOptions {
  int max_dim = 10;
  double plateau_tol = 0.05;
};

// Cao's averaged false-neighbour statistics with delay 1 and the max norm.
// e1[k] and e2[k] hold E1(k + 1) and E2(k + 1) for k = 0 .. max_dim - 2.
struct CaoStatistics {
  std::vector<double> e1;
  std::vector<double> e2;
  // Smallest d with |E1(d) - 1| < plateau_tol, max_dim if none.
  int min_dim = 1;
  // Numerically constant series (a fixed point); min_dim is 1.
  bool degenerate = false;
};

CaoStatistics cao_statistics(std::span<const double> series, const CaoOptions& options = {});

// Largest per-series minimum embedding dimension, clamped to [1, max_dim].
int select_lag_cao(const Panel& panel, const CaoOptions& options = {});

}  // namespace krrgc
