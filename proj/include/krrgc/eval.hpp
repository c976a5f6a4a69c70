#pragma once

#include <optional>
#include <span>
#include <vector>

#include "krrgc/simnet.hpp"

namespace krrgc {

// Off-diagonal ordered pairs of a p-value matrix, aligned with their labels.
struct EdgeScores {
  std::vector<bool> labels;
  std::vector<double> pvalues;
};

// Flattens row-major over (source, target), skipping the diagonal. Missing
// (NaN) p-values count as 1, i.e. no evidence for an edge.
EdgeScores edge_scores(const Eigen::MatrixXd& pvalues, const GroundTruth& truth);

// Rank AUC with edge score 1 - p; ties count 1/2. Throws std::invalid_argument
// unless both classes are present.
double auc(const EdgeScores& scores);

// Mean of (q - label)^2 with edge probability q = 1 - p.
double brier(const EdgeScores& scores);

struct ThresholdMetrics {
  double accuracy = 0.0;
  double balanced_accuracy = 0.0;
  double gmean = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  // Set when a class is empty; the corresponding rate is then reported as 0.
  bool no_positives = false;
  bool no_negatives = false;
};

// An edge is predicted iff p < threshold.
ThresholdMetrics threshold_metrics(const EdgeScores& scores, double p_threshold);

// Candidate thresholds k / 100 for k = 1..100.
inline constexpr int kThresholdGridSize = 100;
double threshold_grid_point(int k);

// Grid threshold with the highest median G-mean over the sets; ties go to the
// smaller threshold.
double gmean_optimal_threshold(std::span<const EdgeScores> score_sets);

struct NetworkEvalReport {
  double auc = 0.0;
  double brier = 0.0;
  double threshold = 0.05;
  double acc_at_p05 = 0.0;
  double bal_acc_at_p05 = 0.0;
  double gmean_threshold = 0.0;
  double acc_at_gmean = 0.0;
  double bal_acc_at_gmean = 0.0;
};

// When gmean_threshold is unset it is optimised on this one score set.
NetworkEvalReport evaluate(const EdgeScores& scores, double p_threshold = 0.05,
                           std::optional<double> gmean_threshold = std::nullopt);

// Linear interpolation between order statistics, q in [0, 1].
double percentile(std::vector<double> values, double q);

}  // namespace krrgc
