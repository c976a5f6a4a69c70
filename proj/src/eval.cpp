#include "krrgc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace krrgc {

EdgeScores edge_scores(const Eigen::MatrixXd& pvalues, const GroundTruth& truth) {
  const auto g = pvalues.rows();
  if (pvalues.cols() != g || truth.adjacency.rows() != g || truth.adjacency.cols() != g) {
    throw std::invalid_argument("p-value matrix and truth differ in size");
  }
  EdgeScores s;
  for (Eigen::Index i = 0; i < g; ++i) {
    for (Eigen::Index j = 0; j < g; ++j) {
      if (i == j) continue;
      const double p = pvalues(i, j);
      s.labels.push_back(truth.adjacency(i, j));
      s.pvalues.push_back(std::isnan(p) ? 1.0 : p);
    }
  }
  return s;
}

double auc(const EdgeScores& scores) {
  const std::size_t n = scores.pvalues.size();
  if (scores.labels.size() != n) throw std::invalid_argument("auc: label/score length mismatch");
  const auto n_pos = static_cast<std::size_t>(std::count(scores.labels.begin(), scores.labels.end(), true));
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) throw std::invalid_argument("auc: both classes must be present");

  // Ranking by descending p is ranking by ascending 1 - p without the
  // rounding of the subtraction.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores.pvalues[a] > scores.pvalues[b]; });
  double pos_rank_sum = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && scores.pvalues[order[j + 1]] == scores.pvalues[order[i]]) ++j;
    const double mid = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k)
      if (scores.labels[order[k]]) pos_rank_sum += mid;
    i = j + 1;
  }
  const double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
  return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

double brier(const EdgeScores& scores) {
  if (scores.pvalues.empty()) throw std::invalid_argument("brier: no scores");
  double sum = 0.0;
  for (std::size_t i = 0; i < scores.pvalues.size(); ++i) {
    const double q = 1.0 - scores.pvalues[i];
    const double d = q - (scores.labels[i] ? 1.0 : 0.0);
    sum += d * d;
  }
  return sum / static_cast<double>(scores.pvalues.size());
}

ThresholdMetrics threshold_metrics(const EdgeScores& scores, double p_threshold) {
  if (!(p_threshold >= 0.0 && p_threshold <= 1.0)) throw std::invalid_argument("threshold must lie in [0, 1]");
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (std::size_t i = 0; i < scores.pvalues.size(); ++i) {
    const bool predicted = scores.pvalues[i] < p_threshold;
    if (scores.labels[i]) predicted ? ++tp : ++fn;
    else predicted ? ++fp : ++tn;
  }
  ThresholdMetrics m;
  m.no_positives = tp + fn == 0;
  m.no_negatives = tn + fp == 0;
  m.sensitivity = m.no_positives ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  m.specificity = m.no_negatives ? 0.0 : static_cast<double>(tn) / static_cast<double>(tn + fp);
  const std::size_t all = tp + fp + tn + fn;
  m.accuracy = all ? static_cast<double>(tp + tn) / static_cast<double>(all) : 0.0;
  m.balanced_accuracy = 0.5 * (m.sensitivity + m.specificity);
  m.gmean = std::sqrt(m.sensitivity * m.specificity);
  return m;
}

double threshold_grid_point(int k) { return static_cast<double>(k) / kThresholdGridSize; }

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double gmean_optimal_threshold(std::span<const EdgeScores> score_sets) {
  if (score_sets.empty()) throw std::invalid_argument("need at least one score set");
  double best_threshold = threshold_grid_point(1);
  double best = -1.0;
  std::vector<double> gm(score_sets.size());
  for (int k = 1; k <= kThresholdGridSize; ++k) {
    const double th = threshold_grid_point(k);
    for (std::size_t s = 0; s < score_sets.size(); ++s) gm[s] = threshold_metrics(score_sets[s], th).gmean;
    const double med = percentile(gm, 0.5);
    if (med > best) {
      best = med;
      best_threshold = th;
    }
  }
  return best_threshold;
}

NetworkEvalReport evaluate(const EdgeScores& scores, double p_threshold, std::optional<double> gmean_threshold) {
  NetworkEvalReport r;
  r.auc = auc(scores);
  r.brier = brier(scores);
  r.threshold = p_threshold;
  const auto at = threshold_metrics(scores, p_threshold);
  r.acc_at_p05 = at.accuracy;
  r.bal_acc_at_p05 = at.balanced_accuracy;
  r.gmean_threshold = gmean_threshold ? *gmean_threshold : gmean_optimal_threshold(std::span(&scores, 1));
  const auto og = threshold_metrics(scores, r.gmean_threshold);
  r.acc_at_gmean = og.accuracy;
  r.bal_acc_at_gmean = og.balanced_accuracy;
  return r;
}

}  // namespace krrgc
