#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "krrgc/eval.hpp"
#include "krrgc/gc.hpp"
#include "krrgc/simnet.hpp"

namespace krrgc {

struct ExperimentPlan {
  std::vector<NetworkKind> networks;
  std::vector<std::size_t> lengths;
  std::size_t n_sets = 50;
  std::uint64_t base_seed = 0;
  int workers = 1;
  // config.lags unset means one Cao selection per (network, length).
  GcConfig config;
  std::size_t burn_in = 500;
  double p_threshold = 0.05;
  // Share of failed sets above which a combination is flagged invalid.
  double max_failed_fraction = 0.2;

  void validate() const;
};

// Seed of set `set_index`; the same for every network and length.
inline std::uint64_t set_seed(std::uint64_t base_seed, std::size_t set_index) {
  return base_seed ^ static_cast<std::uint64_t>(set_index);
}

struct SetReport {
  NetworkKind network = NetworkKind::kLinear5;
  std::size_t length = 0;
  std::size_t set_index = 0;
  std::uint64_t seed = 0;
  int lags = 0;
  NetworkEvalReport report;
};

struct SetFailure {
  NetworkKind network = NetworkKind::kLinear5;
  std::size_t length = 0;
  std::size_t set_index = 0;
  std::string message;
};

struct RuntimeRecord {
  NetworkKind network = NetworkKind::kLinear5;
  std::size_t length = 0;
  double wall_seconds = 0.0;
  int workers = 1;
  std::size_t n_sets = 0;
};

struct MetricSummary {
  double median = 0.0;
  double p25 = 0.0;
  double p75 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct NamedSummary {
  std::string metric;
  MetricSummary summary;
};

// Summary of auc, brier, acc_at_p05, bal_acc_at_p05, acc_at_gmean and
// bal_acc_at_gmean. Throws std::invalid_argument on an empty list.
std::vector<NamedSummary> summarize(std::span<const NetworkEvalReport> reports);
MetricSummary summarize_values(std::vector<double> values);

struct CombinationSummary {
  NetworkKind network = NetworkKind::kLinear5;
  std::size_t length = 0;
  int lags = 0;
  std::size_t n_ok = 0;
  std::size_t n_failed = 0;
  bool valid = true;
  double gmean_threshold = 0.0;
  std::vector<NamedSummary> metrics;  // empty when no set succeeded
};

struct ExperimentResult {
  std::vector<SetReport> reports;
  std::vector<SetFailure> failures;
  std::vector<RuntimeRecord> runtimes;
  std::vector<CombinationSummary> combinations;
};

using ExperimentLog = std::function<void(std::string_view)>;

ExperimentResult run_experiment(const ExperimentPlan& plan, const ExperimentLog& log = {});

// Per-set metrics; contains no timing, so identical plans give identical bytes.
void write_metrics_csv(std::ostream& out, const ExperimentResult& result);
void write_summary_json(std::ostream& out, const ExperimentResult& result);
void write_runtime_csv(std::ostream& out, const ExperimentResult& result);

}  // namespace krrgc
