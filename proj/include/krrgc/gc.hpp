#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "krrgc/cao.hpp"
#include "krrgc/krr.hpp"
#include "krrgc/lag_design.hpp"
#include "krrgc/panel.hpp"
#include "krrgc/stat_tests.hpp"

namespace krrgc {

enum class TestKind { kSign, kWilcoxon };
enum class Method { kKrr, kLinearF };

std::string_view to_string(TestKind t);
std::string_view to_string(Method m);

// Defaults reproduce the reference setup: Cao lags, 70/30 split with a gap
// of L rows, lambda = 1, gamma = 1/D, sign test, 1000-quantile transform.
struct GcConfig {
  // Unset selects the lag order with Cao's method on the raw panel.
  std::optional<int> lags;
  CaoOptions cao;
  SplitSpec split;
  KernelConfig kernel;
  TestKind test = TestKind::kSign;
  // Unset disables the quantile transform.
  std::optional<int> quantiles = 1000;
  Method method = Method::kKrr;

  void validate() const;
};

struct GcTestResult {
  std::string source;
  std::string target;
  TestOutcome outcome;
  // Signed prediction errors (prediction - truth) on the evaluation rows.
  std::vector<double> errors_restricted;
  std::vector<double> errors_unrestricted;
  int lags_used = 0;
  // Resolved RBF widths; NaN for the linear baseline.
  double gamma_restricted = 0.0;
  double gamma_unrestricted = 0.0;
  GcConfig config;
};

// Does `source` Granger-cause `target`? Dispatches on config.method.
GcTestResult gc_test(const Panel& panel, std::string_view source, std::string_view target,
                     const GcConfig& config);

// Classical baseline: OLS with intercept on every row, F-test with
// (L, N - G L - 1) degrees of freedom.
GcTestResult gc_test_linear(const Panel& panel, std::string_view source, std::string_view target,
                            const GcConfig& config);

struct PairFailure {
  std::size_t source = 0;
  std::size_t target = 0;
  std::string message;
};

struct NetworkResult {
  std::vector<std::string> series;
  // pvalues(i, j) is the p-value for "series i Granger-causes series j".
  // The diagonal and failed cells hold NaN.
  Eigen::MatrixXd pvalues;
  std::vector<PairFailure> failures;
  int lags_used = 0;
};

// Every ordered pair, spread over `workers` threads. The output is
// independent of the worker count.
NetworkResult gc_network(const Panel& panel, const GcConfig& config, int workers = 1);

// Lag order the engine will use for this panel and config.
int resolve_lags(const Panel& panel, const GcConfig& config);

// Quantile-transformed copy of the panel when enabled. For the kernel method
// the transform is fitted on the rows feeding the training set only.
Panel preprocess_panel(const Panel& panel, const GcConfig& config, int lags);

}  // namespace krrgc
