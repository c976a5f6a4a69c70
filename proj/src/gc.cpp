#include "krrgc/gc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <omp.h>

#include "krrgc/linear.hpp"
#include "krrgc/quantile.hpp"

namespace krrgc {

std::string_view to_string(TestKind t) { return t == TestKind::kSign ? "sign" : "wilcoxon"; }
std::string_view to_string(Method m) { return m == Method::kKrr ? "krr" : "linear"; }

void GcConfig::validate() const {
  if (lags && *lags < 1) throw std::invalid_argument("lags must be at least 1");
  if (cao.max_dim < 2) throw std::invalid_argument("Cao max_dim must be at least 2");
  if (!(split.train_fraction > 0.0 && split.train_fraction < 1.0)) {
    throw std::invalid_argument("train fraction must lie in (0, 1)");
  }
  if (split.gap && *split.gap < 0) throw std::invalid_argument("gap must be nonnegative");
  kernel.validate();
  if (quantiles && *quantiles < 2) throw std::invalid_argument("need at least 2 quantiles");
}

int resolve_lags(const Panel& panel, const GcConfig& config) {
  return config.lags ? *config.lags : select_lag_cao(panel, config.cao);
}

Panel preprocess_panel(const Panel& panel, const GcConfig& config, int lags) {
  if (!config.quantiles) return panel;
  RowRange fit{0, panel.length()};
  if (config.method == Method::kKrr) {
    if (static_cast<std::size_t>(lags) >= panel.length()) {
      throw std::invalid_argument("lag count exceeds panel length");
    }
    const auto r = split_ranges(panel.length() - lags, config.split, lags);
    // Design rows [0, n_train) read panel rows [0, L + n_train).
    fit.end = static_cast<std::size_t>(lags) + r.train.end;
  }
  Eigen::MatrixXd out(panel.length(), panel.num_series());
  for (std::size_t g = 0; g < panel.num_series(); ++g) {
    const auto col = panel.column(g);
    const auto t = quantile_transform(std::span<const double>(col.data(), panel.length()), *config.quantiles, fit);
    out.col(static_cast<Eigen::Index>(g)) = Eigen::Map<const Eigen::VectorXd>(t.values.data(), panel.length());
  }
  return Panel(std::move(out), panel.names());
}

namespace {

std::vector<std::size_t> all_columns_except(std::size_t g, std::size_t skip) {
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < g; ++j)
    if (j != skip) cols.push_back(j);
  return cols;
}

std::vector<double> to_std(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

TestOutcome run_test(TestKind kind, std::span<const double> delta) {
  return kind == TestKind::kSign ? sign_test(delta) : wilcoxon_signed_rank(delta);
}

std::vector<std::string> lag_column_names(const LagDesign& d) {
  std::vector<std::string> names;
  for (const auto& s : d.included)
    for (int l = 1; l <= d.lags; ++l) names.push_back(s + "(t-" + std::to_string(l) + ")");
  return names;
}

// Everything that depends on the target only: shared by every source.
struct TargetFit {
  std::vector<double> errors;  // unrestricted model
  double gamma = std::numeric_limits<double>::quiet_NaN();
  double rss = 0.0;
  std::size_t rows = 0;
};

struct PreparedPanel {
  Panel panel;
  int lags;
};

PreparedPanel prepare(const Panel& panel, const GcConfig& config) {
  config.validate();
  if (panel.num_series() < 2) throw std::invalid_argument("need at least 2 series");
  const int lags = resolve_lags(panel, config);
  return {preprocess_panel(panel, config, lags), lags};
}

TargetFit fit_krr_unrestricted(const Panel& p, std::size_t target, int lags, const GcConfig& c) {
  std::vector<std::size_t> all(p.num_series());
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
  const auto design = build_lag_design(p, target, all, lags);
  const auto [train, test] = split_train_test(design, c.split);
  const auto model = krr_fit(train, c.kernel);
  TargetFit f;
  f.errors = to_std(model.predict(test.features) - test.target);
  f.gamma = model.gamma();
  return f;
}

GcTestResult krr_pair(const Panel& p, std::size_t source, std::size_t target, int lags, const GcConfig& c,
                      const TargetFit& u) {
  const auto design = build_lag_design(p, target, all_columns_except(p.num_series(), source), lags);
  const auto [train, test] = split_train_test(design, c.split);
  const auto model = krr_fit(train, c.kernel);
  GcTestResult r;
  r.source = p.names()[source];
  r.target = p.names()[target];
  r.errors_restricted = to_std(model.predict(test.features) - test.target);
  r.errors_unrestricted = u.errors;
  r.outcome = run_test(c.test, error_difference(r.errors_restricted, r.errors_unrestricted));
  r.lags_used = lags;
  r.gamma_restricted = model.gamma();
  r.gamma_unrestricted = u.gamma;
  r.config = c;
  return r;
}

void check_linear_df(std::size_t rows, std::size_t g, int lags) {
  const long df = static_cast<long>(rows) - static_cast<long>(g) * lags - 1;
  if (df <= 0) {
    throw std::invalid_argument("linear Granger test: denominator degrees of freedom " + std::to_string(df) +
                                " (N=" + std::to_string(rows) + ", G=" + std::to_string(g) +
                                ", L=" + std::to_string(lags) + ") must be positive");
  }
}

TargetFit fit_linear_unrestricted(const Panel& p, std::size_t target, int lags) {
  std::vector<std::size_t> all(p.num_series());
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
  const auto design = build_lag_design(p, target, all, lags);
  check_linear_df(design.rows(), p.num_series(), lags);
  const auto fit = ols_with_intercept(design.features, design.target, lag_column_names(design));
  TargetFit f;
  Eigen::MatrixXd a(design.rows(), design.dim() + 1);
  a.col(0).setOnes();
  a.rightCols(design.dim()) = design.features;
  f.errors = to_std(a * fit.coefficients - design.target);
  f.rss = fit.rss;
  f.rows = design.rows();
  return f;
}

GcTestResult linear_pair(const Panel& p, std::size_t source, std::size_t target, int lags, const GcConfig& c,
                         const TargetFit& u) {
  const auto design = build_lag_design(p, target, all_columns_except(p.num_series(), source), lags);
  const auto fit = ols_with_intercept(design.features, design.target, lag_column_names(design));
  Eigen::MatrixXd a(design.rows(), design.dim() + 1);
  a.col(0).setOnes();
  a.rightCols(design.dim()) = design.features;
  GcTestResult r;
  r.source = p.names()[source];
  r.target = p.names()[target];
  r.errors_restricted = to_std(a * fit.coefficients - design.target);
  r.errors_unrestricted = u.errors;
  const int df_den = static_cast<int>(u.rows) - static_cast<int>(p.num_series()) * lags - 1;
  r.outcome = f_test(fit.rss, u.rss, lags, df_den);
  r.outcome.n_effective = u.rows;
  r.lags_used = lags;
  r.gamma_restricted = r.gamma_unrestricted = std::numeric_limits<double>::quiet_NaN();
  r.config = c;
  return r;
}

TargetFit fit_unrestricted(const Panel& p, std::size_t target, int lags, const GcConfig& c) {
  return c.method == Method::kKrr ? fit_krr_unrestricted(p, target, lags, c) : fit_linear_unrestricted(p, target, lags);
}

GcTestResult fit_pair(const Panel& p, std::size_t source, std::size_t target, int lags, const GcConfig& c,
                      const TargetFit& u) {
  return c.method == Method::kKrr ? krr_pair(p, source, target, lags, c, u) : linear_pair(p, source, target, lags, c, u);
}

GcTestResult single_pair(const Panel& panel, std::string_view source, std::string_view target, GcConfig config) {
  const std::size_t s = panel.index_of(source);
  const std::size_t t = panel.index_of(target);
  if (s == t) throw std::invalid_argument("source and target must differ");
  const auto prep = prepare(panel, config);
  const auto u = fit_unrestricted(prep.panel, t, prep.lags, config);
  return fit_pair(prep.panel, s, t, prep.lags, config, u);
}

}  // namespace

GcTestResult gc_test(const Panel& panel, std::string_view source, std::string_view target, const GcConfig& config) {
  return single_pair(panel, source, target, config);
}

GcTestResult gc_test_linear(const Panel& panel, std::string_view source, std::string_view target,
                            const GcConfig& config) {
  GcConfig c = config;
  c.method = Method::kLinearF;
  return single_pair(panel, source, target, c);
}

NetworkResult gc_network(const Panel& panel, const GcConfig& config, int workers) {
  if (workers < 1) throw std::invalid_argument("workers must be at least 1");
  const auto prep = prepare(panel, config);
  const std::size_t g = panel.num_series();

  NetworkResult out;
  out.series = panel.names();
  out.lags_used = prep.lags;
  out.pvalues = Eigen::MatrixXd::Constant(g, g, std::numeric_limits<double>::quiet_NaN());

  std::vector<TargetFit> targets(g);
  std::vector<std::string> target_errors(g);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::size_t t = 0; t < g; ++t) {
    try {
      targets[t] = fit_unrestricted(prep.panel, t, prep.lags, config);
    } catch (const std::exception& e) {
      target_errors[t] = std::string("unrestricted model: ") + e.what();
    }
  }

  // Cells are written by index, so assembly does not depend on scheduling.
  const std::size_t pairs = g * (g - 1);
  std::vector<double> pv(pairs, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::string> errors(pairs);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::size_t k = 0; k < pairs; ++k) {
    const std::size_t t = k / (g - 1);
    std::size_t s = k % (g - 1);
    if (s >= t) ++s;
    if (!target_errors[t].empty()) {
      errors[k] = target_errors[t];
      continue;
    }
    try {
      pv[k] = fit_pair(prep.panel, s, t, prep.lags, config, targets[t]).outcome.p_value;
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }

  for (std::size_t k = 0; k < pairs; ++k) {
    const std::size_t t = k / (g - 1);
    std::size_t s = k % (g - 1);
    if (s >= t) ++s;
    if (errors[k].empty()) {
      out.pvalues(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) = pv[k];
    } else {
      out.failures.push_back({s, t, errors[k]});
    }
  }
  return out;
}

}  // namespace krrgc
