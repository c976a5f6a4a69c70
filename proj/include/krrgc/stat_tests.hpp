#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace krrgc {

enum class TestMethod { kSign, kWilcoxon, kFTest };

std::string_view to_string(TestMethod m);

struct TestOutcome {
  double p_value = 1.0;
  double statistic = 0.0;
  // Samples left after dropping exact zeros (sign / Wilcoxon); N for the F-test.
  std::size_t n_effective = 0;
  TestMethod method = TestMethod::kSign;
};

// All differences were exactly zero.
class UndecidableTest : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// |restricted_errors| - |unrestricted_errors|, element-wise.
std::vector<double> error_difference(std::span<const double> restricted_errors,
                                     std::span<const double> unrestricted_errors);

// P[X >= k] for X ~ Binomial(n, 1/2), exact via log-factorials.
double binomial_half_upper_tail(std::size_t n, std::size_t k);

// One-sided sign test, alternative: median(delta) > 0. statistic = n+.
TestOutcome sign_test(std::span<const double> delta);

// One-sided Wilcoxon signed-rank test, alternative: delta symmetric around a
// value > 0. statistic = T = sum sgn(d_i) R_i with average ranks for ties.
// Exact for up to kWilcoxonExactMax nonzero samples, normal approximation
// with continuity correction above.
inline constexpr std::size_t kWilcoxonExactMax = 25;
TestOutcome wilcoxon_signed_rank(std::span<const double> delta);

// Building blocks of the Wilcoxon test, exposed for verification. `ranks`
// are the (possibly averaged) ranks of the nonzero |delta|; P[T >= t] under
// random independent signs.
double wilcoxon_exact_upper_tail(std::span<const double> ranks, double t);
double wilcoxon_normal_upper_tail(std::span<const double> ranks, double t);

// Nested-model F-test, F = ((rss_r - rss_u) / df_num) / (rss_u / df_den).
// A negative improvement clamps F to 0 (p = 1).
TestOutcome f_test(double rss_restricted, double rss_unrestricted, int df_num, int df_den);

// Classical bivariate Granger F-test with (L, N - 2L - 1) degrees of freedom.
TestOutcome granger_f_test(double rss_restricted, double rss_unrestricted, int lags, int n);

}  // namespace krrgc
