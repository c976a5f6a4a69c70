#include "krrgc/stat_tests.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/distributions/fisher_f.hpp>

namespace krrgc {

std::string_view to_string(TestMethod m) {
  switch (m) {
    case TestMethod::kSign: return "sign";
    case TestMethod::kWilcoxon: return "wilcoxon";
    case TestMethod::kFTest: return "f_test";
  }
  return "unknown";
}

std::vector<double> error_difference(std::span<const double> restricted_errors,
                                     std::span<const double> unrestricted_errors) {
  if (restricted_errors.size() != unrestricted_errors.size()) {
    throw std::invalid_argument("error vectors differ in length");
  }
  std::vector<double> delta(restricted_errors.size());
  for (std::size_t i = 0; i < delta.size(); ++i)
    delta[i] = std::abs(restricted_errors[i]) - std::abs(unrestricted_errors[i]);
  return delta;
}

double binomial_half_upper_tail(std::size_t n, std::size_t k) {
  if (k == 0) return 1.0;
  if (k > n) return 0.0;
  // log(i!) for i = 0..n
  std::vector<long double> log_fact(n + 1, 0.0L);
  for (std::size_t i = 1; i <= n; ++i) log_fact[i] = log_fact[i - 1] + std::log(static_cast<long double>(i));
  const long double log_half_n = static_cast<long double>(n) * std::log(0.5L);
  // Summing from the far tail inwards adds the smallest terms first.
  long double p = 0.0L;
  for (std::size_t j = n + 1; j-- > k;) {
    p += std::exp(log_fact[n] - log_fact[j] - log_fact[n - j] + log_half_n);
  }
  return static_cast<double>(std::min(p, 1.0L));
}

TestOutcome sign_test(std::span<const double> delta) {
  std::size_t pos = 0, neg = 0;
  for (double d : delta) {
    if (d > 0) ++pos;
    else if (d < 0) ++neg;
  }
  const std::size_t n = pos + neg;
  if (n == 0) throw UndecidableTest("sign test: every difference is zero");
  return {binomial_half_upper_tail(n, pos), static_cast<double>(pos), n, TestMethod::kSign};
}

namespace {

// Average ranks of the magnitudes of the nonzero entries; signs alongside.
void signed_ranks(std::span<const double> delta, std::vector<double>& ranks, std::vector<int>& signs) {
  std::vector<double> mags;
  for (double d : delta) {
    if (d != 0.0) {
      mags.push_back(std::abs(d));
      signs.push_back(d > 0 ? 1 : -1);
    }
  }
  const std::size_t n = mags.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return mags[a] < mags[b]; });
  ranks.assign(n, 0.0);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && mags[order[j + 1]] == mags[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
}

}  // namespace

double wilcoxon_exact_upper_tail(std::span<const double> ranks, double t) {
  // Work with doubled ranks, which are integers even for averaged ties.
  // T = W - (S - W) where W is the positive-rank sum, so T >= t <=> 2W >= t + S.
  std::vector<std::size_t> r2;
  std::size_t total = 0;
  for (double r : ranks) {
    const auto v = static_cast<std::size_t>(std::llround(2.0 * r));
    r2.push_back(v);
    total += v;
  }
  std::vector<double> counts(total + 1, 0.0);
  counts[0] = 1.0;
  std::size_t reach = 0;
  for (std::size_t v : r2) {
    for (std::size_t w = reach + 1; w-- > 0;) counts[w + v] += counts[w];
    reach += v;
  }
  // 2W (doubled units) must reach t + S, i.e. doubled W >= t + S.
  const double threshold = t + 0.5 * static_cast<double>(total);
  double hits = 0.0;
  for (std::size_t w = 0; w <= total; ++w) {
    if (static_cast<double>(w) >= threshold - 1e-9) hits += counts[w];
  }
  return hits / std::ldexp(1.0, static_cast<int>(ranks.size()));
}

double wilcoxon_normal_upper_tail(std::span<const double> ranks, double t) {
  double var = 0.0;
  for (double r : ranks) var += r * r;
  if (var <= 0.0) return t <= 0.0 ? 1.0 : 0.0;
  // T moves in steps of 2 when one sign flips, so the half-step correction is 1.
  const double z = (t - 1.0) / std::sqrt(var);
  return std::clamp(0.5 * std::erfc(z / std::sqrt(2.0)), 0.0, 1.0);
}

TestOutcome wilcoxon_signed_rank(std::span<const double> delta) {
  std::vector<double> ranks;
  std::vector<int> signs;
  signed_ranks(delta, ranks, signs);
  const std::size_t n = ranks.size();
  if (n == 0) throw UndecidableTest("wilcoxon test: every difference is zero");
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) t += signs[i] * ranks[i];
  const double p = n <= kWilcoxonExactMax ? wilcoxon_exact_upper_tail(ranks, t)
                                          : wilcoxon_normal_upper_tail(ranks, t);
  return {p, t, n, TestMethod::kWilcoxon};
}

TestOutcome f_test(double rss_restricted, double rss_unrestricted, int df_num, int df_den) {
  if (df_num < 1) throw std::invalid_argument("F-test: numerator degrees of freedom must be positive");
  if (df_den < 1) {
    throw std::invalid_argument("F-test: denominator degrees of freedom " + std::to_string(df_den) +
                                " must be positive");
  }
  if (!(rss_unrestricted > 0.0)) throw std::invalid_argument("F-test: unrestricted RSS must be positive");
  if (!(rss_restricted >= 0.0)) throw std::invalid_argument("F-test: restricted RSS must be nonnegative");
  const double num = (rss_restricted - rss_unrestricted) / df_num;
  TestOutcome out{1.0, 0.0, 0, TestMethod::kFTest};
  if (num > 0.0) {
    out.statistic = num / (rss_unrestricted / df_den);
    boost::math::fisher_f_distribution<double> dist(df_num, df_den);
    out.p_value = std::clamp(boost::math::cdf(boost::math::complement(dist, out.statistic)), 0.0, 1.0);
  }
  return out;
}

TestOutcome granger_f_test(double rss_restricted, double rss_unrestricted, int lags, int n) {
  auto out = f_test(rss_restricted, rss_unrestricted, lags, n - 2 * lags - 1);
  out.n_effective = static_cast<std::size_t>(n);
  return out;
}

}  // namespace krrgc
