#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "krrgc/lag_design.hpp"
#include "krrgc/panel.hpp"
#include "krrgc/quantile.hpp"

using namespace krrgc;

namespace {

Panel random_panel(std::mt19937_64& rng, std::size_t len, std::size_t g) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXd v(len, g);
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = 0; j < g; ++j) v(i, j) = nd(rng);
  std::vector<std::string> names;
  for (std::size_t j = 0; j < g; ++j) names.push_back("s" + std::to_string(j));
  return Panel(v, names);
}

}  // namespace

TEST(Panel, RejectsDuplicateNamesAndNonFinite) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(3, 2);
  EXPECT_THROW(Panel(v, {"a", "a"}), std::invalid_argument);
  EXPECT_THROW(Panel(v, {"a"}), std::invalid_argument);
  v(1, 1) = std::nan("");
  EXPECT_THROW(Panel(v, {"a", "b"}), std::invalid_argument);
}

TEST(Panel, CsvRoundTrip) {
  std::mt19937_64 rng(3);
  const auto p = random_panel(rng, 20, 3);
  std::stringstream ss;
  write_panel_csv(ss, p);
  const auto q = read_panel_csv(ss);
  EXPECT_EQ(q.names(), p.names());
  EXPECT_TRUE(q.values() == p.values());
}

TEST(Panel, CsvErrorsCarryLineNumber) {
  std::stringstream ss("a,b\n1,2\n3,oops\n");
  try {
    read_panel_csv(ss);
    FAIL();
  } catch (const CsvError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::stringstream ragged("a,b\n1,2\n3\n");
  EXPECT_THROW(read_panel_csv(ragged), CsvError);
}

TEST(LagDesign, SingleSeriesExample) {
  Eigen::MatrixXd v(5, 1);
  v << 1, 2, 3, 4, 5;
  Panel p(v, {"x"});
  const auto d = build_lag_design(p, "x", {}, 2);
  Matrix expect(3, 2);
  expect << 2, 1, 3, 2, 4, 3;
  EXPECT_TRUE(d.features == expect);
  EXPECT_EQ(d.target, Eigen::Vector3d(3, 4, 5));
}

TEST(LagDesign, ExcludingOtherSeriesLeavesOwnLag) {
  Eigen::MatrixXd v(6, 2);
  v.setRandom();
  Panel p(v, {"y", "q"});
  const std::vector<std::string> ex{"q"};
  const auto d = build_lag_design(p, "y", ex, 1);
  EXPECT_EQ(d.dim(), 1u);
  EXPECT_EQ(d.included, std::vector<std::string>{"y"});
}

TEST(LagDesign, ShapeArithmetic) {
  std::mt19937_64 rng(1);
  const auto p = random_panel(rng, 10, 3);
  const auto d = build_lag_design(p, "s0", {}, 3);
  EXPECT_EQ(d.rows(), 7u);
  EXPECT_EQ(d.dim(), 9u);
}

TEST(LagDesign, Errors) {
  std::mt19937_64 rng(1);
  const auto p = random_panel(rng, 5, 2);
  const std::vector<std::string> self{"s0"}, unknown{"zz"};
  EXPECT_THROW(build_lag_design(p, "s0", self, 1), std::invalid_argument);
  EXPECT_THROW(build_lag_design(p, "s0", unknown, 1), std::invalid_argument);
  EXPECT_THROW(build_lag_design(p, "nope", {}, 1), std::invalid_argument);
  EXPECT_THROW(build_lag_design(p, "s0", {}, 5), std::invalid_argument);
  EXPECT_THROW(build_lag_design(p, "s0", {}, 0), std::invalid_argument);
}

// Every cell against panel[t + L - l, g] on random shapes.
TEST(LagDesign, ExhaustiveIndexCheck) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t g = 1 + rng() % 5;
    const int lags = 1 + static_cast<int>(rng() % 4);
    const std::size_t len = lags + 1 + rng() % 30;
    const auto p = random_panel(rng, len, g);
    const std::size_t target = rng() % g;
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < g; ++j)
      if (j == target || rng() % 2) cols.push_back(j);
    const auto d = build_lag_design(p, target, cols, lags);
    ASSERT_EQ(d.rows(), len - lags);
    ASSERT_EQ(d.dim(), cols.size() * lags);
    for (std::size_t t = 0; t < d.rows(); ++t) {
      ASSERT_EQ(d.target(t), p.values()(t + lags, target));
      for (std::size_t gi = 0; gi < cols.size(); ++gi)
        for (int l = 1; l <= lags; ++l)
          ASSERT_EQ(d.features(t, gi * lags + (l - 1)), p.values()(t + lags - l, cols[gi]));
    }
  }
}

TEST(Split, Examples) {
  auto r = split_ranges(100, {0.7, 3}, 3);
  EXPECT_EQ(r.train, (RowRange{0, 70}));
  EXPECT_EQ(r.test, (RowRange{73, 100}));
  EXPECT_THROW(split_ranges(10, {0.7, 9}, 1), std::invalid_argument);
  r = split_ranges(10, {0.5, 0}, 1);
  EXPECT_EQ(r.train, (RowRange{0, 5}));
  EXPECT_EQ(r.test, (RowRange{5, 10}));
}

TEST(Split, DefaultGapIsLagCount) {
  const auto r = split_ranges(100, {}, 4);
  EXPECT_EQ(r.test.begin - r.train.end, 4u);
}

TEST(Split, GapSeparatesPartitionsProperty) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t rows = 2 + rng() % 300;
    const double frac = 0.05 + 0.9 * std::uniform_real_distribution<>()(rng);
    const int gap = static_cast<int>(rng() % 10);
    SplitRanges r;
    try {
      r = split_ranges(rows, {frac, gap}, 1);
    } catch (const std::invalid_argument&) {
      continue;
    }
    ASSERT_GT(r.train.size(), 0u);
    ASSERT_GT(r.test.size(), 0u);
    ASSERT_EQ(r.train.begin, 0u);
    ASSERT_EQ(r.train.end + gap, r.test.begin);
    ASSERT_EQ(r.test.end, rows);
  }
}

TEST(Split, DesignSlicesMatchRanges) {
  std::mt19937_64 rng(2);
  const auto p = random_panel(rng, 50, 2);
  const auto d = build_lag_design(p, "s1", {}, 2);
  const auto [train, test] = split_train_test(d, {0.7, {}});
  EXPECT_EQ(train.rows(), 33u);  // floor(0.7 * 48)
  EXPECT_EQ(test.rows(), 48u - 33u - 2u);
  EXPECT_EQ(test.target(0), d.target(35));
}

TEST(Quantile, EvenlySpacedExample) {
  const std::vector<double> s{10, 20, 30, 40, 50};
  const auto r = quantile_transform(s, 1000, {0, 5});
  const std::vector<double> expect{0, 0.25, 0.5, 0.75, 1.0};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(r.values[i], expect[i], 1e-12);
  EXPECT_FALSE(r.constant);
}

TEST(Quantile, ClipsOutsideFit) {
  const std::vector<double> s{1, 2, 3, 4, -100, 100};
  const auto r = quantile_transform(s, 1000, {0, 4});
  EXPECT_EQ(r.values[4], 0.0);
  EXPECT_EQ(r.values[5], 1.0);
}

TEST(Quantile, ConstantMapsToHalf) {
  const std::vector<double> s(8, 3.0);
  const auto r = quantile_transform(s, 10, {0, 8});
  EXPECT_TRUE(r.constant);
  for (double v : r.values) EXPECT_EQ(v, 0.5);
}

TEST(Quantile, BoundedAndMonotoneProperty) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 200;
    std::vector<double> s(n);
    // Rounded values exercise ties.
    for (auto& v : s) v = (trial % 2) ? std::round(nd(rng) * 3) : nd(rng);
    const std::size_t fit_end = 1 + rng() % n;
    const int nq = 2 + static_cast<int>(rng() % 1500);
    const auto grid = fit_quantile_grid(std::span<const double>(s.data(), fit_end), nq);
    std::vector<double> probe(s);
    for (int k = 0; k < 50; ++k) probe.push_back(nd(rng) * 4);
    std::sort(probe.begin(), probe.end());
    double prev = -1;
    for (double x : probe) {
      const double m = grid.map(x);
      ASSERT_GE(m, 0.0);
      ASSERT_LE(m, 1.0);
      ASSERT_GE(m, prev);
      prev = m;
    }
  }
}
