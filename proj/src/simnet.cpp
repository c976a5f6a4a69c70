#include "krrgc/simnet.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace krrgc {

namespace {

constexpr std::array<NetworkKind, 7> kAll = {NetworkKind::kLinear5,    NetworkKind::kNonlinear5,
                                             NetworkKind::kNonlinear7, NetworkKind::kNonlinear9,
                                             NetworkKind::kNonlinear11, NetworkKind::kZachary1,
                                             NetworkKind::kZachary2};

constexpr std::array<std::array<int, 2>, 78> kKarate = {{
    {1, 2},   {1, 3},   {1, 4},   {1, 5},   {1, 6},   {1, 7},   {1, 8},   {1, 9},   {1, 11},  {1, 12},
    {1, 13},  {1, 14},  {1, 18},  {1, 20},  {1, 22},  {1, 32},  {2, 3},   {2, 4},   {2, 8},   {2, 14},
    {2, 18},  {2, 20},  {2, 22},  {2, 31},  {3, 4},   {3, 8},   {3, 9},   {3, 10},  {3, 14},  {3, 28},
    {3, 29},  {3, 33},  {4, 8},   {4, 13},  {4, 14},  {5, 7},   {5, 11},  {6, 7},   {6, 11},  {6, 17},
    {7, 17},  {9, 31},  {9, 33},  {9, 34},  {10, 34}, {14, 34}, {15, 33}, {15, 34}, {16, 33}, {16, 34},
    {19, 33}, {19, 34}, {20, 34}, {21, 33}, {21, 34}, {23, 33}, {23, 34}, {24, 26}, {24, 28}, {24, 30},
    {24, 33}, {24, 34}, {25, 26}, {25, 28}, {25, 32}, {26, 32}, {27, 30}, {27, 34}, {28, 34}, {29, 32},
    {29, 34}, {30, 33}, {30, 34}, {31, 33}, {31, 34}, {32, 33}, {32, 34}, {33, 34},
}};

using Edge = std::array<int, 2>;

const std::vector<Edge>& edge_list(NetworkKind n) {
  static const std::vector<Edge> linear5 = {{1, 2}, {1, 3}, {1, 4}, {4, 5}, {5, 4}};
  static const std::vector<Edge> nonlinear7 = {{1, 2}, {1, 6}, {1, 7}, {2, 3}, {3, 4},
                                               {3, 6}, {6, 5}, {6, 7}, {7, 4}};
  static const std::vector<Edge> nonlinear9 = {{1, 2}, {1, 3}, {1, 4}, {1, 8}, {1, 9}, {3, 8},
                                               {4, 5}, {4, 6}, {5, 4}, {6, 7}, {8, 9}};
  static const std::vector<Edge> nonlinear11 = {{1, 2},  {1, 8},  {1, 9}, {1, 10}, {2, 3},
                                                {2, 4},  {2, 10}, {2, 11}, {3, 8}, {3, 10},
                                                {4, 5},  {4, 6},  {5, 4}, {6, 7},  {8, 9}};
  switch (n) {
    case NetworkKind::kLinear5:
    case NetworkKind::kNonlinear5: return linear5;
    case NetworkKind::kNonlinear7: return nonlinear7;
    case NetworkKind::kNonlinear9: return nonlinear9;
    case NetworkKind::kNonlinear11: return nonlinear11;
    default: break;
  }
  throw std::logic_error("edge_list: not a fixed-list network");
}

std::vector<std::string> node_names(std::size_t g) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= g; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

GroundTruth empty_truth(std::size_t g) {
  GroundTruth t;
  t.nodes = node_names(g);
  t.adjacency = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(g, g, false);
  return t;
}

double sgn(double v) { return static_cast<double>((v > 0) - (v < 0)); }

// Substream tags.
constexpr std::uint64_t kAdditive = 1;
constexpr std::uint64_t kMultiplicative = 2;
constexpr std::uint64_t kOrientation = 3;

}  // namespace

SimulationDiverged::SimulationDiverged(std::string node, std::size_t step, double value)
    : std::runtime_error("simulation diverged: node " + node + " reached " + format_double(value) +
                         " at step " + std::to_string(step) + " (burn-in included)"),
      node_(std::move(node)),
      step_(step) {}

std::string_view to_string(NetworkKind n) {
  switch (n) {
    case NetworkKind::kLinear5: return "linear5";
    case NetworkKind::kNonlinear5: return "nonlinear5";
    case NetworkKind::kNonlinear7: return "nonlinear7";
    case NetworkKind::kNonlinear9: return "nonlinear9";
    case NetworkKind::kNonlinear11: return "nonlinear11";
    case NetworkKind::kZachary1: return "zachary1";
    case NetworkKind::kZachary2: return "zachary2";
  }
  return "unknown";
}

NetworkKind parse_network(std::string_view name) {
  for (auto n : kAll)
    if (to_string(n) == name) return n;
  throw std::invalid_argument("unknown network '" + std::string(name) +
                              "' (expected linear5, nonlinear5, nonlinear7, nonlinear9, nonlinear11, zachary1 "
                              "or zachary2)");
}

std::span<const NetworkKind> all_networks() { return kAll; }

std::size_t network_size(NetworkKind n) {
  switch (n) {
    case NetworkKind::kLinear5:
    case NetworkKind::kNonlinear5: return 5;
    case NetworkKind::kNonlinear7: return 7;
    case NetworkKind::kNonlinear9: return 9;
    case NetworkKind::kNonlinear11: return 11;
    case NetworkKind::kZachary1:
    case NetworkKind::kZachary2: return 34;
  }
  return 0;
}

std::span<const std::array<int, 2>> karate_club_edges() { return kKarate; }

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  auto splitmix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return splitmix(splitmix(splitmix(base) ^ a) ^ b);
}

GroundTruth zachary2_orientation(std::uint64_t seed) {
  std::mt19937_64 rng(mix_seed(seed, kOrientation));
  std::vector<std::size_t> order(kKarate.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng() % (i + 1)]);

  GroundTruth t = empty_truth(34);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto [a, b] = kKarate[order[k]];
    if (k < 5) {
      t.adjacency(a - 1, b - 1) = t.adjacency(b - 1, a - 1) = true;
    } else if (rng() & 1) {
      t.adjacency(a - 1, b - 1) = true;
    } else {
      t.adjacency(b - 1, a - 1) = true;
    }
  }
  return t;
}

GroundTruth network_truth(NetworkKind network, std::uint64_t seed) {
  if (network == NetworkKind::kZachary2) return zachary2_orientation(seed);
  GroundTruth t = empty_truth(network_size(network));
  if (network == NetworkKind::kZachary1) {
    for (const auto& [a, b] : kKarate) t.adjacency(a - 1, b - 1) = t.adjacency(b - 1, a - 1) = true;
    return t;
  }
  for (const auto& [a, b] : edge_list(network)) t.adjacency(a - 1, b - 1) = true;
  return t;
}

Simulation generate(const NetworkSpec& spec, const SimulationHooks& hooks) {
  if (spec.length < 1) throw std::invalid_argument("length must be at least 1");
  const auto net = spec.network;
  const std::size_t g = network_size(net);
  const bool zachary = net == NetworkKind::kZachary1 || net == NetworkKind::kZachary2;
  const std::size_t max_lag = zachary ? 1 : 3;
  const std::size_t total = max_lag + spec.burn_in + spec.length;
  GroundTruth truth = network_truth(net, spec.seed);

  // One additive and one multiplicative substream per node.
  std::vector<std::vector<double>> wa(g, std::vector<double>(total)), wb(g, std::vector<double>(total));
  for (std::size_t i = 0; i < g; ++i) {
    std::mt19937_64 ra(mix_seed(spec.seed, kAdditive, i)), rb(mix_seed(spec.seed, kMultiplicative, i));
    std::normal_distribution<double> na(0.0, 1.0), nb(0.0, 1.0);
    for (std::size_t t = 0; t < total; ++t) {
      wa[i][t] = hooks.noise_scale * na(ra);
      wb[i][t] = hooks.noise_scale * nb(rb);
    }
  }

  // Zachary parameters.
  const double za = 1.8, zs = 0.01;
  const double zc = hooks.coupling.value_or(net == NetworkKind::kZachary2 ? 0.05 : 0.025);

  std::vector<std::vector<double>> x(g, std::vector<double>(total, 0.0));
  // Initial values come from the innovation noise; the Zachary map uses its
  // own noise scale s so the start stays inside the map's basin.
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t t = 0; t < max_lag; ++t) x[i][t] = (zachary ? zs : 1.0) * wa[i][t];

  const double r2 = std::sqrt(2.0);
  auto clip = [](double v, double lo, double hi) { return std::clamp(v, lo, hi); };
  auto slog = [](double v) { return std::log(1.0 + std::abs(v)) * sgn(v); };

  for (std::size_t t = max_lag; t < total; ++t) {
    // X(node, lag) with 1-based node numbering.
    auto X = [&](int node, int lag) { return x[node - 1][t - lag]; };
    auto w = [&](int node) { return wa[node - 1][t]; };
    auto wm = [&](int node) { return wb[node - 1][t]; };
    auto set = [&](int node, double v) { x[node - 1][t] = v; };
    auto sq = [](double v) { return v * v; };
    auto cube = [](double v) { return v * v * v; };

    switch (net) {
      case NetworkKind::kLinear5:
        set(1, 0.95 * r2 * X(1, 1) - 0.9025 * X(1, 2) + w(1));
        set(2, 0.5 * X(1, 2) + w(2));
        set(3, -0.4 * X(1, 3) + w(3));
        set(4, -0.5 * X(1, 2) + 0.25 * r2 * X(4, 1) + 0.25 * r2 * X(5, 1) + w(4));
        set(5, -0.25 * r2 * X(4, 1) + 0.25 * r2 * X(5, 1) + w(5));
        break;
      case NetworkKind::kNonlinear5:
        set(1, 0.95 * r2 * X(1, 1) - 0.9025 * X(1, 2) + w(1));
        set(2, 0.5 * sq(X(1, 2)) + w(2));
        set(3, -0.4 * X(1, 3) + w(3));
        set(4, -0.5 * sq(X(1, 2)) + 0.5 * r2 * X(4, 1) + 0.25 * r2 * X(5, 1) + w(4));
        set(5, -0.5 * r2 * X(4, 1) + 0.5 * r2 * X(5, 1) + w(5));
        break;
      case NetworkKind::kNonlinear7:
        set(1, 0.95 * r2 * X(1, 1) - 0.9025 * X(1, 2) + w(1));
        set(2, -0.04 * cube(X(1, 3)) + 0.04 * cube(X(1, 1)) + w(2));
        set(3, -0.04 * r2 * cube(X(2, 1)) + 0.04 * r2 * cube(X(2, 2)) + w(3));
        set(4, slog(X(3, 1)) + 0.001 * cube(X(7, 2)) - 0.001 * cube(X(7, 3)) + w(4));
        set(5, 0.04 * clip(wm(5), -1, 1) * std::pow(X(6, 2), 5) + w(5));
        set(6, 0.04 * cube(X(1, 2)) + 0.04 * cube(X(3, 1)) + w(6));
        set(7, clip(wm(7), -0.5, 0.5) * (0.04 * cube(X(1, 2)) + 0.1 * sq(X(6, 1)) - 0.1 * sq(X(6, 2))) + w(7));
        break;
      case NetworkKind::kNonlinear9:
        set(1, 0.95 * r2 * X(1, 1) - 0.9025 * X(1, 2) + w(1));
        set(2, 0.5 * sq(X(1, 2)) + 0.5 * sq(X(2, 1)) - 0.4 * sq(X(2, 2)) + w(2));
        set(3, -0.4 * X(1, 3) + 0.5 * sq(X(3, 1)) - 0.4 * sq(X(3, 2)) + w(3));
        set(4, -0.5 * sq(X(1, 2)) + 0.5 * sq(X(4, 1)) - 0.4 * sq(X(4, 2)) + 0.5 * r2 * X(4, 1) +
                   0.25 * r2 * X(5, 1) + w(4));
        set(5, -0.5 * r2 * X(4, 1) + 0.5 * r2 * X(5, 1) + w(5));
        set(6, slog(X(4, 1)) + 0.5 * sq(X(6, 1)) - 0.4 * sq(X(6, 2)) + w(6));
        set(7, 0.04 * clip(wm(7), -1, 1) * std::pow(X(6, 2), 5) + 0.5 * sq(X(7, 1)) - 0.4 * sq(X(7, 2)) + w(7));
        set(8, 0.4 * X(1, 2) + 0.25 * cube(X(3, 1)) + 0.5 * sq(X(8, 1)) - 0.4 * sq(X(8, 2)) + w(8));
        set(9, clip(wm(9), -0.5, 0.5) * (0.2 * X(1, 2) + 0.1 * sq(X(8, 1)) - 0.1 * sq(X(8, 2))) +
                   0.5 * sq(X(9, 1)) - 0.4 * sq(X(9, 2)) + w(9));
        break;
      case NetworkKind::kNonlinear11:
        set(1, 0.25 * sq(X(1, 1)) - 0.25 * sq(X(1, 2)) + w(1));
        set(2, slog(X(1, 2)) + w(2));
        set(3, -0.1 * cube(X(2, 3)) + w(3));
        set(4, -0.5 * sq(X(2, 2)) + 0.5 * r2 * X(4, 1) + 0.25 * r2 * X(5, 1) + w(4));
        set(5, -0.5 * r2 * X(4, 1) + 0.5 * r2 * X(5, 1) + w(5));
        set(6, slog(X(4, 1)) + w(6));
        set(7, 0.04 * clip(wm(7), -1, 1) * std::pow(X(6, 2), 5) + w(7));
        set(8, 0.4 * X(1, 2) + 0.25 * cube(X(3, 1)) + w(8));
        set(9, clip(wm(9), -0.5, 0.5) * (0.2 * X(1, 2) + 0.1 * sq(X(8, 1)) - 0.1 * sq(X(8, 2))) + w(9));
        set(10, 0.25 * sq(X(1, 3)) - 0.01 * sq(X(2, 3)) + 0.15 * cube(X(3, 3)) + w(10));
        set(11, 0.1 * std::pow(X(2, 1), 4) - 0.1 * std::pow(X(2, 2), 4) + 0.1 * cube(X(6, 3)) + w(11));
        break;
      case NetworkKind::kZachary1:
      case NetworkKind::kZachary2:
        for (std::size_t i = 0; i < g; ++i) {
          const double own = 1.0 - za * sq(x[i][t - 1]);
          double csum = 0.0, drive = 0.0;
          for (std::size_t j = 0; j < g; ++j) {
            if (truth.adjacency(j, i)) {
              csum += zc;
              drive += zc * (1.0 - za * sq(x[j][t - 1]));
            }
          }
          x[i][t] = (1.0 - csum) * own + drive + zs * wa[i][t];
        }
        break;
    }
    for (std::size_t i = 0; i < g; ++i) {
      const double v = x[i][t];
      if (!std::isfinite(v) || std::abs(v) > kDivergenceGuard) {
        throw SimulationDiverged(truth.nodes[i], t, v);
      }
    }
  }

  Eigen::MatrixXd values(spec.length, g);
  const std::size_t start = total - spec.length;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t t = 0; t < spec.length; ++t) values(t, i) = x[i][start + t];
  return {Panel(std::move(values), truth.nodes), std::move(truth)};
}

}  // namespace krrgc
