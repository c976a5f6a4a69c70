#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "krrgc/panel.hpp"

namespace krrgc {

enum class NetworkKind { kLinear5, kNonlinear5, kNonlinear7, kNonlinear9, kNonlinear11, kZachary1, kZachary2 };

std::string_view to_string(NetworkKind n);
// Throws std::invalid_argument for unknown names.
NetworkKind parse_network(std::string_view name);
std::span<const NetworkKind> all_networks();
std::size_t network_size(NetworkKind n);

struct NetworkSpec {
  NetworkKind network = NetworkKind::kLinear5;
  std::size_t length = 1000;
  std::size_t burn_in = 500;
  std::uint64_t seed = 0;
};

// adjacency(i, j) is true iff node i drives node j. No self-loops.
struct GroundTruth {
  std::vector<std::string> nodes;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> adjacency;

  std::size_t edge_count() const { return static_cast<std::size_t>(adjacency.count()); }
  bool operator==(const GroundTruth& o) const {
    return nodes == o.nodes && adjacency.rows() == o.adjacency.rows() && (adjacency == o.adjacency).all();
  }
};

// Test hooks. noise_scale scales every innovation and initial value;
// coupling overrides c of the Zachary networks.
struct SimulationHooks {
  double noise_scale = 1.0;
  std::optional<double> coupling;
};

class SimulationDiverged : public std::runtime_error {
 public:
  SimulationDiverged(std::string node, std::size_t step, double value);
  const std::string& node() const { return node_; }
  std::size_t step() const { return step_; }

 private:
  std::string node_;
  std::size_t step_;
};

// |x| above this (or non-finite) aborts a simulation.
inline constexpr double kDivergenceGuard = 1e150;

struct Simulation {
  Panel panel;
  GroundTruth truth;
};

Simulation generate(const NetworkSpec& spec, const SimulationHooks& hooks = {});

GroundTruth network_truth(NetworkKind network, std::uint64_t seed = 0);

// Zachary2 orientation for one set: 5 random edges stay bidirectional, the
// other 73 get a random direction.
GroundTruth zachary2_orientation(std::uint64_t seed);

// The 78 undirected edges of Zachary's karate club, 1-based node ids.
std::span<const std::array<int, 2>> karate_club_edges();

// splitmix64-based mixing used to derive independent substream seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

}  // namespace krrgc
