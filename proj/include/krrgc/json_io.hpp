#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "krrgc/eval.hpp"
#include "krrgc/gc.hpp"
#include "krrgc/simnet.hpp"

namespace krrgc {

using json = nlohmann::json;

// Truth document: {"nodes": [...], "edges": [[src, dst], ...]} by node name.
json truth_to_json(const GroundTruth& truth);
GroundTruth truth_from_json(const json& doc);

json config_to_json(const GcConfig& config);

// {"series": [...], "pvalues": [[...]], "config": {...}, "lag_used": L,
//  "failures": [...]}; the diagonal and failed cells are null.
json network_to_json(const NetworkResult& result, const GcConfig& config);

struct NamedPValues {
  std::vector<std::string> series;
  Eigen::MatrixXd pvalues;  // NaN where the document holds null
};
NamedPValues pvalues_from_json(const json& doc);

json report_to_json(const NetworkEvalReport& report);
json test_result_to_json(const GcTestResult& result);

// Disagreement between the node sets of two documents.
class NodeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Reorders `truth` to follow `order`; throws NodeMismatch naming the nodes
// present on only one side.
GroundTruth align_truth(const GroundTruth& truth, const std::vector<std::string>& order);

json read_json_file(const std::string& path);

}  // namespace krrgc
