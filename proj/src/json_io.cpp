#include "krrgc/json_io.hpp"

#include <cmath>
#include <fstream>
#include <map>

namespace krrgc {

json truth_to_json(const GroundTruth& truth) {
  json edges = json::array();
  const auto g = truth.adjacency.rows();
  for (Eigen::Index i = 0; i < g; ++i)
    for (Eigen::Index j = 0; j < g; ++j)
      if (truth.adjacency(i, j)) edges.push_back({truth.nodes[i], truth.nodes[j]});
  return {{"nodes", truth.nodes}, {"edges", edges}};
}

GroundTruth truth_from_json(const json& doc) {
  GroundTruth t;
  t.nodes = doc.at("nodes").get<std::vector<std::string>>();
  const auto g = static_cast<Eigen::Index>(t.nodes.size());
  std::map<std::string, Eigen::Index> index;
  for (Eigen::Index i = 0; i < g; ++i) {
    if (!index.emplace(t.nodes[i], i).second) throw std::invalid_argument("truth: duplicate node '" + t.nodes[i] + "'");
  }
  t.adjacency = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(g, g, false);
  for (const auto& e : doc.at("edges")) {
    const auto src = e.at(0).get<std::string>();
    const auto dst = e.at(1).get<std::string>();
    const auto a = index.find(src), b = index.find(dst);
    if (a == index.end() || b == index.end()) {
      throw std::invalid_argument("truth: edge " + src + " -> " + dst + " names an unknown node");
    }
    if (a->second == b->second) throw std::invalid_argument("truth: self-loop on '" + src + "'");
    t.adjacency(a->second, b->second) = true;
  }
  return t;
}

json config_to_json(const GcConfig& c) {
  json j;
  j["lags"] = c.lags ? json(*c.lags) : json("cao");
  j["cao_max_dim"] = c.cao.max_dim;
  j["cao_plateau_tol"] = c.cao.plateau_tol;
  j["train_fraction"] = c.split.train_fraction;
  j["gap"] = c.split.gap ? json(*c.split.gap) : json("lags");
  j["lambda"] = c.kernel.lambda;
  j["gamma"] = c.kernel.gamma ? json(*c.kernel.gamma) : json("auto");
  j["test"] = std::string(to_string(c.test));
  j["quantiles"] = c.quantiles ? json(*c.quantiles) : json(nullptr);
  j["method"] = std::string(to_string(c.method));
  return j;
}

json network_to_json(const NetworkResult& r, const GcConfig& config) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < r.pvalues.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < r.pvalues.cols(); ++j) {
      const double p = r.pvalues(i, j);
      row.push_back(std::isnan(p) ? json(nullptr) : json(p));
    }
    rows.push_back(std::move(row));
  }
  json failures = json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"source", r.series[f.source]}, {"target", r.series[f.target]}, {"message", f.message}});
  }
  return {{"series", r.series}, {"pvalues", rows}, {"config", config_to_json(config)},
          {"lag_used", r.lags_used}, {"failures", failures}};
}

NamedPValues pvalues_from_json(const json& doc) {
  NamedPValues out;
  out.series = doc.at("series").get<std::vector<std::string>>();
  const auto g = static_cast<Eigen::Index>(out.series.size());
  const auto& rows = doc.at("pvalues");
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != g) {
    throw std::invalid_argument("pvalues: expected a " + std::to_string(g) + "x" + std::to_string(g) + " matrix");
  }
  out.pvalues.resize(g, g);
  for (Eigen::Index i = 0; i < g; ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != g) {
      throw std::invalid_argument("pvalues: row " + std::to_string(i) + " has the wrong length");
    }
    for (Eigen::Index j = 0; j < g; ++j) {
      const auto& v = row.at(j);
      if (v.is_null()) {
        out.pvalues(i, j) = std::nan("");
      } else {
        const double p = v.get<double>();
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("pvalues: entry outside [0, 1]");
        out.pvalues(i, j) = p;
      }
    }
  }
  return out;
}

json report_to_json(const NetworkEvalReport& r) {
  return {{"auc", r.auc},
          {"brier", r.brier},
          {"threshold", r.threshold},
          {"acc_at_p05", r.acc_at_p05},
          {"bal_acc_at_p05", r.bal_acc_at_p05},
          {"gmean_threshold", r.gmean_threshold},
          {"acc_at_gmean", r.acc_at_gmean},
          {"bal_acc_at_gmean", r.bal_acc_at_gmean}};
}

json test_result_to_json(const GcTestResult& r) {
  auto num = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
  return {{"source", r.source},
          {"target", r.target},
          {"p_value", r.outcome.p_value},
          {"statistic", r.outcome.statistic},
          {"n_effective", r.outcome.n_effective},
          {"method", std::string(to_string(r.outcome.method))},
          {"lags_used", r.lags_used},
          {"gamma_restricted", num(r.gamma_restricted)},
          {"gamma_unrestricted", num(r.gamma_unrestricted)},
          {"errors_restricted", r.errors_restricted},
          {"errors_unrestricted", r.errors_unrestricted},
          {"config", config_to_json(r.config)}};
}

GroundTruth align_truth(const GroundTruth& truth, const std::vector<std::string>& order) {
  std::map<std::string, Eigen::Index> index;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(truth.nodes.size()); ++i) index[truth.nodes[i]] = i;
  std::string only_pvalues, only_truth;
  std::map<std::string, bool> in_order;
  for (const auto& n : order) {
    in_order[n] = true;
    if (!index.count(n)) only_pvalues += (only_pvalues.empty() ? "" : ", ") + n;
  }
  for (const auto& n : truth.nodes)
    if (!in_order.count(n)) only_truth += (only_truth.empty() ? "" : ", ") + n;
  if (!only_pvalues.empty() || !only_truth.empty()) {
    std::string msg = "node sets differ:";
    if (!only_pvalues.empty()) msg += " missing from truth: " + only_pvalues + ";";
    if (!only_truth.empty()) msg += " missing from p-values: " + only_truth + ";";
    throw NodeMismatch(msg);
  }
  GroundTruth out;
  out.nodes = order;
  const auto g = static_cast<Eigen::Index>(order.size());
  out.adjacency.resize(g, g);
  for (Eigen::Index i = 0; i < g; ++i)
    for (Eigen::Index j = 0; j < g; ++j) out.adjacency(i, j) = truth.adjacency(index[order[i]], index[order[j]]);
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return json::parse(in);
}

}  // namespace krrgc
