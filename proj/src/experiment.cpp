#include "krrgc/experiment.hpp"

#include <chrono>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "krrgc/json_io.hpp"

namespace krrgc {

void ExperimentPlan::validate() const {
  if (networks.empty()) throw std::invalid_argument("plan: no networks");
  if (lengths.empty()) throw std::invalid_argument("plan: no lengths");
  if (n_sets < 1) throw std::invalid_argument("plan: n_sets must be >= 1");
  if (workers < 1) throw std::invalid_argument("plan: workers must be >= 1");
  if (!(p_threshold > 0.0 && p_threshold <= 1.0)) throw std::invalid_argument("plan: p threshold outside (0, 1]");
  if (!(max_failed_fraction >= 0.0 && max_failed_fraction <= 1.0)) {
    throw std::invalid_argument("plan: failed fraction outside [0, 1]");
  }
  for (auto n : lengths)
    if (n < 1) throw std::invalid_argument("plan: lengths must be positive");
  config.validate();
}

MetricSummary summarize_values(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("summarize: no values");
  MetricSummary s;
  s.median = percentile(values, 0.5);
  s.p25 = percentile(values, 0.25);
  s.p75 = percentile(values, 0.75);
  s.min = percentile(values, 0.0);
  s.max = percentile(values, 1.0);
  return s;
}

std::vector<NamedSummary> summarize(std::span<const NetworkEvalReport> reports) {
  if (reports.empty()) throw std::invalid_argument("summarize: no reports");
  auto collect = [&](double NetworkEvalReport::*field) {
    std::vector<double> v;
    v.reserve(reports.size());
    for (const auto& r : reports) v.push_back(r.*field);
    return summarize_values(std::move(v));
  };
  return {{"auc", collect(&NetworkEvalReport::auc)},
          {"brier", collect(&NetworkEvalReport::brier)},
          {"acc_at_p05", collect(&NetworkEvalReport::acc_at_p05)},
          {"bal_acc_at_p05", collect(&NetworkEvalReport::bal_acc_at_p05)},
          {"acc_at_gmean", collect(&NetworkEvalReport::acc_at_gmean)},
          {"bal_acc_at_gmean", collect(&NetworkEvalReport::bal_acc_at_gmean)}};
}

namespace {

struct SetSlot {
  std::optional<Simulation> sim;
  std::optional<EdgeScores> scores;
  std::string error;
};

void run_combination(const ExperimentPlan& plan, NetworkKind network, std::size_t length,
                     const ExperimentLog& log, ExperimentResult& out) {
  const auto n_sets = static_cast<std::ptrdiff_t>(plan.n_sets);
  std::vector<SetSlot> slots(plan.n_sets);

#pragma omp parallel for schedule(dynamic, 1) num_threads(plan.workers)
  for (std::ptrdiff_t s = 0; s < n_sets; ++s) {
    NetworkSpec spec{network, length, plan.burn_in, set_seed(plan.base_seed, static_cast<std::size_t>(s))};
    try {
      slots[s].sim.emplace(generate(spec));
    } catch (const std::exception& e) {
      slots[s].error = std::string("generation: ") + e.what();
    }
  }

  const std::string tag = std::string(to_string(network)) + " @ " + std::to_string(length);
  GcConfig cfg = plan.config;
  int lags = 0;
  if (cfg.lags) {
    lags = *cfg.lags;
  } else {
    for (const auto& slot : slots) {
      if (!slot.sim) continue;
      lags = select_lag_cao(slot.sim->panel, cfg.cao);
      break;
    }
    if (lags > 0) {
      cfg.lags = lags;
      if (log) log(tag + ": Cao lag " + std::to_string(lags));
    }
  }

  // Small batches get the worker budget inside each network instead.
  const int outer = static_cast<std::size_t>(plan.workers) <= plan.n_sets ? plan.workers : 1;
  const int inner = outer == 1 ? plan.workers : 1;

  const auto start = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(dynamic, 1) num_threads(outer)
  for (std::ptrdiff_t s = 0; s < n_sets; ++s) {
    auto& slot = slots[s];
    if (!slot.sim) continue;
    try {
      auto net = gc_network(slot.sim->panel, cfg, inner);
      if (!net.failures.empty()) {
        const auto& f = net.failures.front();
        slot.error = std::to_string(net.failures.size()) + " pair failure(s), first " + net.series[f.source] +
                     " -> " + net.series[f.target] + ": " + f.message;
      } else {
        slot.scores.emplace(edge_scores(net.pvalues, slot.sim->truth));
      }
    } catch (const std::exception& e) {
      slot.error = std::string("recovery: ") + e.what();
    }
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.runtimes.push_back({network, length, wall, plan.workers, plan.n_sets});

  std::vector<EdgeScores> ok_scores;
  for (const auto& slot : slots)
    if (slot.scores) ok_scores.push_back(*slot.scores);

  CombinationSummary combo;
  combo.network = network;
  combo.length = length;
  combo.lags = lags;
  combo.n_ok = ok_scores.size();
  combo.n_failed = plan.n_sets - ok_scores.size();
  combo.valid = static_cast<double>(combo.n_failed) <= plan.max_failed_fraction * static_cast<double>(plan.n_sets);

  std::vector<NetworkEvalReport> reports;
  if (!ok_scores.empty()) {
    combo.gmean_threshold = gmean_optimal_threshold(ok_scores);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (!slots[s].scores) continue;
      auto rep = evaluate(*slots[s].scores, plan.p_threshold, combo.gmean_threshold);
      reports.push_back(rep);
      out.reports.push_back({network, length, s, set_seed(plan.base_seed, s), lags, rep});
    }
    combo.metrics = summarize(reports);
  }
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (!slots[s].scores) out.failures.push_back({network, length, s, slots[s].error});
  }
  if (log) {
    log(tag + ": " + std::to_string(combo.n_ok) + "/" + std::to_string(plan.n_sets) + " sets ok, recovery " +
        format_double(wall) + " s" + (combo.valid ? "" : " (invalid)"));
  }
  out.combinations.push_back(std::move(combo));
}

}  // namespace

ExperimentResult run_experiment(const ExperimentPlan& plan, const ExperimentLog& log) {
  plan.validate();
  ExperimentResult out;
  for (auto network : plan.networks)
    for (auto length : plan.lengths) run_combination(plan, network, length, log, out);
  return out;
}

void write_metrics_csv(std::ostream& out, const ExperimentResult& result) {
  out << "network,length,set,seed,lags,auc,brier,threshold,acc_at_p05,bal_acc_at_p05,gmean_threshold,"
         "acc_at_gmean,bal_acc_at_gmean\n";
  for (const auto& r : result.reports) {
    const auto& m = r.report;
    out << to_string(r.network) << ',' << r.length << ',' << r.set_index << ',' << r.seed << ',' << r.lags << ','
        << format_double(m.auc) << ',' << format_double(m.brier) << ',' << format_double(m.threshold) << ','
        << format_double(m.acc_at_p05) << ',' << format_double(m.bal_acc_at_p05) << ','
        << format_double(m.gmean_threshold) << ',' << format_double(m.acc_at_gmean) << ','
        << format_double(m.bal_acc_at_gmean) << '\n';
  }
}

void write_summary_json(std::ostream& out, const ExperimentResult& result) {
  json combos = json::array();
  for (const auto& c : result.combinations) {
    json metrics = json::object();
    for (const auto& m : c.metrics) {
      metrics[m.metric] = {{"median", m.summary.median}, {"p25", m.summary.p25}, {"p75", m.summary.p75},
                           {"min", m.summary.min},       {"max", m.summary.max}};
    }
    combos.push_back({{"network", std::string(to_string(c.network))},
                      {"length", c.length},
                      {"lags", c.lags},
                      {"n_ok", c.n_ok},
                      {"n_failed", c.n_failed},
                      {"valid", c.valid},
                      {"gmean_threshold", c.gmean_threshold},
                      {"metrics", metrics}});
  }
  json failures = json::array();
  for (const auto& f : result.failures) {
    failures.push_back({{"network", std::string(to_string(f.network))},
                        {"length", f.length},
                        {"set", f.set_index},
                        {"message", f.message}});
  }
  out << json{{"combinations", combos}, {"failures", failures}}.dump(2) << '\n';
}

void write_runtime_csv(std::ostream& out, const ExperimentResult& result) {
  out << "network,length,n_sets,workers,wall_seconds\n";
  for (const auto& r : result.runtimes) {
    out << to_string(r.network) << ',' << r.length << ',' << r.n_sets << ',' << r.workers << ','
        << format_double(r.wall_seconds) << '\n';
  }
}

}  // namespace krrgc
