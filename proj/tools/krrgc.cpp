// krrgc command-line front end. Machine-readable output goes to files or
// stdout; progress and diagnostics go to stderr.
#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "krrgc/cao.hpp"
#include "krrgc/eval.hpp"
#include "krrgc/experiment.hpp"
#include "krrgc/gc.hpp"
#include "krrgc/json_io.hpp"
#include "krrgc/panel.hpp"
#include "krrgc/simnet.hpp"

namespace fs = std::filesystem;
using namespace krrgc;

namespace {

// Bad flags or input that fails validation: exit 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int default_workers() {
  if (const char* env = std::getenv("KRRGC_WORKERS")) {
    int v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec == std::errc{} && ptr == end && v >= 1) return v;
    std::cerr << "warning: ignoring KRRGC_WORKERS='" << env << "'\n";
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct ConfigFlags {
  std::string lags = "cao";
  std::string test = "sign";
  double lambda = 1.0;
  std::string gamma = "auto";
  double split = 0.7;
  int gap = -1;
  int quantiles = 1000;
  std::string method = "krr";
  int cao_max_dim = 10;

  void add(CLI::App* app) {
    app->add_option("--lags", lags, "Lag order, or 'cao' to select it")->capture_default_str();
    app->add_option("--test", test, "sign | wilcoxon")->capture_default_str();
    app->add_option("--lambda", lambda, "Ridge penalty")->capture_default_str();
    app->add_option("--gamma", gamma, "RBF width, or 'auto' for 1/D")->capture_default_str();
    app->add_option("--split", split, "Training fraction")->capture_default_str();
    app->add_option("--gap", gap, "Rows dropped between train and test (default: lag order)");
    app->add_option("--quantiles", quantiles, "Quantile-transform resolution, 0 disables")->capture_default_str();
    app->add_option("--method", method, "krr | linear")->capture_default_str();
    app->add_option("--cao-max-dim", cao_max_dim, "Largest dimension Cao's method considers")->capture_default_str();
  }

  GcConfig build() const {
    GcConfig c;
    if (lags != "cao") {
      int v = 0;
      auto [ptr, ec] = std::from_chars(lags.data(), lags.data() + lags.size(), v);
      if (ec != std::errc{} || ptr != lags.data() + lags.size()) {
        throw UsageError("--lags expects an integer or 'cao', got '" + lags + "'");
      }
      c.lags = v;
    }
    if (test == "sign") c.test = TestKind::kSign;
    else if (test == "wilcoxon") c.test = TestKind::kWilcoxon;
    else throw UsageError("--test expects sign or wilcoxon, got '" + test + "'");
    c.kernel.lambda = lambda;
    if (gamma != "auto") {
      double v = 0;
      auto [ptr, ec] = std::from_chars(gamma.data(), gamma.data() + gamma.size(), v);
      if (ec != std::errc{} || ptr != gamma.data() + gamma.size()) {
        throw UsageError("--gamma expects a number or 'auto', got '" + gamma + "'");
      }
      c.kernel.gamma = v;
    }
    c.split.train_fraction = split;
    if (gap >= 0) c.split.gap = gap;
    if (quantiles < 0) throw UsageError("--quantiles must be >= 0");
    if (quantiles == 0) c.quantiles.reset();
    else c.quantiles = quantiles;
    if (method == "krr") c.method = Method::kKrr;
    else if (method == "linear") c.method = Method::kLinearF;
    else throw UsageError("--method expects krr or linear, got '" + method + "'");
    c.cao.max_dim = cao_max_dim;
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return c;
  }
};

Panel load_panel(const std::string& path) {
  try {
    return read_panel_csv_file(path);
  } catch (const CsvError& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

json load_json(const std::string& path) {
  try {
    return read_json_file(path);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
  return out;
}

NetworkKind network_flag(const std::string& name) {
  try {
    return parse_network(name);
  } catch (const std::invalid_argument&) {
    std::string known;
    for (auto n : all_networks()) known += (known.empty() ? "" : ", ") + std::string(to_string(n));
    throw UsageError("unknown network '" + name + "' (known: " + known + ")");
  }
}

template <class T>
std::vector<T> split_list(const std::vector<std::string>& raw, T (*parse)(const std::string&)) {
  std::vector<T> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) out.push_back(parse(tok));
  }
  return out;
}

NetworkKind parse_network_item(const std::string& s) { return network_flag(s); }
std::size_t parse_length_item(const std::string& s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v == 0) throw UsageError("bad length '" + s + "'");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear Granger causality with kernel ridge regression"};
  app.require_subcommand(1);
  const int workers_default = default_workers();

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate benchmark panels and their ground truth");
  std::string sim_network;
  std::size_t sim_length = 1000, sim_burn = 500, sim_sets = 1;
  std::uint64_t sim_seed = 0;
  std::string sim_dir = ".";
  sim->add_option("--network", sim_network, "linear5, nonlinear5, ..., zachary2")->required();
  sim->add_option("--length", sim_length, "Points per series")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_seed, "Base seed")->capture_default_str();
  sim->add_option("--sets", sim_sets, "Independent sets")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--burn-in", sim_burn, "Discarded warm-up steps")->capture_default_str();
  sim->add_option("--out-dir", sim_dir, "Output directory")->capture_default_str();

  // test
  auto* tst = app.add_subcommand("test", "Test one source -> target pair");
  std::string tst_input, tst_source, tst_target, tst_out;
  ConfigFlags tst_cfg;
  tst->add_option("--input", tst_input, "Panel CSV")->required();
  tst->add_option("--source", tst_source, "Candidate cause")->required();
  tst->add_option("--target", tst_target, "Effect series")->required();
  tst->add_option("--out", tst_out, "Result JSON (default stdout)");
  tst_cfg.add(tst);

  // network
  auto* net = app.add_subcommand("network", "Test every ordered pair of a panel");
  std::string net_input, net_out;
  int net_workers = workers_default;
  std::size_t net_max_failed = 0;
  ConfigFlags net_cfg;
  net->add_option("--input", net_input, "Panel CSV")->required();
  net->add_option("--out", net_out, "P-value matrix JSON (default stdout)");
  net->add_option("--workers", net_workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  net->add_option("--max-failed-pairs", net_max_failed, "Tolerated pair failures before exiting 2")
      ->capture_default_str();
  net_cfg.add(net);

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Score a p-value matrix against ground truth");
  std::string ev_pvalues, ev_truth, ev_out;
  double ev_threshold = 0.05;
  double ev_gmean = -1.0;
  ev->add_option("--pvalues", ev_pvalues, "Output of 'network'")->required();
  ev->add_option("--truth", ev_truth, "Truth JSON")->required();
  ev->add_option("--threshold", ev_threshold, "Significance level")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  ev->add_option("--gmean-threshold", ev_gmean, "Fixed G-mean threshold (default: optimise on this matrix)")
      ->check(CLI::Range(0.0, 1.0));
  ev->add_option("--out", ev_out, "Report JSON (default stdout)");

  // bench
  auto* bn = app.add_subcommand("bench", "Run the simulation benchmark");
  std::vector<std::string> bn_networks{"linear5"}, bn_lengths{"500"};
  std::size_t bn_sets = 50, bn_burn = 500;
  std::uint64_t bn_seed = 0;
  int bn_workers = workers_default;
  std::string bn_dir = ".";
  double bn_threshold = 0.05;
  ConfigFlags bn_cfg;
  bn->add_option("--networks", bn_networks, "Comma-separated network names")->capture_default_str();
  bn->add_option("--lengths", bn_lengths, "Comma-separated lengths")->capture_default_str();
  bn->add_option("--sets", bn_sets, "Independent sets per combination")->capture_default_str()->check(CLI::PositiveNumber);
  bn->add_option("--seed", bn_seed, "Base seed")->capture_default_str();
  bn->add_option("--burn-in", bn_burn, "Discarded warm-up steps")->capture_default_str();
  bn->add_option("--workers", bn_workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  bn->add_option("--threshold", bn_threshold, "Significance level")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  bn->add_option("--out-dir", bn_dir, "Directory for metrics.csv, summary.json, runtime.csv")->capture_default_str();
  bn_cfg.add(bn);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == sim) {
      const auto kind = network_flag(sim_network);
      fs::create_directories(sim_dir);
      for (std::size_t k = 0; k < sim_sets; ++k) {
        const auto seed = set_seed(sim_seed, k);
        const auto s = generate({kind, sim_length, sim_burn, seed});
        const std::string stem = std::string(to_string(kind)) + "_n" + std::to_string(sim_length) + "_seed" +
                                 std::to_string(sim_seed) + "_set" + std::to_string(k);
        const fs::path csv = fs::path(sim_dir) / (stem + ".csv");
        const fs::path truth = fs::path(sim_dir) / (stem + ".truth.json");
        {
          auto out = open_out(csv);
          write_panel_csv(out, s.panel);
        }
        {
          auto out = open_out(truth);
          out << truth_to_json(s.truth).dump(2) << '\n';
        }
        std::cout << csv.string() << '\n' << truth.string() << '\n';
      }
    } else if (active == tst) {
      const auto cfg = tst_cfg.build();
      const auto panel = load_panel(tst_input);
      for (const auto* id : {&tst_source, &tst_target}) {
        try {
          (void)panel.index_of(*id);
        } catch (const std::invalid_argument&) {
          throw UsageError("unknown series id '" + *id + "'");
        }
      }
      if (tst_source == tst_target) throw UsageError("source and target must differ");
      const auto result = gc_test(panel, tst_source, tst_target, cfg);
      if (!cfg.lags) std::cerr << "lag selected by Cao: " << result.lags_used << '\n';
      emit(tst_out, test_result_to_json(result).dump(2) + "\n");
    } else if (active == net) {
      const auto cfg = net_cfg.build();
      const auto panel = load_panel(net_input);
      if (panel.num_series() < 2) throw UsageError(net_input + ": need at least two series");
      const auto result = gc_network(panel, cfg, net_workers);
      if (!cfg.lags) std::cerr << "lag selected by Cao: " << result.lags_used << '\n';
      emit(net_out, network_to_json(result, cfg).dump(2) + "\n");
      for (const auto& f : result.failures) {
        std::cerr << "pair " << result.series[f.source] << " -> " << result.series[f.target]
                  << " failed: " << f.message << '\n';
      }
      if (result.failures.size() > net_max_failed) {
        std::cerr << "error: " << result.failures.size() << " failed pair(s), limit " << net_max_failed << '\n';
        return 2;
      }
    } else if (active == ev) {
      NamedPValues pv;
      GroundTruth truth;
      try {
        pv = pvalues_from_json(load_json(ev_pvalues));
        truth = align_truth(truth_from_json(load_json(ev_truth)), pv.series);
      } catch (const json::exception& e) {
        throw UsageError(e.what());
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const auto scores = edge_scores(pv.pvalues, truth);
      std::optional<double> g;
      if (ev_gmean >= 0.0) g = ev_gmean;
      NetworkEvalReport report;
      try {
        report = evaluate(scores, ev_threshold, g);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      emit(ev_out, report_to_json(report).dump(2) + "\n");
    } else if (active == bn) {
      ExperimentPlan plan;
      plan.networks = split_list<NetworkKind>(bn_networks, parse_network_item);
      plan.lengths = split_list<std::size_t>(bn_lengths, parse_length_item);
      plan.n_sets = bn_sets;
      plan.base_seed = bn_seed;
      plan.workers = bn_workers;
      plan.burn_in = bn_burn;
      plan.p_threshold = bn_threshold;
      plan.config = bn_cfg.build();
      try {
        plan.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      fs::create_directories(bn_dir);
      const auto result = run_experiment(plan, [](std::string_view msg) { std::cerr << msg << '\n'; });
      const fs::path dir(bn_dir);
      {
        auto out = open_out(dir / "metrics.csv");
        write_metrics_csv(out, result);
      }
      {
        auto out = open_out(dir / "summary.json");
        write_summary_json(out, result);
      }
      {
        auto out = open_out(dir / "runtime.csv");
        write_runtime_csv(out, result);
      }
      for (const auto& f : result.failures) {
        std::cerr << to_string(f.network) << " @ " << f.length << " set " << f.set_index << ": " << f.message << '\n';
      }
      for (const auto* name : {"metrics.csv", "summary.json", "runtime.csv"}) std::cout << (dir / name).string() << '\n';
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << active->help();
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
