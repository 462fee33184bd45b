#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dps/config_file.hpp"
#include "dps/experiment.hpp"
#include "dps/measure.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr const char* kToolVersion = "1.0.0";

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int replicates = 0;
  int threads = -1;
};

int resolve_threads(int cli_threads) {
  if (cli_threads >= 0) return cli_threads;
  if (const char* env = std::getenv("DPS_THREADS")) return std::atoi(env);
  return 0;
}

void apply_overrides(dps::ExperimentConfig& cfg, const CommonOpts& opts) {
  if (opts.seed_set) cfg.seed = opts.seed;
  if (opts.replicates > 0) cfg.replicates = opts.replicates;
  cfg.threads = resolve_threads(opts.threads);
}

json verdicts_to_json(const std::vector<dps::Verdict>& verdicts) {
  json arr = json::array();
  for (const auto& v : verdicts) {
    arr.push_back({{"claim", v.claim},
                   {"statistic", v.statistic},
                   {"threshold", v.threshold},
                   {"pass", v.pass},
                   {"diagnostics", v.diagnostics}});
  }
  return arr;
}

void print_verdict_table(const std::vector<dps::Verdict>& verdicts) {
  for (const auto& v : verdicts) {
    std::printf("%-34s %-6s statistic=%-22s (%s)%s%s\n", v.claim.c_str(),
                v.pass ? "PASS" : "FAIL", fmt17(v.statistic).c_str(), v.threshold.c_str(),
                v.diagnostics.empty() ? "" : "  ", v.diagnostics.c_str());
  }
}

int cmd_simulate(const CommonOpts& opts) {
  std::vector<std::string> errors;
  dps::ExperimentConfig cfg = dps::load_config_file(opts.config_path, errors);
  if (!errors.empty()) {
    for (const auto& e : errors) std::cerr << "config error: " << e << "\n";
    return 2;
  }
  apply_overrides(cfg, opts);
  if (cfg.checkpoints.empty()) cfg.checkpoints = {cfg.n};
  cfg.oracle_factor = 0;  // simulate records trajectories only

  auto t0 = std::chrono::steady_clock::now();
  std::vector<dps::ReplicateSummary> summaries;
  try {
    summaries = dps::run_replicates(cfg);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::vector<std::string> probe_ids;
  for (const auto& [id, set] : cfg.probes) probe_ids.push_back(id);
  try {
    dps::WeightModel model = cfg.model.build();
    if (!model.dominant_complement().is_empty()) probe_ids.push_back("dcomp");
  } catch (...) {
  }

  std::error_code ec;
  fs::create_directories(opts.out_dir, ec);
  fs::path csv_path = fs::path(opts.out_dir) / "trajectory.csv";
  fs::path manifest_path = fs::path(opts.out_dir) / "manifest.json";
  std::ofstream csv(csv_path);
  if (!csv) {
    std::cerr << "cannot write " << csv_path << "\n";
    return 3;
  }
  csv << "replicate,n,probe_id,pred_prob,emp_prob,tv_pred_emp,sumw_over_n,L_n,dist_ratio\n";
  for (const auto& s : summaries) {
    for (const auto& pt : s.trajectory) {
      double dist_ratio = pt.n >= 2 && !cfg.base.discrete
                              ? static_cast<double>(pt.distinct) / std::log(double(pt.n))
                              : 0.0;
      for (std::size_t p = 0; p < probe_ids.size(); ++p) {
        csv << s.replicate << ',' << pt.n << ',' << probe_ids[p] << ','
            << fmt17(pt.predictive[p]) << ',' << fmt17(pt.empirical[p]) << ','
            << fmt17(pt.tv_pred_emp) << ',' << fmt17(pt.sum_w_per_step) << ',' << pt.distinct
            << ',' << fmt17(dist_ratio) << '\n';
      }
    }
  }
  csv.close();
  if (!csv) {
    std::cerr << "write failure on " << csv_path << "\n";
    return 3;
  }

  json manifest = {{"tool_version", kToolVersion},
                   {"command", "simulate"},
                   {"config", dps::render_config(cfg)},
                   {"outputs", {csv_path.string()}},
                   {"wall_seconds", seconds}};
  std::ofstream mf(manifest_path);
  if (!mf) {
    std::cerr << "cannot write " << manifest_path << "\n";
    return 3;
  }
  mf << manifest.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, const CommonOpts& opts) {
  std::vector<std::string> suites;
  if (suite == "all")
    suites = {"convergence", "rates", "clt", "coverage"};
  else
    suites = {suite};

  json summary;
  summary["tool_version"] = kToolVersion;
  summary["suites"] = json::object();
  bool all_pass = true;

  for (const std::string& name : suites) {
    dps::ExperimentConfig cfg;
    if (!opts.config_path.empty()) {
      std::vector<std::string> errors;
      cfg = dps::load_config_file(opts.config_path, errors);
      if (!errors.empty()) {
        for (const auto& e : errors) std::cerr << "config error: " << e << "\n";
        return 2;
      }
    } else {
      cfg = dps::default_suite_config(name);
    }
    apply_overrides(cfg, opts);

    std::vector<dps::Verdict> verdicts;
    auto t0 = std::chrono::steady_clock::now();
    try {
      if (name == "convergence")
        verdicts = dps::convergence_experiment(cfg);
      else if (name == "rates")
        verdicts = dps::rate_experiment(cfg);
      else if (name == "clt")
        verdicts = dps::clt_experiment(cfg);
      else if (name == "coverage")
        verdicts = dps::coverage_experiment(cfg);
      else {
        std::cerr << "unknown suite '" << name << "'\n";
        return 2;
      }
    } catch (const std::domain_error& e) {
      std::cerr << "suite '" << name << "' incompatible with this model: " << e.what() << "\n";
      return 2;
    } catch (const std::invalid_argument& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto& v : verdicts) {
      v.seconds = seconds;
      all_pass = all_pass && v.pass;
    }
    std::printf("== suite %s ==\n", name.c_str());
    print_verdict_table(verdicts);
    std::fprintf(stderr, "suite %s finished in %.1f s\n", name.c_str(), seconds);
    summary["suites"][name] = {{"verdicts", verdicts_to_json(verdicts)},
                               {"config", dps::render_config(cfg)}};
  }
  summary["all_pass"] = all_pass;

  std::error_code ec;
  fs::create_directories(opts.out_dir, ec);
  fs::path summary_path = fs::path(opts.out_dir) / "summary.json";
  std::ofstream sf(summary_path);
  if (!sf) {
    std::cerr << "cannot write " << summary_path << "\n";
    return 3;
  }
  sf << summary.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

int cmd_presets() {
  for (const auto& preset : dps::preset_catalog()) {
    dps::WeightModel model = preset.config.model.build();
    std::printf("%-18s %s\n", preset.name.c_str(), preset.description.c_str());
    std::printf("    model=%s w_bar=%s w_bar_c=%s gamma=%s\n", model.name().c_str(),
                fmt17(model.w_bar()).c_str(), fmt17(model.w_bar_c()).c_str(),
                fmt17(model.gamma()).c_str());
    std::string dom;
    for (const auto& iv : model.dominant().intervals()) {
      dom += (iv.lo_closed ? "[" : "(") + fmt17(iv.lo) + "," + fmt17(iv.hi) +
             (iv.hi_closed ? "]" : ")") + " ";
    }
    for (const auto& c : model.dominant().points())
      dom += c.is_label() ? "{label " + std::to_string(c.label()) + "} "
                          : "{" + fmt17(c.point()) + "} ";
    std::printf("    dominant=%s\n", dom.c_str());
    std::string claims = "convergence(sumw,tv)";
    if (!model.dominant_complement().is_empty() && model.w_bar() > model.w_bar_c())
      claims += " dominated-mass";
    if (model.gamma() > 0.0 && !model.dominant_complement().is_empty()) claims += " rates";
    if (model.w_bar() > 2.0 * model.w_bar_c()) claims += " clt coverage";
    std::printf("    applicable: %s\n", claims.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dominant Polya sequence simulator and verification harness"};
  app.require_subcommand(1);
  CommonOpts opts;

  auto* sim = app.add_subcommand("simulate", "run replicates and write trajectory CSV");
  sim->add_option("--config", opts.config_path, "experiment config file")->required();
  sim->add_option("--out", opts.out_dir, "output directory");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "convergence|rates|clt|coverage|all");
  verify->add_option("--config", opts.config_path, "experiment config file (default: frozen suite config)");
  verify->add_option("--out", opts.out_dir, "output directory");

  auto* presets = app.add_subcommand("presets", "list the named model presets");

  for (auto* sub : {sim, verify}) {
    sub->add_option("--seed", opts.seed, "override the config seed")
        ->each([&](const std::string&) { opts.seed_set = true; });
    sub->add_option("--replicates", opts.replicates, "override replicate count");
    sub->add_option("--threads", opts.threads, "worker threads (0 = auto)");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(opts);
    if (verify->parsed()) return cmd_verify(suite, opts);
    if (presets->parsed()) return cmd_presets();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
