#include <doctest.h>

#include <string>
#include <vector>

#include "dps/config_file.hpp"

using namespace dps;

namespace {

const char* kSampleConfig = R"(# two-level species model with Bernoulli reinforcement
[model]
kind = step_species
w1 = 1
w2 = 2.5
p = 0.5
noise = bernoulli
beta = 3

[base]
kind = uniform

[run]
theta = 1
n = 5000
replicates = 40
oracle_factor = 10
seed = 123
alpha = 0.05
probes = int:0.5:0.75 cdf:0.6 dcomp
checkpoints = 1000,2000,5000
x_grid = 0.55,0.7

[thresholds]
ks_d_max = 0.07
)";

}  // namespace

TEST_CASE("parses a full config") {
  std::vector<std::string> errors;
  ExperimentConfig cfg = parse_config_text(kSampleConfig, errors);
  REQUIRE(errors.empty());
  CHECK(cfg.model.kind == ModelKind::StepSpecies);
  CHECK(cfg.model.w2 == 2.5);
  CHECK(cfg.model.noise.kind == NoiseKind::BernoulliScaled);
  CHECK(cfg.model.beta == 3.0);
  CHECK(cfg.n == 5000);
  CHECK(cfg.replicates == 40);
  CHECK(cfg.oracle_factor == 10);
  CHECK(cfg.seed == 123);
  REQUIRE(cfg.probes.size() == 3);
  CHECK(cfg.probes[0].first == "int:0.5:0.75");
  CHECK(cfg.probes[0].second.contains_point(0.75));
  CHECK_FALSE(cfg.probes[0].second.contains_point(0.5));
  CHECK(cfg.probes[1].second.contains_point(0.0));
  CHECK(cfg.probes[1].second.contains_point(0.6));
  // dcomp resolves against the model: [0, 0.5) for the step at 0.5.
  CHECK(cfg.probes[2].second.contains_point(0.2));
  CHECK_FALSE(cfg.probes[2].second.contains_point(0.5));
  CHECK(cfg.checkpoints == std::vector<long>{1000, 2000, 5000});
  CHECK(cfg.x_grid == std::vector<double>{0.55, 0.7});
  CHECK(cfg.thresholds.ks_d_max == 0.07);
  CHECK(cfg.thresholds.ks_c_max == 0.08);  // untouched default
}

TEST_CASE("geometric checkpoint shorthand") {
  std::vector<std::string> errors;
  ExperimentConfig cfg = parse_config_text(
      "[model]\nkind = step_species\nw1 = 1\nw2 = 2\np = 0.5\n"
      "[run]\nn = 16000\ncheckpoints = geometric:1000:2\n",
      errors);
  REQUIRE(errors.empty());
  CHECK(cfg.checkpoints == std::vector<long>{1000, 2000, 4000, 8000, 16000});
}

TEST_CASE("errors carry line numbers") {
  std::vector<std::string> errors;
  parse_config_text("[model]\nkind = step_species\nbogus_line_without_equals\n", errors);
  REQUIRE_FALSE(errors.empty());
  CHECK(errors[0].find("line 3") != std::string::npos);

  errors.clear();
  parse_config_text("[model]\nkind = nosuchmodel\n", errors);
  REQUIRE_FALSE(errors.empty());
  CHECK(errors[0].find("line 2") != std::string::npos);

  errors.clear();
  parse_config_text("[model]\nwibble = 3\n", errors);
  REQUIRE_FALSE(errors.empty());
  CHECK(errors[0].find("unknown [model] key") != std::string::npos);

  errors.clear();
  parse_config_text("[run]\nn = abc\n", errors);
  REQUIRE_FALSE(errors.empty());

  errors.clear();
  parse_config_text("orphan = 1\n", errors);
  REQUIRE_FALSE(errors.empty());
  CHECK(errors[0].find("outside a known section") != std::string::npos);
}

TEST_CASE("bad probes and semantic problems are reported") {
  std::vector<std::string> errors;
  parse_config_text(
      "[model]\nkind = step_species\nw1 = 1\nw2 = 2\np = 0.5\n[run]\nprobes = nope:1:2\n",
      errors);
  REQUIRE_FALSE(errors.empty());
  CHECK(errors[0].find("unknown probe syntax") != std::string::npos);

  // A bound below the weight range fails model construction.
  errors.clear();
  parse_config_text("[model]\nkind = step_species\nw1 = 1\nw2 = 2\np = 0.5\nbeta = 1.5\n",
                    errors);
  REQUIRE_FALSE(errors.empty());

  // Structurally fine but semantically invalid run parameters.
  errors.clear();
  parse_config_text("[model]\nkind = constant\nw_bar = 1\n[run]\nn = 5\n", errors);
  REQUIRE_FALSE(errors.empty());
}

TEST_CASE("render/parse round trip") {
  std::vector<std::string> errors;
  ExperimentConfig cfg = parse_config_text(kSampleConfig, errors);
  REQUIRE(errors.empty());
  std::string text = render_config(cfg);
  ExperimentConfig back = parse_config_text(text, errors);
  REQUIRE(errors.empty());
  CHECK(render_config(back) == text);
  CHECK(back.model.w2 == cfg.model.w2);
  CHECK(back.seed == cfg.seed);
  CHECK(back.checkpoints == cfg.checkpoints);
  CHECK(back.probes.size() == cfg.probes.size());
  CHECK(back.thresholds.ks_d_max == cfg.thresholds.ks_d_max);
}

TEST_CASE("preset catalog entries are valid and deterministic") {
  const auto& presets = preset_catalog();
  REQUIRE(presets.size() == 7);
  for (const auto& p : presets) {
    INFO(p.name);
    CHECK_FALSE(p.description.empty());
    CHECK(p.config.validate().empty());
    CHECK(p.config.seed == 20260823);
    CHECK_NOTHROW(p.config.model.build());
  }
  bool saw_clt = false;
  for (const auto& p : presets)
    if (p.name == "species-clt") {
      saw_clt = true;
      WeightModel m = p.config.model.build();
      CHECK(m.w_bar() > 2.0 * m.w_bar_c());
    }
  CHECK(saw_clt);
}

TEST_CASE("default suite configs are valid") {
  for (const char* suite : {"convergence", "rates", "clt", "coverage"}) {
    INFO(suite);
    ExperimentConfig cfg = default_suite_config(suite);
    CHECK(cfg.validate().empty());
  }
  CHECK(default_suite_config("convergence").n == 100000);
  CHECK(default_suite_config("rates").checkpoints.size() >= 3);
  CHECK(default_suite_config("clt").replicates == 2000);
  CHECK(default_suite_config("coverage").x_grid.size() == 3);
  CHECK_THROWS(default_suite_config("nope"));
}

TEST_CASE("missing config file reports an error") {
  std::vector<std::string> errors;
  load_config_file("/nonexistent/path/config.ini", errors);
  REQUIRE_FALSE(errors.empty());
  CHECK(errors[0].find("cannot read") != std::string::npos);
}
