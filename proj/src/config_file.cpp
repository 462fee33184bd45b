#include "dps/config_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dps {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Probe grammar, whitespace separated entries:
//   int:a:b   half-open interval (a,b]
//   cint:a:b  closed interval [a,b]
//   cdf:x     the CDF set [0,x]
//   label:i   single discrete label
//   full      the whole color space
//   dcomp     complement of the dominant set (resolved against the model)
bool parse_probe(const std::string& token, const WeightModel& model,
                 std::pair<std::string, SetExpr>& out, std::string& err) {
  auto parts = split(token, ':');
  try {
    if (parts.empty()) {
      err = "empty probe";
      return false;
    }
    if (parts[0] == "int" && parts.size() == 3) {
      out = {token, SetExpr::interval(std::stod(parts[1]), std::stod(parts[2]))};
    } else if (parts[0] == "cint" && parts.size() == 3) {
      out = {token, SetExpr::interval(std::stod(parts[1]), std::stod(parts[2]), true, true)};
    } else if (parts[0] == "cdf" && parts.size() == 2) {
      out = {token, SetExpr::cdf_set(std::stod(parts[1]))};
    } else if (parts[0] == "label" && parts.size() == 2) {
      out = {token, SetExpr::labels({std::stoi(parts[1])})};
    } else if (parts[0] == "full" && parts.size() == 1) {
      out = {token, model.discrete_space() ? SetExpr::full_discrete(model.label_count())
                                           : SetExpr::full_continuous()};
    } else if (parts[0] == "dcomp" && parts.size() == 1) {
      out = {token, model.dominant_complement()};
    } else {
      err = "unknown probe syntax '" + token + "'";
      return false;
    }
  } catch (const std::exception& e) {
    err = "bad probe '" + token + "': " + e.what();
    return false;
  }
  return true;
}

struct RawEntry {
  std::string section, key, value;
  int line;
};

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, std::vector<std::string>& errors) {
  std::vector<RawEntry> entries;
  {
    std::stringstream ss(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(ss, line)) {
      ++lineno;
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[' && line.back() == ']') {
        section = trim(line.substr(1, line.size() - 2));
        continue;
      }
      std::size_t eq = line.find('=');
      if (eq == std::string::npos) {
        errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
        continue;
      }
      entries.push_back({section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno});
    }
  }

  ExperimentConfig cfg;
  std::string probes_raw, checkpoints_raw;
  auto bad = [&](const RawEntry& e, const std::string& why) {
    errors.push_back("line " + std::to_string(e.line) + ": " + why);
  };

  for (const RawEntry& e : entries) {
    try {
      if (e.section == "model") {
        if (e.key == "kind") {
          if (e.value == "constant")
            cfg.model.kind = ModelKind::Constant;
          else if (e.value == "k_color_rru")
            cfg.model.kind = ModelKind::KColorRru;
          else if (e.value == "monotone")
            cfg.model.kind = ModelKind::Monotone;
          else if (e.value == "step_species")
            cfg.model.kind = ModelKind::StepSpecies;
          else if (e.value == "unimodal")
            cfg.model.kind = ModelKind::Unimodal;
          else
            bad(e, "unknown model kind '" + e.value + "'");
        } else if (e.key == "means") {
          cfg.model.means.clear();
          for (const auto& tok : split(e.value, ',')) cfg.model.means.push_back(std::stod(tok));
        } else if (e.key == "w1")
          cfg.model.w1 = std::stod(e.value);
        else if (e.key == "w2")
          cfg.model.w2 = std::stod(e.value);
        else if (e.key == "p")
          cfg.model.p = std::stod(e.value);
        else if (e.key == "x0")
          cfg.model.x0 = std::stod(e.value);
        else if (e.key == "peak")
          cfg.model.peak = std::stod(e.value);
        else if (e.key == "floor")
          cfg.model.floor_value = std::stod(e.value);
        else if (e.key == "w_bar")
          cfg.model.w_bar = std::stod(e.value);
        else if (e.key == "beta")
          cfg.model.beta = std::stod(e.value);
        else if (e.key == "rho")
          cfg.model.noise.rho = std::stod(e.value);
        else if (e.key == "noise") {
          if (e.value == "deterministic")
            cfg.model.noise.kind = NoiseKind::Deterministic;
          else if (e.value == "multiplicative")
            cfg.model.noise.kind = NoiseKind::BoundedMultiplicative;
          else if (e.value == "bernoulli")
            cfg.model.noise.kind = NoiseKind::BernoulliScaled;
          else
            bad(e, "unknown noise kind '" + e.value + "'");
        } else
          bad(e, "unknown [model] key '" + e.key + "'");
      } else if (e.section == "base") {
        if (e.key == "kind") {
          if (e.value == "uniform")
            cfg.base.discrete = false;
          else if (e.value == "discrete")
            cfg.base.discrete = true;
          else
            bad(e, "unknown base kind '" + e.value + "'");
        } else if (e.key == "probs") {
          cfg.base.probs.clear();
          for (const auto& tok : split(e.value, ',')) cfg.base.probs.push_back(std::stod(tok));
        } else
          bad(e, "unknown [base] key '" + e.key + "'");
      } else if (e.section == "run") {
        if (e.key == "theta")
          cfg.theta = std::stod(e.value);
        else if (e.key == "n")
          cfg.n = std::stol(e.value);
        else if (e.key == "replicates")
          cfg.replicates = std::stoi(e.value);
        else if (e.key == "oracle_factor")
          cfg.oracle_factor = std::stoi(e.value);
        else if (e.key == "seed")
          cfg.seed = std::stoull(e.value);
        else if (e.key == "alpha")
          cfg.alpha = std::stod(e.value);
        else if (e.key == "threads")
          cfg.threads = std::stoi(e.value);
        else if (e.key == "checkpoints")
          checkpoints_raw = e.value;
        else if (e.key == "probes")
          probes_raw = e.value;
        else if (e.key == "x_grid") {
          cfg.x_grid.clear();
          for (const auto& tok : split(e.value, ',')) cfg.x_grid.push_back(std::stod(tok));
        } else
          bad(e, "unknown [run] key '" + e.key + "'");
      } else if (e.section == "thresholds") {
        Thresholds& t = cfg.thresholds;
        double v = std::stod(e.value);
        if (e.key == "sumw_tol")
          t.sumw_tol = v;
        else if (e.key == "dominated_mass_max")
          t.dominated_mass_max = v;
        else if (e.key == "tv_max")
          t.tv_max = v;
        else if (e.key == "tv_decrease_frac")
          t.tv_decrease_frac = v;
        else if (e.key == "distinct_ratio_rel_tol")
          t.distinct_ratio_rel_tol = v;
        else if (e.key == "slope_tol")
          t.slope_tol = v;
        else if (e.key == "ratio_tol")
          t.ratio_tol = v;
        else if (e.key == "ks_d_max")
          t.ks_d_max = v;
        else if (e.key == "ks_c_max")
          t.ks_c_max = v;
        else if (e.key == "ks_cd_max")
          t.ks_cd_max = v;
        else if (e.key == "u_hat_floor")
          t.u_hat_floor = v;
        else if (e.key == "u_hat_exclude")
          t.u_hat_exclude = v;
        else if (e.key == "coverage_min")
          t.coverage_min = v;
        else
          bad(e, "unknown [thresholds] key '" + e.key + "'");
      } else {
        bad(e, "key outside a known section");
      }
    } catch (const std::exception& ex) {
      bad(e, std::string("bad value '") + e.value + "': " + ex.what());
    }
  }

  if (!errors.empty()) return cfg;

  // Resolve checkpoints and probes against the built model.
  if (!checkpoints_raw.empty()) {
    try {
      auto parts = split(checkpoints_raw, ':');
      if (parts.size() == 3 && parts[0] == "geometric") {
        cfg.checkpoints = geometric_checkpoints(std::stol(parts[1]), std::stod(parts[2]), cfg.n);
      } else {
        cfg.checkpoints.clear();
        for (const auto& tok : split(checkpoints_raw, ','))
          cfg.checkpoints.push_back(std::stol(tok));
      }
    } catch (const std::exception& ex) {
      errors.push_back(std::string("bad checkpoints: ") + ex.what());
    }
  }
  if (!probes_raw.empty()) {
    try {
      WeightModel model = cfg.model.build();
      std::stringstream ss(probes_raw);
      std::string token;
      while (ss >> token) {
        std::pair<std::string, SetExpr> probe;
        std::string err;
        if (parse_probe(token, model, probe, err))
          cfg.probes.push_back(std::move(probe));
        else
          errors.push_back(err);
      }
    } catch (const std::exception& ex) {
      errors.push_back(std::string("cannot resolve probes: ") + ex.what());
    }
  }
  for (const std::string& err : cfg.validate()) errors.push_back(err);
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path, std::vector<std::string>& errors) {
  std::ifstream in(path);
  if (!in) {
    errors.push_back("cannot read config file '" + path + "'");
    return {};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), errors);
}

std::string render_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "[model]\n";
  switch (cfg.model.kind) {
    case ModelKind::Constant:
      os << "kind = constant\nw_bar = " << cfg.model.w_bar << "\n";
      break;
    case ModelKind::KColorRru: {
      os << "kind = k_color_rru\nmeans = ";
      for (std::size_t i = 0; i < cfg.model.means.size(); ++i)
        os << (i ? "," : "") << cfg.model.means[i];
      os << "\n";
      break;
    }
    case ModelKind::Monotone:
      os << "kind = monotone\nw1 = " << cfg.model.w1 << "\nw2 = " << cfg.model.w2 << "\n";
      break;
    case ModelKind::StepSpecies:
      os << "kind = step_species\nw1 = " << cfg.model.w1 << "\nw2 = " << cfg.model.w2
         << "\np = " << cfg.model.p << "\n";
      break;
    case ModelKind::Unimodal:
      os << "kind = unimodal\nx0 = " << cfg.model.x0 << "\npeak = " << cfg.model.peak
         << "\nfloor = " << cfg.model.floor_value << "\n";
      break;
  }
  switch (cfg.model.noise.kind) {
    case NoiseKind::Deterministic:
      os << "noise = deterministic\n";
      break;
    case NoiseKind::BoundedMultiplicative:
      os << "noise = multiplicative\nrho = " << cfg.model.noise.rho << "\n";
      break;
    case NoiseKind::BernoulliScaled:
      os << "noise = bernoulli\n";
      break;
  }
  if (cfg.model.beta > 0.0) os << "beta = " << cfg.model.beta << "\n";
  os << "\n[base]\nkind = " << (cfg.base.discrete ? "discrete" : "uniform") << "\n";
  if (cfg.base.discrete) {
    os << "probs = ";
    for (std::size_t i = 0; i < cfg.base.probs.size(); ++i)
      os << (i ? "," : "") << cfg.base.probs[i];
    os << "\n";
  }
  os << "\n[run]\ntheta = " << cfg.theta << "\nn = " << cfg.n
     << "\nreplicates = " << cfg.replicates << "\noracle_factor = " << cfg.oracle_factor
     << "\nseed = " << cfg.seed << "\nalpha = " << cfg.alpha << "\nthreads = " << cfg.threads
     << "\n";
  if (!cfg.checkpoints.empty()) {
    os << "checkpoints = ";
    for (std::size_t i = 0; i < cfg.checkpoints.size(); ++i)
      os << (i ? "," : "") << cfg.checkpoints[i];
    os << "\n";
  }
  if (!cfg.probes.empty()) {
    os << "probes = ";
    for (std::size_t i = 0; i < cfg.probes.size(); ++i)
      os << (i ? " " : "") << cfg.probes[i].first;
    os << "\n";
  }
  if (!cfg.x_grid.empty()) {
    os << "x_grid = ";
    for (std::size_t i = 0; i < cfg.x_grid.size(); ++i) os << (i ? "," : "") << cfg.x_grid[i];
    os << "\n";
  }
  const Thresholds d{};
  const Thresholds& t = cfg.thresholds;
  os << "\n[thresholds]\n";
  auto emit = [&](const char* key, double v, double dflt) {
    if (v != dflt) os << key << " = " << v << "\n";
  };
  emit("sumw_tol", t.sumw_tol, d.sumw_tol);
  emit("dominated_mass_max", t.dominated_mass_max, d.dominated_mass_max);
  emit("tv_max", t.tv_max, d.tv_max);
  emit("tv_decrease_frac", t.tv_decrease_frac, d.tv_decrease_frac);
  emit("distinct_ratio_rel_tol", t.distinct_ratio_rel_tol, d.distinct_ratio_rel_tol);
  emit("slope_tol", t.slope_tol, d.slope_tol);
  emit("ratio_tol", t.ratio_tol, d.ratio_tol);
  emit("ks_d_max", t.ks_d_max, d.ks_d_max);
  emit("ks_c_max", t.ks_c_max, d.ks_c_max);
  emit("ks_cd_max", t.ks_cd_max, d.ks_cd_max);
  emit("u_hat_floor", t.u_hat_floor, d.u_hat_floor);
  emit("u_hat_exclude", t.u_hat_exclude, d.u_hat_exclude);
  emit("coverage_min", t.coverage_min, d.coverage_min);
  return os.str();
}

namespace {

ExperimentConfig species_default_config() {
  ExperimentConfig cfg;
  cfg.model.kind = ModelKind::StepSpecies;
  cfg.model.w1 = 1.0;
  cfg.model.w2 = 2.0;
  cfg.model.p = 0.5;
  cfg.theta = 1.0;
  cfg.seed = 20260823;
  return cfg;
}

ExperimentConfig species_clt_config() {
  ExperimentConfig cfg;
  cfg.model.kind = ModelKind::StepSpecies;
  cfg.model.w1 = 1.0;
  cfg.model.w2 = 2.5;
  cfg.model.p = 0.5;
  cfg.model.noise = NoiseSpec::bernoulli_scaled();
  cfg.model.beta = 3.0;
  cfg.theta = 1.0;
  cfg.seed = 20260823;
  return cfg;
}

std::vector<Preset> build_presets() {
  std::vector<Preset> presets;
  {
    ExperimentConfig cfg;
    cfg.model.kind = ModelKind::Constant;
    cfg.model.w_bar = 1.0;
    cfg.seed = 20260823;
    presets.push_back({"constant-default",
                       "constant weight 1 (the classical Polya sequence)", cfg});
  }
  {
    ExperimentConfig cfg;
    cfg.model.kind = ModelKind::Constant;
    cfg.model.w_bar = 2.0;
    cfg.seed = 20260823;
    presets.push_back({"constant-w2", "constant weight 2", cfg});
  }
  {
    ExperimentConfig cfg;
    cfg.model.kind = ModelKind::KColorRru;
    cfg.model.means = {2.0, 2.0, 1.0};
    cfg.model.beta = 3.0;
    cfg.base.discrete = true;
    cfg.base.probs = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    cfg.seed = 20260823;
    presets.push_back({"kcolor-default", "3-color RRU with two dominant colors", cfg});
  }
  {
    ExperimentConfig cfg;
    cfg.model.kind = ModelKind::Monotone;
    cfg.model.w1 = 1.0;
    cfg.model.w2 = 2.0;
    cfg.seed = 20260823;
    presets.push_back({"monotone-default", "strictly increasing weight on [0,1]", cfg});
  }
  {
    ExperimentConfig cfg;
    cfg.model.kind = ModelKind::Unimodal;
    cfg.model.x0 = 0.6;
    cfg.model.peak = 2.0;
    cfg.model.floor_value = 1.0;
    cfg.seed = 20260823;
    presets.push_back({"unimodal-default", "tent weight peaking at 0.6", cfg});
  }
  presets.push_back({"species-default", "two-level species weights, gamma = 0.5",
                     species_default_config()});
  presets.push_back({"species-clt",
                     "two-level species weights with Bernoulli noise, w_bar > 2*w_bar_c",
                     species_clt_config()});
  return presets;
}

}  // namespace

const std::vector<Preset>& preset_catalog() {
  static const std::vector<Preset> presets = build_presets();
  return presets;
}

ExperimentConfig default_suite_config(const std::string& suite) {
  if (suite == "convergence") {
    ExperimentConfig cfg = species_default_config();
    cfg.n = 100000;
    cfg.replicates = 200;
    cfg.checkpoints = {10000, 100000};
    return cfg;
  }
  if (suite == "rates") {
    ExperimentConfig cfg = species_default_config();
    cfg.n = 1000000;
    cfg.replicates = 200;
    cfg.checkpoints = geometric_checkpoints(1000, 2.0, cfg.n);
    return cfg;
  }
  if (suite == "clt") {
    ExperimentConfig cfg = species_clt_config();
    cfg.n = 5000;
    cfg.replicates = 2000;
    cfg.oracle_factor = 50;
    cfg.probes.emplace_back("int:0.5:0.75", SetExpr::interval(0.5, 0.75));
    return cfg;
  }
  if (suite == "coverage") {
    ExperimentConfig cfg = species_clt_config();
    cfg.n = 5000;
    cfg.replicates = 1000;
    cfg.oracle_factor = 50;
    cfg.alpha = 0.05;
    cfg.x_grid = {0.55, 0.625, 0.7};
    return cfg;
  }
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace dps
