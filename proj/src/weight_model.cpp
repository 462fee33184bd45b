#include "dps/weight_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dps {

NoiseSpec NoiseSpec::bounded_multiplicative(double rho) {
  if (rho < 0.0 || rho >= 1.0)
    throw std::invalid_argument("multiplicative noise needs rho in [0,1)");
  return {NoiseKind::BoundedMultiplicative, rho};
}

namespace {

// Smallest beta compatible with the noise support; used when the caller
// leaves beta unspecified.
double default_beta(double w_bar, const NoiseSpec& noise) {
  switch (noise.kind) {
    case NoiseKind::Deterministic:
      return w_bar;
    case NoiseKind::BoundedMultiplicative:
      return w_bar * (1.0 + noise.rho);
    case NoiseKind::BernoulliScaled:
      throw std::invalid_argument("BernoulliScaled noise needs an explicit beta");
  }
  return w_bar;
}

void check_noise_support(double w_bar, const NoiseSpec& noise, double beta) {
  if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
  double support_max = w_bar;
  if (noise.kind == NoiseKind::BoundedMultiplicative) support_max = w_bar * (1.0 + noise.rho);
  if (support_max > beta + 1e-12)
    throw std::invalid_argument("weight support exceeds the bound beta");
}

}  // namespace

WeightModel WeightModel::constant(double w_bar, NoiseSpec noise, double beta) {
  if (w_bar <= 0.0) throw std::invalid_argument("constant model needs w_bar > 0");
  if (beta == 0.0) beta = default_beta(w_bar, noise);
  check_noise_support(w_bar, noise, beta);
  WeightModel m;
  m.kind_ = ModelKind::Constant;
  m.noise_ = noise;
  m.beta_ = beta;
  m.w_bar_ = w_bar;
  m.w_bar_c_ = 0.0;  // D^c is empty
  m.dominant_ = SetExpr::full_continuous();
  return m;
}

WeightModel WeightModel::k_color_rru(std::vector<double> means, NoiseSpec noise, double beta) {
  if (means.empty()) throw std::invalid_argument("k-color model needs at least one mean");
  double top = *std::max_element(means.begin(), means.end());
  if (beta == 0.0) beta = default_beta(top, noise);
  for (double mj : means)
    if (mj < 0.0 || mj > beta) throw std::invalid_argument("color mean outside [0,beta]");
  check_noise_support(top, noise, beta);
  WeightModel m;
  m.kind_ = ModelKind::KColorRru;
  m.noise_ = noise;
  m.beta_ = beta;
  m.w_bar_ = top;
  m.means_ = std::move(means);
  m.label_count_ = static_cast<int>(m.means_.size());
  std::vector<int> dom;
  double second = 0.0;
  for (int j = 0; j < m.label_count_; ++j) {
    if (m.means_[static_cast<std::size_t>(j)] == top)
      dom.push_back(j);
    else
      second = std::max(second, m.means_[static_cast<std::size_t>(j)]);
  }
  m.w_bar_c_ = dom.size() == m.means_.size() ? 0.0 : second;
  m.dominant_ = SetExpr::labels(std::move(dom));
  return m;
}

WeightModel WeightModel::monotone(double w1, double w2, NoiseSpec noise, double beta) {
  if (!(0.0 <= w1 && w1 < w2)) throw std::invalid_argument("monotone model needs 0 <= w1 < w2");
  if (beta == 0.0) beta = default_beta(w2, noise);
  if (w2 > beta) throw std::invalid_argument("w2 exceeds beta");
  check_noise_support(w2, noise, beta);
  WeightModel m;
  m.kind_ = ModelKind::Monotone;
  m.noise_ = noise;
  m.beta_ = beta;
  m.w_bar_ = w2;
  m.w_bar_c_ = w2;  // sup over {1}^c attained in the limit, so gamma = 0
  m.dominant_ = SetExpr::point(Color::continuous(1.0));
  m.p1_ = w1;
  m.p2_ = w2;
  return m;
}

WeightModel WeightModel::step_species(double w1, double w2, double p, NoiseSpec noise,
                                      double beta) {
  if (!(0.0 < w1 && w1 < w2)) throw std::invalid_argument("step model needs 0 < w1 < w2");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("step location p must lie in (0,1)");
  if (beta == 0.0) beta = default_beta(w2, noise);
  if (w2 > beta) throw std::invalid_argument("w2 exceeds beta");
  check_noise_support(w2, noise, beta);
  WeightModel m;
  m.kind_ = ModelKind::StepSpecies;
  m.noise_ = noise;
  m.beta_ = beta;
  m.w_bar_ = w2;
  m.w_bar_c_ = w1;
  m.dominant_ = SetExpr::interval(p, 1.0, /*lo_closed=*/true, /*hi_closed=*/true);
  m.p1_ = w1;
  m.p2_ = w2;
  m.p3_ = p;
  return m;
}

WeightModel WeightModel::unimodal(double x0, double peak, double floor_value, NoiseSpec noise,
                                  double beta) {
  if (!(x0 > 0.0 && x0 < 1.0)) throw std::invalid_argument("mode x0 must lie in (0,1)");
  if (!(0.0 <= floor_value && floor_value < peak))
    throw std::invalid_argument("unimodal model needs 0 <= floor < peak");
  if (beta == 0.0) beta = default_beta(peak, noise);
  if (peak > beta) throw std::invalid_argument("peak exceeds beta");
  check_noise_support(peak, noise, beta);
  WeightModel m;
  m.kind_ = ModelKind::Unimodal;
  m.noise_ = noise;
  m.beta_ = beta;
  m.w_bar_ = peak;
  m.w_bar_c_ = peak;  // continuity: sup over the complement equals the peak
  m.dominant_ = SetExpr::point(Color::continuous(x0));
  m.p1_ = x0;
  m.p2_ = peak;
  m.p3_ = floor_value;
  return m;
}

SetExpr WeightModel::dominant_delta(double delta) const {
  if (delta <= 0.0) throw std::invalid_argument("delta must be positive");
  if (label_count_ > 0) {
    // Discrete metric: the delta-ball is the set itself for delta <= 1.
    return delta > 1.0 ? SetExpr::full_discrete(label_count_) : dominant_;
  }
  std::vector<Interval> ivs;
  std::vector<Color> pts;
  auto enlarge = [&](double lo, double hi) {
    double a = std::max(0.0, lo - delta);
    double b = std::min(1.0, hi + delta);
    // Open ball endpoints; clamping keeps the space boundary inside only
    // when it is strictly within delta of the set.
    ivs.push_back(Interval{a, b, /*lo_closed=*/lo - delta < 0.0,
                           /*hi_closed=*/hi + delta > 1.0});
  };
  for (const Interval& iv : dominant_.intervals()) enlarge(iv.lo, iv.hi);
  for (const Color& c : dominant_.points()) enlarge(c.point(), c.point());
  return SetExpr(std::move(ivs), std::move(pts));
}

double WeightModel::mean(const Color& c) const {
  switch (kind_) {
    case ModelKind::Constant:
      return w_bar_;
    case ModelKind::KColorRru:
      return means_[static_cast<std::size_t>(c.label())];
    case ModelKind::Monotone:
      return p1_ + (p2_ - p1_) * c.point();
    case ModelKind::StepSpecies:
      return c.point() < p3_ ? p1_ : p2_;
    case ModelKind::Unimodal: {
      double x = c.point();
      double frac = x <= p1_ ? (p1_ > 0.0 ? x / p1_ : 1.0)
                             : (p1_ < 1.0 ? (1.0 - x) / (1.0 - p1_) : 1.0);
      return p3_ + (p2_ - p3_) * frac;
    }
  }
  return 0.0;
}

double WeightModel::draw_weight(const Color& c, CounterRng& noise_rng) const {
  double w = mean(c);
  switch (noise_.kind) {
    case NoiseKind::Deterministic:
      return w;
    case NoiseKind::BoundedMultiplicative:
      return w * (1.0 + noise_.rho * (2.0 * noise_rng.uniform() - 1.0));
    case NoiseKind::BernoulliScaled:
      return noise_rng.uniform() < w / beta_ ? beta_ : 0.0;
  }
  return w;
}

std::string WeightModel::name() const {
  switch (kind_) {
    case ModelKind::Constant:
      return "constant";
    case ModelKind::KColorRru:
      return "k_color_rru";
    case ModelKind::Monotone:
      return "monotone";
    case ModelKind::StepSpecies:
      return "step_species";
    case ModelKind::Unimodal:
      return "unimodal";
  }
  return "unknown";
}

ValidationReport validate_assumptions(const WeightModel& model, const BaseMeasure& base) {
  ValidationReport report;
  const int grid_n = 10000;
  const double delta_grid[] = {0.2, 0.1, 0.05, 0.01};

  // Bounded weights: spot-check w on a grid plus the noise support bound.
  report.bounded = true;
  auto check_mean = [&](const Color& c) {
    double w = model.mean(c);
    if (w < 0.0 || w > model.beta() + 1e-12) report.bounded = false;
  };
  if (model.discrete_space()) {
    for (int l = 0; l < model.label_count(); ++l) check_mean(Color::discrete(l));
  } else {
    for (int i = 0; i <= grid_n; ++i)
      check_mean(Color::continuous(static_cast<double>(i) / grid_n));
  }
  if (model.noise().kind == NoiseKind::BoundedMultiplicative &&
      model.w_bar() * (1.0 + model.noise().rho) > model.beta() + 1e-12)
    report.bounded = false;

  // w_bar in supp(nu_w), analytic per kind. nu(D) > 0 suffices where D has
  // positive base mass; the continuous peaked kinds need base mass in every
  // neighborhood of the maximizer instead.
  switch (model.kind()) {
    case ModelKind::Constant:
      report.supp_ok = true;
      break;
    case ModelKind::KColorRru:
    case ModelKind::StepSpecies:
      report.supp_ok = base.measure(model.dominant()) > 0.0;
      break;
    case ModelKind::Monotone:
    case ModelKind::Unimodal:
      report.supp_ok = base.continuous_weight() > 0.0;
      break;
  }
  if (!report.supp_ok) report.notes.push_back("w_bar not in supp(nu_w): nu puts no mass near the dominant set");

  // Dominance gap on the fixed delta grid.
  report.dominance_gap = true;
  for (double delta : delta_grid) {
    SetExpr ball = model.dominant_delta(delta);
    double sup_outside = -1.0;
    auto probe = [&](const Color& c) {
      if (!ball.contains(c)) sup_outside = std::max(sup_outside, model.mean(c));
    };
    if (model.discrete_space()) {
      for (int l = 0; l < model.label_count(); ++l) probe(Color::discrete(l));
    } else {
      for (int i = 0; i <= grid_n; ++i)
        probe(Color::continuous(static_cast<double>(i) / grid_n));
    }
    if (sup_outside >= model.w_bar()) {
      report.dominance_gap = false;
      report.notes.push_back("no dominance gap at delta=" + std::to_string(delta));
    }
  }

  report.gamma = model.gamma();
  report.clt_hypothesis = model.w_bar() > 2.0 * model.w_bar_c();
  return report;
}

}  // namespace dps
