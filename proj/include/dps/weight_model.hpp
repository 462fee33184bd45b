#ifndef DPS_WEIGHT_MODEL_HPP
#define DPS_WEIGHT_MODEL_HPP

#include <string>
#include <vector>

#include "dps/base_measure.hpp"
#include "dps/color.hpp"
#include "dps/rng.hpp"

namespace dps {

enum class NoiseKind { Deterministic, BoundedMultiplicative, BernoulliScaled };

// Noise mechanism for W = h(x, U). Each variant has conditional mean w(x).
struct NoiseSpec {
  NoiseKind kind = NoiseKind::Deterministic;
  double rho = 0.0;  // BoundedMultiplicative: W = w(x) * (1 + rho*(2U-1))

  static NoiseSpec deterministic() { return {NoiseKind::Deterministic, 0.0}; }
  static NoiseSpec bounded_multiplicative(double rho);
  static NoiseSpec bernoulli_scaled() { return {NoiseKind::BernoulliScaled, 0.0}; }
};

enum class ModelKind { Constant, KColorRru, Monotone, Unimodal, StepSpecies };

struct ValidationReport {
  bool bounded = false;         // 0 <= W <= beta
  bool supp_ok = false;         // w_bar in supp(nu_w)
  bool dominance_gap = false;   // w_bar > sup over complements of delta-balls
  double gamma = 0.0;
  bool clt_hypothesis = false;  // w_bar > 2 * w_bar_c
  std::vector<std::string> notes;

  bool all_pass() const { return bounded && supp_ok && dominance_gap; }
};

// Expected-weight function w(.), its noise mechanism, and the derived
// quantities: w_bar, w_bar_c, the dominant set and gamma. Immutable after
// construction; shared read-only across replicate workers.
class WeightModel {
 public:
  static WeightModel constant(double w_bar, NoiseSpec noise = NoiseSpec::deterministic(),
                              double beta = 0.0);
  static WeightModel k_color_rru(std::vector<double> means,
                                 NoiseSpec noise = NoiseSpec::deterministic(),
                                 double beta = 0.0);
  // w(x) = w1 + (w2 - w1) * x, strictly increasing on [0,1].
  static WeightModel monotone(double w1, double w2,
                              NoiseSpec noise = NoiseSpec::deterministic(), double beta = 0.0);
  // w = w1 on [0,p), w2 on [p,1].
  static WeightModel step_species(double w1, double w2, double p,
                                  NoiseSpec noise = NoiseSpec::deterministic(),
                                  double beta = 0.0);
  // Tent through (0,floor), (x0,peak), (1,floor).
  static WeightModel unimodal(double x0, double peak, double floor_value,
                              NoiseSpec noise = NoiseSpec::deterministic(), double beta = 0.0);

  ModelKind kind() const { return kind_; }
  double beta() const { return beta_; }
  double w_bar() const { return w_bar_; }
  double w_bar_c() const { return w_bar_c_; }
  double gamma() const { return 1.0 - w_bar_c_ / w_bar_; }
  const SetExpr& dominant() const { return dominant_; }
  SetExpr dominant_complement() const { return dominant_.complement(label_count_); }
  // Open delta-enlargement of the dominant set, clipped to the color space.
  SetExpr dominant_delta(double delta) const;
  bool discrete_space() const { return label_count_ > 0; }
  int label_count() const { return label_count_; }
  const NoiseSpec& noise() const { return noise_; }

  double mean(const Color& c) const;           // w(x)
  double draw_weight(const Color& c, CounterRng& noise_rng) const;  // h(x, U)

  std::string name() const;

 private:
  WeightModel() = default;

  ModelKind kind_ = ModelKind::Constant;
  NoiseSpec noise_;
  double beta_ = 0.0;
  double w_bar_ = 0.0;
  double w_bar_c_ = 0.0;
  SetExpr dominant_;
  int label_count_ = 0;  // > 0 for discrete color spaces
  std::vector<double> means_;
  double p1_ = 0.0, p2_ = 0.0, p3_ = 0.0;  // kind-specific parameters
};

// Checks the model against the standing assumptions: bounded weights,
// w_bar in the support of the pushforward of nu, and a strict dominance gap
// outside every delta-enlargement on the fixed delta grid.
ValidationReport validate_assumptions(const WeightModel& model, const BaseMeasure& base);

}  // namespace dps

#endif  // DPS_WEIGHT_MODEL_HPP
