#ifndef DPS_URN_HPP
#define DPS_URN_HPP

#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dps/base_measure.hpp"
#include "dps/color.hpp"
#include "dps/rng.hpp"
#include "dps/sample_index.hpp"
#include "dps/weight_model.hpp"

namespace dps {

enum class ProbabilityKind { Predictive, Empirical };

struct Atom {
  Color color;
  double mass = 0.0;   // sum of reinforcements W_i at this color
  long count = 0;      // number of observations of this color
  double sum_w2 = 0.0; // sum of W_i^2 at this color
  double mass_comp = 0.0;  // Kahan compensation for mass
};

// Compensated accumulator; keeps long-run sums accurate to a few ulps so the
// mass-conservation identity holds tightly over millions of steps.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// The urn state machine: maintains the predictive distribution
// P_n = (theta*nu + sum W_i delta_{X_i}) / N_n and samples the next
// (color, weight) pair. Strictly sequential; replicate parallelism owns one
// state per worker.
class UrnState {
 public:
  UrnState(double theta, BaseMeasure base, IndexKind index_kind = IndexKind::Fenwick);

  std::pair<Color, double> step(const WeightModel& model, CounterRng& color_rng,
                                CounterRng& noise_rng);

  double predictive_probability(const SetExpr& set) const;
  double empirical_probability(const SetExpr& set) const;  // throws when n == 0
  double conditional_probability(const SetExpr& set, const SetExpr& given,
                                 ProbabilityKind kind) const;

  double theta() const { return theta_; }
  const BaseMeasure& base() const { return base_; }
  long n() const { return n_; }
  long distinct() const { return static_cast<long>(atoms_.size()); }
  double total_mass() const { return theta_ + sum_w_.sum; }  // N_n = theta + sum of masses
  double sum_w() const { return sum_w_.sum; }
  double sum_w2() const { return sum_w2_.sum; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  // Atom-level aggregates over a set (base measure excluded).
  double mass_in(const SetExpr& set) const;
  long count_in(const SetExpr& set) const;
  double sum_w2_in(const SetExpr& set) const;

  IndexKind index_kind() const { return index_.kind(); }
  const SampleIndex& index() const { return index_; }

 private:
  double theta_;
  BaseMeasure base_;
  std::vector<Atom> atoms_;
  std::unordered_map<Color, std::size_t, ColorHash> slot_of_;
  SampleIndex index_;
  KahanSum sum_w_;
  KahanSum sum_w2_;
  long n_ = 0;
};

struct TrajectoryPoint {
  long n = 0;
  std::vector<double> predictive;   // per probe
  std::vector<double> empirical;    // per probe
  double tv_pred_emp = 0.0;         // total variation between P_n and the empirical
  double mass_per_step = 0.0;       // N_n / n
  double sum_w_per_step = 0.0;      // (1/n) sum W_i
  double sum_w2_per_step = 0.0;     // (1/n) sum W_i^2
  long distinct = 0;                // L_n
};

using Trajectory = std::vector<TrajectoryPoint>;

// Advances the state n_steps, recording probe statistics at each checkpoint.
// Checkpoints must be sorted ascending and bounded by the current n plus
// n_steps.
Trajectory run(UrnState& state, const WeightModel& model, long n_steps,
               std::span<const long> checkpoints, std::span<const SetExpr> probes,
               CounterRng& color_rng, CounterRng& noise_rng);

// Geometric checkpoint ladder n_j = ceil(n0 * r^j), deduplicated and clipped
// to n_max (which is always included).
std::vector<long> geometric_checkpoints(long n0, double ratio, long n_max);

}  // namespace dps

#endif  // DPS_URN_HPP
