#include "dps/urn.hpp"

#include <cmath>
#include <stdexcept>

#include "dps/measure.hpp"

namespace dps {

UrnState::UrnState(double theta, BaseMeasure base, IndexKind index_kind)
    : theta_(theta), base_(std::move(base)), index_(index_kind) {
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
}

std::pair<Color, double> UrnState::step(const WeightModel& model, CounterRng& color_rng,
                                        CounterRng& noise_rng) {
  double target = color_rng.uniform() * total_mass();
  std::size_t slot;
  if (target < theta_ || atoms_.empty()) {
    Color c = base_.sample(color_rng);
    auto it = slot_of_.find(c);
    if (it == slot_of_.end()) {
      slot = atoms_.size();
      atoms_.push_back(Atom{c, 0.0, 0, 0.0});
      slot_of_.emplace(c, slot);
      index_.append(0.0);
    } else {
      slot = it->second;
    }
  } else {
    slot = index_.sample(target - theta_);
  }
  Atom& atom = atoms_[slot];
  double w = model.draw_weight(atom.color, noise_rng);
  // Compensated accumulation keeps the identity N_n = theta + sum of atom
  // masses tight over millions of steps.
  double y = w - atom.mass_comp;
  double t = atom.mass + y;
  atom.mass_comp = (t - atom.mass) - y;
  atom.mass = t;
  atom.count += 1;
  atom.sum_w2 += w * w;
  index_.add_mass(slot, w);
  sum_w_.add(w);
  sum_w2_.add(w * w);
  n_ += 1;
  return {atom.color, w};
}

double UrnState::predictive_probability(const SetExpr& set) const {
  return (theta_ * base_.measure(set) + mass_in(set)) / total_mass();
}

double UrnState::empirical_probability(const SetExpr& set) const {
  if (n_ == 0) throw std::logic_error("empirical probability undefined on empty history");
  return static_cast<double>(count_in(set)) / static_cast<double>(n_);
}

double UrnState::conditional_probability(const SetExpr& set, const SetExpr& given,
                                         ProbabilityKind kind) const {
  SetExpr both = set.intersect(given);
  double num, den;
  if (kind == ProbabilityKind::Predictive) {
    num = predictive_probability(both);
    den = predictive_probability(given);
  } else {
    num = empirical_probability(both);
    den = empirical_probability(given);
  }
  if (den <= 0.0) throw std::domain_error("conditioning on a null set");
  return num / den;
}

double UrnState::mass_in(const SetExpr& set) const {
  double m = 0.0;
  for (const Atom& a : atoms_)
    if (set.contains(a.color)) m += a.mass;
  return m;
}

long UrnState::count_in(const SetExpr& set) const {
  long c = 0;
  for (const Atom& a : atoms_)
    if (set.contains(a.color)) c += a.count;
  return c;
}

double UrnState::sum_w2_in(const SetExpr& set) const {
  double s = 0.0;
  for (const Atom& a : atoms_)
    if (set.contains(a.color)) s += a.sum_w2;
  return s;
}

Trajectory run(UrnState& state, const WeightModel& model, long n_steps,
               std::span<const long> checkpoints, std::span<const SetExpr> probes,
               CounterRng& color_rng, CounterRng& noise_rng) {
  for (std::size_t i = 1; i < checkpoints.size(); ++i)
    if (checkpoints[i] <= checkpoints[i - 1])
      throw std::invalid_argument("checkpoints must be strictly ascending");
  if (!checkpoints.empty() && checkpoints.back() > state.n() + n_steps)
    throw std::invalid_argument("checkpoint beyond the simulation horizon");

  Trajectory traj;
  traj.reserve(checkpoints.size());
  std::size_t next_cp = 0;
  auto record_if_due = [&] {
    while (next_cp < checkpoints.size() && checkpoints[next_cp] == state.n()) {
      TrajectoryPoint pt;
      pt.n = state.n();
      pt.predictive.reserve(probes.size());
      pt.empirical.reserve(probes.size());
      for (const SetExpr& probe : probes) {
        pt.predictive.push_back(state.predictive_probability(probe));
        pt.empirical.push_back(state.n() > 0 ? state.empirical_probability(probe) : 0.0);
      }
      if (state.n() > 0) {
        double n = static_cast<double>(state.n());
        pt.tv_pred_emp =
            total_variation(MeasureRepr::predictive(state), MeasureRepr::empirical(state));
        pt.mass_per_step = state.total_mass() / n;
        pt.sum_w_per_step = state.sum_w() / n;
        pt.sum_w2_per_step = state.sum_w2() / n;
      }
      pt.distinct = state.distinct();
      traj.push_back(std::move(pt));
      ++next_cp;
    }
  };

  record_if_due();
  for (long i = 0; i < n_steps; ++i) {
    state.step(model, color_rng, noise_rng);
    record_if_due();
  }
  return traj;
}

std::vector<long> geometric_checkpoints(long n0, double ratio, long n_max) {
  if (n0 < 1 || ratio <= 1.0 || n_max < n0)
    throw std::invalid_argument("need n0 >= 1, ratio > 1, n_max >= n0");
  std::vector<long> cps;
  double x = static_cast<double>(n0);
  while (true) {
    long n = static_cast<long>(std::ceil(x));
    if (n >= n_max) break;
    if (cps.empty() || n > cps.back()) cps.push_back(n);
    x *= ratio;
  }
  cps.push_back(n_max);
  return cps;
}

}  // namespace dps
