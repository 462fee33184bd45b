#include "dps/base_measure.hpp"

#include <cmath>
#include <stdexcept>

namespace dps {

BaseMeasure::BaseMeasure(double cont_weight, std::vector<std::pair<Color, double>> atoms)
    : cont_weight_(cont_weight), atoms_(std::move(atoms)) {
  if (cont_weight_ < 0.0 || cont_weight_ > 1.0)
    throw std::invalid_argument("continuous weight must lie in [0,1]");
  double total = cont_weight_;
  bool all_labels = !atoms_.empty();
  double run = 0.0;
  cumulative_.reserve(atoms_.size());
  for (const auto& [c, p] : atoms_) {
    if (p < 0.0) throw std::invalid_argument("negative atom probability");
    total += p;
    run += p;
    cumulative_.push_back(run);
    if (!c.is_label()) all_labels = false;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("base measure mass must sum to 1");
  if (all_labels) {
    int k = 0;
    for (const auto& [c, p] : atoms_) k = std::max(k, c.label() + 1);
    label_count_ = k;
  }
}

BaseMeasure BaseMeasure::uniform01() { return BaseMeasure(1.0, {}); }

BaseMeasure BaseMeasure::discrete(std::vector<double> probs) {
  if (probs.empty()) throw std::invalid_argument("discrete base needs at least one label");
  std::vector<std::pair<Color, double>> atoms;
  atoms.reserve(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i)
    atoms.emplace_back(Color::discrete(static_cast<int>(i)), probs[i]);
  return BaseMeasure(0.0, std::move(atoms));
}

BaseMeasure BaseMeasure::mixture(double cont_weight, std::vector<std::pair<Color, double>> atoms) {
  return BaseMeasure(cont_weight, std::move(atoms));
}

double BaseMeasure::measure(const SetExpr& set) const {
  double m = cont_weight_ * set.lebesgue();
  for (const auto& [c, p] : atoms_)
    if (set.contains(c)) m += p;
  return m;
}

Color BaseMeasure::sample(CounterRng& rng) const {
  double u = rng.uniform();
  if (u < cont_weight_) return Color::continuous(rng.uniform());
  double target = u - cont_weight_;
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (target < cumulative_[i]) return atoms_[i].first;
  return atoms_.back().first;  // u landed on accumulated rounding slack
}

}  // namespace dps
