#include "dps/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dps {

MeasureRepr::MeasureRepr(double base_coeff, const BaseMeasure* base,
                         std::vector<std::pair<Color, double>> atoms)
    : base_(base) {
  if (base == nullptr) throw std::invalid_argument("null base measure");
  if (base_coeff < 0.0) throw std::invalid_argument("negative base coefficient");
  diffuse_coeff_ = base_coeff * base->continuous_weight();
  // Fold base atoms into the atom list so the residual part is diffuse.
  for (const auto& [c, p] : base->atoms()) atoms.emplace_back(c, base_coeff * p);
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [c, a] : atoms) {
    if (a < 0.0) throw std::invalid_argument("negative atom mass");
    if (!atoms_.empty() && atoms_.back().first == c)
      atoms_.back().second += a;
    else
      atoms_.emplace_back(c, a);
  }
  double total = diffuse_coeff_;
  for (const auto& [c, a] : atoms_) total += a;
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("measure does not normalize to 1");
}

MeasureRepr MeasureRepr::predictive(const UrnState& state) {
  std::vector<std::pair<Color, double>> atoms;
  atoms.reserve(state.atoms().size());
  for (const Atom& a : state.atoms())
    atoms.emplace_back(a.color, a.mass / state.total_mass());
  return MeasureRepr(state.theta() / state.total_mass(), &state.base(), std::move(atoms));
}

MeasureRepr MeasureRepr::empirical(const UrnState& state) {
  if (state.n() == 0) throw std::logic_error("empirical measure undefined on empty history");
  std::vector<std::pair<Color, double>> atoms;
  atoms.reserve(state.atoms().size());
  double n = static_cast<double>(state.n());
  for (const Atom& a : state.atoms())
    atoms.emplace_back(a.color, static_cast<double>(a.count) / n);
  return MeasureRepr(0.0, &state.base(), std::move(atoms));
}

double MeasureRepr::operator()(const SetExpr& set) const {
  double m = diffuse_coeff_ * set.lebesgue();
  for (const auto& [c, a] : atoms_)
    if (set.contains(c)) m += a;
  return m;
}

double total_variation(const MeasureRepr& m1, const MeasureRepr& m2) {
  if (m1.base() != m2.base())
    throw std::invalid_argument("total variation needs a shared base measure");
  // The signed measure lambda = m1 - m2 has diffuse part (c1 - c2) * nu_cont
  // and atomic differences; the sup is attained on the support of the
  // positive (or negative) part.
  double pos = std::max(0.0, m1.diffuse_coeff() - m2.diffuse_coeff());
  double neg = std::max(0.0, m2.diffuse_coeff() - m1.diffuse_coeff());
  const auto& a = m1.atoms();
  const auto& b = m2.atoms();
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    double d;
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      d = a[i++].second;
    } else if (i == a.size() || b[j].first < a[i].first) {
      d = -b[j++].second;
    } else {
      d = a[i++].second - b[j++].second;
    }
    if (d > 0.0)
      pos += d;
    else
      neg -= d;
  }
  return std::max(pos, neg);
}

}  // namespace dps
