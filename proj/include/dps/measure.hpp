#ifndef DPS_MEASURE_HPP
#define DPS_MEASURE_HPP

#include <utility>
#include <vector>

#include "dps/base_measure.hpp"
#include "dps/color.hpp"
#include "dps/urn.hpp"

namespace dps {

// Canonical form c * nu_cont + sum a_i delta_{x_i} of a probability measure,
// where nu_cont is the diffuse (Uniform) part of the shared base measure.
// Atoms of the base are merged into the atom list at construction, so the
// residual coefficient multiplies a diffuse measure and total-variation
// arithmetic is exact.
class MeasureRepr {
 public:
  MeasureRepr(double base_coeff, const BaseMeasure* base,
              std::vector<std::pair<Color, double>> atoms);

  static MeasureRepr predictive(const UrnState& state);
  static MeasureRepr empirical(const UrnState& state);  // throws when n == 0

  double diffuse_coeff() const { return diffuse_coeff_; }
  const BaseMeasure* base() const { return base_; }
  const std::vector<std::pair<Color, double>>& atoms() const { return atoms_; }

  // Evaluate the measure on a set.
  double operator()(const SetExpr& set) const;

 private:
  double diffuse_coeff_;  // coefficient on the diffuse Uniform part
  const BaseMeasure* base_;
  std::vector<std::pair<Color, double>> atoms_;  // sorted by color
};

// ||m1 - m2|| = sup_A |m1(A) - m2(A)|, closed form over the shared
// atomic-plus-diffuse representation. Requires both measures to reference the
// same base.
double total_variation(const MeasureRepr& m1, const MeasureRepr& m2);

}  // namespace dps

#endif  // DPS_MEASURE_HPP
