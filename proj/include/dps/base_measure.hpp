#ifndef DPS_BASE_MEASURE_HPP
#define DPS_BASE_MEASURE_HPP

#include <utility>
#include <vector>

#include "dps/color.hpp"
#include "dps/rng.hpp"

namespace dps {

// The measure nu: a convex combination of Uniform[0,1] and a finite atomic
// part. Discrete bases put all mass on labels; the pure Uniform base is
// diffuse, so two independent draws are a.s. distinct.
class BaseMeasure {
 public:
  static BaseMeasure uniform01();
  static BaseMeasure discrete(std::vector<double> probs);
  static BaseMeasure mixture(double cont_weight, std::vector<std::pair<Color, double>> atoms);

  bool diffuse() const { return atoms_.empty() && cont_weight_ > 0.0; }
  double continuous_weight() const { return cont_weight_; }
  const std::vector<std::pair<Color, double>>& atoms() const { return atoms_; }
  // Number of labels when the atomic part lives on labels; 0 otherwise.
  int label_count() const { return label_count_; }

  // Exact nu(A): Lebesgue mass of the interval part plus atomic hits.
  double measure(const SetExpr& set) const;

  Color sample(CounterRng& rng) const;

 private:
  BaseMeasure(double cont_weight, std::vector<std::pair<Color, double>> atoms);

  double cont_weight_ = 1.0;
  std::vector<std::pair<Color, double>> atoms_;
  std::vector<double> cumulative_;  // running atom mass for inversion sampling
  int label_count_ = 0;
};

}  // namespace dps

#endif  // DPS_BASE_MEASURE_HPP
