#ifndef DPS_STATS_HPP
#define DPS_STATS_HPP

#include <utility>
#include <vector>

#include "dps/color.hpp"
#include "dps/urn.hpp"
#include "dps/weight_model.hpp"

namespace dps {

// Standard-normal CDF and quantile. The quantile uses Acklam's rational
// approximation refined by one Halley step; absolute error well below 1e-9.
double normal_cdf(double x);
double normal_quantile(double p);

// Sup distance between the empirical CDF of the sample and the standard
// normal CDF.
double ks_distance_to_normal(std::vector<double> sample);

// Least-squares slope of log(value) against log(n).
double regression_exponent(const std::vector<std::pair<double, double>>& series);

// L_n / log n; requires n >= 2 and a diffuse base.
double distinct_ratio(const UrnState& state);

// n^gamma * P_n(D^c) (predictive) or n^gamma * empirical mass of D^c;
// rejects gamma <= 0 models where no polynomial rate is claimed.
double rate_statistic(const UrnState& state, const WeightModel& model, ProbabilityKind kind);

struct VarianceEstimates {
  double m_n = 0.0;     // (1/n) sum W_i
  double s_n_a = 0.0;   // (1/n) sum W_i^2 delta_{X_i}(A)
  double s_n_ac = 0.0;  // (1/n) sum W_i^2 delta_{X_i}(A^c)
  double v_hat = 0.0;   // plug-in estimate of V(A)
  double u_hat = 0.0;   // v_hat - P_n(A)(1 - P_n(A)); may be negative by noise
};

VarianceEstimates variance_estimators(const UrnState& state, const SetExpr& set);

struct CltSample {
  long replicate = 0;
  long n = 0;
  double c_stat = 0.0;     // sqrt(n) * (empirical - predictive) on A
  double d_stat = 0.0;     // sqrt(n) * (predictive - oracle) on A
  double u_hat = 0.0;
  double v_hat = 0.0;
  double oracle_pa = 0.0;
};

CltSample clt_statistics(const UrnState& state, const SetExpr& set, double oracle_pa);

// Asymptotic marginal credible interval for the limit CDF at x, clamped to
// [0,1].
std::pair<double, double> credible_interval(const UrnState& state, double x, double alpha);

double distance_to_dominant(const Color& color, const WeightModel& model);

}  // namespace dps

#endif  // DPS_STATS_HPP
