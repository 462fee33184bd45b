#include "dps/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dps {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile needs p in (0,1)");
  // Acklam's rational approximation.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    double q = p - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // One Halley refinement against the exact CDF.
  double e = normal_cdf(x) - p;
  double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  x = x - u / (1.0 + x * u / 2.0);
  return x;
}

double ks_distance_to_normal(std::vector<double> sample) {
  if (sample.empty()) throw std::invalid_argument("KS distance needs a nonempty sample");
  std::sort(sample.begin(), sample.end());
  double n = static_cast<double>(sample.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double phi = normal_cdf(sample[i]);
    double hi = (static_cast<double>(i) + 1.0) / n - phi;
    double lo = phi - static_cast<double>(i) / n;
    sup = std::max({sup, hi, lo});
  }
  return sup;
}

double regression_exponent(const std::vector<std::pair<double, double>>& series) {
  if (series.size() < 3) throw std::invalid_argument("regression needs at least 3 points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  double prev_n = 0.0;
  for (const auto& [n, v] : series) {
    if (n <= prev_n) throw std::invalid_argument("abscissae must be strictly increasing");
    if (v <= 0.0) throw std::invalid_argument("regression values must be positive");
    prev_n = n;
    double x = std::log(n), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double m = static_cast<double>(series.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double distinct_ratio(const UrnState& state) {
  if (state.n() < 2) throw std::domain_error("distinct ratio needs n >= 2");
  if (!state.base().diffuse()) throw std::domain_error("distinct ratio needs a diffuse base");
  return static_cast<double>(state.distinct()) / std::log(static_cast<double>(state.n()));
}

double rate_statistic(const UrnState& state, const WeightModel& model, ProbabilityKind kind) {
  double gamma = model.gamma();
  if (gamma <= 0.0) throw std::domain_error("no polynomial rate when gamma <= 0");
  SetExpr dc = model.dominant_complement();
  double prob = kind == ProbabilityKind::Predictive ? state.predictive_probability(dc)
                                                    : state.empirical_probability(dc);
  return std::pow(static_cast<double>(state.n()), gamma) * prob;
}

VarianceEstimates variance_estimators(const UrnState& state, const SetExpr& set) {
  if (state.n() == 0) throw std::logic_error("variance estimators need n >= 1");
  double n = static_cast<double>(state.n());
  VarianceEstimates est;
  est.m_n = state.sum_w() / n;
  est.s_n_a = state.sum_w2_in(set) / n;
  est.s_n_ac = state.sum_w2() / n - est.s_n_a;
  double pa = state.predictive_probability(set);
  est.v_hat = ((1.0 - pa) * (1.0 - pa) * est.s_n_a + pa * pa * est.s_n_ac) /
              (est.m_n * est.m_n);
  est.u_hat = est.v_hat - pa * (1.0 - pa);
  return est;
}

CltSample clt_statistics(const UrnState& state, const SetExpr& set, double oracle_pa) {
  if (state.n() < 1) throw std::logic_error("CLT statistics need n >= 1");
  if (!(oracle_pa >= 0.0 && oracle_pa <= 1.0))
    throw std::invalid_argument("oracle probability outside [0,1]");
  double root_n = std::sqrt(static_cast<double>(state.n()));
  double pred = state.predictive_probability(set);
  double emp = state.empirical_probability(set);
  VarianceEstimates est = variance_estimators(state, set);
  CltSample s;
  s.n = state.n();
  s.c_stat = root_n * (emp - pred);
  s.d_stat = root_n * (pred - oracle_pa);
  s.u_hat = est.u_hat;
  s.v_hat = est.v_hat;
  s.oracle_pa = oracle_pa;
  return s;
}

std::pair<double, double> credible_interval(const UrnState& state, double x, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  if (state.n() == 0) throw std::logic_error("credible interval needs n >= 1");
  SetExpr cdf = SetExpr::cdf_set(x);
  double fn = state.predictive_probability(cdf);
  VarianceEstimates est = variance_estimators(state, cdf);
  double v = std::max(0.0, est.v_hat);
  double z = normal_quantile(1.0 - alpha / 2.0);
  double half = z * std::sqrt(v / static_cast<double>(state.n()));
  return {std::max(0.0, fn - half), std::min(1.0, fn + half)};
}

double distance_to_dominant(const Color& color, const WeightModel& model) {
  return model.dominant().distance(color);
}

}  // namespace dps
