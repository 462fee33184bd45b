#include <doctest.h>

#include <cmath>
#include <map>

#include "dps/rng.hpp"
#include "dps/urn.hpp"

using namespace dps;

TEST_CASE("fresh state is the base measure") {
  UrnState uni(1.0, BaseMeasure::uniform01());
  CHECK(uni.predictive_probability(SetExpr::interval(0.0, 0.5)) == doctest::Approx(0.5));
  CHECK(uni.n() == 0);
  CHECK(uni.distinct() == 0);
  CHECK(uni.total_mass() == 1.0);

  UrnState disc(2.0, BaseMeasure::discrete({0.3, 0.7}));
  CHECK(disc.predictive_probability(SetExpr::labels({1})) == doctest::Approx(0.7));

  CHECK_THROWS(UrnState(0.0, BaseMeasure::uniform01()));
  CHECK_THROWS(UrnState(-1.0, BaseMeasure::uniform01()));
  CHECK_THROWS(disc.empirical_probability(SetExpr::labels({1})));
}

TEST_CASE("one observation updates the predictive exactly") {
  // Point-mass base forces the first color, deterministic model the weight.
  UrnState state(1.0, BaseMeasure::mixture(0.0, {{Color::continuous(0.3), 1.0}}));
  WeightModel model = WeightModel::constant(2.0);
  CounterRng color(1, 0, StreamRole::ColorUniform);
  CounterRng noise(1, 0, StreamRole::NoiseUniform);
  auto [c, w] = state.step(model, color, noise);
  CHECK(c == Color::continuous(0.3));
  CHECK(w == 2.0);
  // (theta*nu(A) + W) / (theta + W) with nu = delta_{0.3}
  CHECK(state.predictive_probability(SetExpr::point(Color::continuous(0.3))) ==
        doctest::Approx(1.0));
  CHECK(state.predictive_probability(SetExpr::interval(0.5, 1.0)) == doctest::Approx(0.0));
  CHECK(state.empirical_probability(SetExpr::full_continuous()) == 1.0);
  CHECK(state.total_mass() == doctest::Approx(3.0));
}

TEST_CASE("predictive after a uniform-base observation") {
  UrnState state(1.0, BaseMeasure::uniform01());
  WeightModel model = WeightModel::constant(2.0);
  CounterRng color(2, 0, StreamRole::ColorUniform);
  CounterRng noise(2, 0, StreamRole::NoiseUniform);
  auto [c, w] = state.step(model, color, noise);
  CHECK(w == 2.0);
  SetExpr a = SetExpr::interval(0.0, 0.5);
  double ind = a.contains(c) ? 1.0 : 0.0;
  // (theta*nu(A) + W*1{x in A}) / (theta + W); 0.833333... when x lands in A.
  CHECK(state.predictive_probability(a) == doctest::Approx((0.5 + 2.0 * ind) / 3.0));
  CHECK(state.predictive_probability(SetExpr::point(c)) == doctest::Approx(2.0 / 3.0));
  CHECK(state.predictive_probability(SetExpr::full_continuous()) == doctest::Approx(1.0));
  CHECK(state.empirical_probability(SetExpr::point(c)) == 1.0);
}

TEST_CASE("one-step predictive identity holds along a long run") {
  UrnState state(1.5, BaseMeasure::uniform01());
  WeightModel model = WeightModel::step_species(1.0, 2.0, 0.5,
                                                NoiseSpec::bounded_multiplicative(0.5));
  CounterRng color(3, 0, StreamRole::ColorUniform);
  CounterRng noise(3, 0, StreamRole::NoiseUniform);
  SetExpr a = SetExpr::interval(0.25, 0.75);
  for (int i = 0; i < 10000; ++i) {
    double before = state.predictive_probability(a);
    double mass_before = state.total_mass();
    auto [c, w] = state.step(model, color, noise);
    double expected = (mass_before * before + w * (a.contains(c) ? 1.0 : 0.0)) / (mass_before + w);
    REQUIRE(state.predictive_probability(a) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("bookkeeping invariants after many steps") {
  UrnState state(1.0, BaseMeasure::uniform01());
  WeightModel model = WeightModel::step_species(1.0, 2.5, 0.5, NoiseSpec::bernoulli_scaled(), 3.0);
  CounterRng color(4, 0, StreamRole::ColorUniform);
  CounterRng noise(4, 0, StreamRole::NoiseUniform);
  for (int i = 0; i < 20000; ++i) state.step(model, color, noise);

  double atom_mass = 0.0, atom_w2 = 0.0;
  long atom_count = 0;
  for (const Atom& atom : state.atoms()) {
    CHECK(atom.mass >= 0.0);
    CHECK(atom.count >= 1);
    atom_mass += atom.mass;
    atom_w2 += atom.sum_w2;
    atom_count += atom.count;
  }
  CHECK(atom_count == state.n());
  CHECK(std::abs(state.total_mass() - (state.theta() + atom_mass)) < 1e-9);
  CHECK(std::abs(state.sum_w() - atom_mass) < 1e-9);
  CHECK(std::abs(state.sum_w2() - atom_w2) < 1e-9);

  SetExpr a = SetExpr::interval(0.0, 0.5, true, true);
  SetExpr ac = a.complement();
  CHECK(state.mass_in(a) + state.mass_in(ac) == doctest::Approx(atom_mass).epsilon(1e-12));
  CHECK(state.count_in(a) + state.count_in(ac) == state.n());
  CHECK(state.sum_w2_in(a) + state.sum_w2_in(ac) ==
        doctest::Approx(state.sum_w2()).epsilon(1e-12));

  // Probabilities are additive, bounded, normalized.
  double pa = state.predictive_probability(a);
  CHECK(pa >= 0.0);
  CHECK(pa <= 1.0);
  CHECK(pa + state.predictive_probability(ac) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(state.empirical_probability(a) + state.empirical_probability(ac) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(state.predictive_probability(SetExpr::full_continuous()) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a frozen state samples colors with the predictive law") {
  // Build a three-atom state, then draw many single steps from copies of it.
  UrnState frozen(1.0, BaseMeasure::discrete({0.2, 0.3, 0.5}));
  WeightModel model = WeightModel::k_color_rru({1.0, 2.0, 3.0});
  {
    CounterRng color(5, 0, StreamRole::ColorUniform);
    CounterRng noise(5, 0, StreamRole::NoiseUniform);
    while (frozen.distinct() < 3) frozen.step(model, color, noise);
  }
  const long n0 = frozen.n();
  double expected[3];
  for (int l = 0; l < 3; ++l)
    expected[l] = frozen.predictive_probability(SetExpr::labels({l}));

  CounterRng color(6, 0, StreamRole::ColorUniform);
  CounterRng noise(6, 0, StreamRole::NoiseUniform);
  const int draws = 1000000;
  std::map<int, int> counts;
  for (int i = 0; i < draws; ++i) {
    UrnState state = frozen;  // value copy, including the sampling index
    auto [c, w] = state.step(model, color, noise);
    CHECK(state.n() == n0 + 1);
    ++counts[c.label()];
  }
  for (int l = 0; l < 3; ++l) {
    double se = std::sqrt(expected[l] * (1.0 - expected[l]) / draws);
    CHECK(std::abs(counts[l] / double(draws) - expected[l]) < 3.0 * se);
  }
}

TEST_CASE("conditional probabilities") {
  UrnState state(1.0, BaseMeasure::discrete({0.25, 0.25, 0.5}));
  WeightModel model = WeightModel::k_color_rru({1.0, 1.0, 1.0});
  CounterRng color(7, 0, StreamRole::ColorUniform);
  CounterRng noise(7, 0, StreamRole::NoiseUniform);
  for (int i = 0; i < 200; ++i) state.step(model, color, noise);

  SetExpr c01 = SetExpr::labels({0, 1});
  SetExpr a0 = SetExpr::labels({0});
  SetExpr a2 = SetExpr::labels({2});

  // A contains the conditioning set / A disjoint from it.
  CHECK(state.conditional_probability(c01, a0, ProbabilityKind::Predictive) == doctest::Approx(1.0));
  CHECK(state.conditional_probability(a2, c01, ProbabilityKind::Predictive) == doctest::Approx(0.0));

  // Empirical conditioning reduces to count ratios.
  long in0 = state.count_in(a0);
  long in01 = state.count_in(c01);
  REQUIRE(in01 > 0);
  CHECK(state.conditional_probability(a0, c01, ProbabilityKind::Empirical) ==
        doctest::Approx(double(in0) / double(in01)));

  // Predictive conditioning is the measure ratio.
  CHECK(state.conditional_probability(a0, c01, ProbabilityKind::Predictive) ==
        doctest::Approx(state.predictive_probability(a0) / state.predictive_probability(c01)));

  // Conditioning on a null set is rejected.
  CHECK_THROWS(state.conditional_probability(a0, SetExpr::empty(), ProbabilityKind::Predictive));
}

TEST_CASE("conditioning on an unseen null set throws") {
  UrnState state(1.0, BaseMeasure::uniform01());
  WeightModel model = WeightModel::constant(1.0);
  CounterRng color(8, 0, StreamRole::ColorUniform);
  CounterRng noise(8, 0, StreamRole::NoiseUniform);
  for (int i = 0; i < 10; ++i) state.step(model, color, noise);
  // A fixed point carries no predictive mass under a diffuse base (a.s.).
  SetExpr pt = SetExpr::point(Color::continuous(0.123456789));
  CHECK_THROWS(state.conditional_probability(SetExpr::full_continuous(), pt,
                                             ProbabilityKind::Empirical));
}

TEST_CASE("run records checkpoints") {
  UrnState state(1.0, BaseMeasure::uniform01());
  WeightModel model = WeightModel::constant(2.0);
  CounterRng color(9, 0, StreamRole::ColorUniform);
  CounterRng noise(9, 0, StreamRole::NoiseUniform);

  Trajectory empty = run(state, model, 0, {}, {}, color, noise);
  CHECK(empty.empty());
  CHECK(state.n() == 0);

  std::vector<long> cps = {1, 100, 1000};
  std::vector<SetExpr> probes = {SetExpr::full_continuous(), SetExpr::interval(0.0, 0.5)};
  Trajectory traj = run(state, model, 1000, cps, probes, color, noise);
  REQUIRE(traj.size() == 3);
  CHECK(traj[0].n == 1);
  CHECK(traj[0].predictive[0] == doctest::Approx(1.0));
  CHECK(traj[0].empirical[0] == 1.0);
  CHECK(traj[2].n == 1000);
  CHECK(state.n() == 1000);
  // Constant deterministic weights: N_n = theta + 2n exactly.
  CHECK(traj[2].mass_per_step == doctest::Approx((1.0 + 2.0 * 1000) / 1000).epsilon(1e-12));
  CHECK(traj[2].sum_w_per_step == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(traj[2].distinct == state.distinct());
  // Diffuse base, finitely many atoms: TV(P_n, hat P_n) stays positive.
  CHECK(traj[2].tv_pred_emp > 0.0);
  CHECK(traj[2].tv_pred_emp <= 1.0);
}

TEST_CASE("run validates checkpoints") {
  UrnState state(1.0, BaseMeasure::uniform01());
  WeightModel model = WeightModel::constant(1.0);
  CounterRng color(10, 0, StreamRole::ColorUniform);
  CounterRng noise(10, 0, StreamRole::NoiseUniform);
  std::vector<long> bad = {500, 100};  // not ascending
  CHECK_THROWS(run(state, model, 1000, bad, {}, color, noise));
  std::vector<long> beyond = {2000};
  CHECK_THROWS(run(state, model, 1000, beyond, {}, color, noise));
}

TEST_CASE("geometric checkpoint ladder") {
  std::vector<long> cps = geometric_checkpoints(1000, 2.0, 1000000);
  REQUIRE(cps.size() >= 3);
  CHECK(cps.front() == 1000);
  CHECK(cps.back() == 1000000);
  for (std::size_t i = 1; i < cps.size(); ++i) CHECK(cps[i] > cps[i - 1]);
  CHECK(cps[1] == 2000);
  CHECK(cps[2] == 4000);
}
