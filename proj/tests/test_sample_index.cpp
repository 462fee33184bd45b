#include <doctest.h>

#include <cmath>
#include <vector>

#include "dps/rng.hpp"
#include "dps/sample_index.hpp"

using namespace dps;

namespace {

// Builds both index kinds with the same random masses and some mass updates.
std::pair<SampleIndex, SampleIndex> build_pair(CounterRng& rng, int slots) {
  SampleIndex fen(IndexKind::Fenwick), lin(IndexKind::Linear);
  for (int i = 0; i < slots; ++i) {
    double m = rng.uniform() * 3.0;
    fen.append(m);
    lin.append(m);
  }
  for (int i = 0; i < slots / 2; ++i) {
    std::size_t slot = static_cast<std::size_t>(rng.uniform() * slots);
    double d = rng.uniform();
    fen.add_mass(slot, d);
    lin.add_mass(slot, d);
  }
  return {fen, lin};
}

}  // namespace

TEST_CASE("fenwick matches linear reference slot-for-slot") {
  CounterRng rng(17, 0, StreamRole::ColorUniform);
  for (int trial = 0; trial < 20; ++trial) {
    int slots = 1 + static_cast<int>(rng.uniform() * 100);
    auto [fen, lin] = build_pair(rng, slots);
    CHECK(fen.total() == doctest::Approx(lin.total()).epsilon(1e-12));
    for (int i = 0; i < 2000; ++i) {
      double target = rng.uniform() * lin.total();
      CHECK(fen.sample(target) == lin.sample(target));
    }
  }
}

TEST_CASE("stored total tracks the exact sum") {
  CounterRng rng(18, 0, StreamRole::ColorUniform);
  SampleIndex fen(IndexKind::Fenwick);
  for (int i = 0; i < 5000; ++i) {
    fen.append(rng.uniform());
    if (i % 3 == 0) fen.add_mass(static_cast<std::size_t>(rng.uniform() * fen.size()), 0.5);
  }
  CHECK(std::abs(fen.total() - fen.recompute_total()) / fen.total() < 1e-9);
}

TEST_CASE("sampling frequencies match masses (chi-square)") {
  // 20 independent trials; require the chi-square statistic to stay below the
  // p = 0.001 critical value in every trial.
  CounterRng rng(19, 0, StreamRole::ColorUniform);
  int failures = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int slots = 10;
    std::vector<double> masses;
    SampleIndex fen(IndexKind::Fenwick);
    for (int i = 0; i < slots; ++i) {
      double m = 0.1 + rng.uniform();
      masses.push_back(m);
      fen.append(m);
    }
    const int draws = 50000;
    std::vector<int> counts(slots, 0);
    for (int i = 0; i < draws; ++i)
      ++counts[fen.sample(rng.uniform() * fen.total())];
    double chi2 = 0.0;
    for (int i = 0; i < slots; ++i) {
      double expected = draws * masses[i] / fen.total();
      chi2 += (counts[i] - expected) * (counts[i] - expected) / expected;
    }
    // chi-square critical value, 9 dof, p = 0.001
    if (chi2 > 27.88) ++failures;
  }
  CHECK(failures <= 1);
}

TEST_CASE("boundary targets") {
  SampleIndex fen(IndexKind::Fenwick);
  fen.append(1.0);
  fen.append(2.0);
  fen.append(3.0);
  CHECK(fen.sample(0.0) == 0);
  CHECK(fen.sample(0.999) == 0);
  CHECK(fen.sample(1.0) == 1);
  CHECK(fen.sample(2.999) == 1);
  CHECK(fen.sample(3.0) == 2);
  CHECK(fen.sample(5.999) == 2);
}
