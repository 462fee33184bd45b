#include <doctest.h>

#include <cmath>
#include <vector>

#include "dps/rng.hpp"

using namespace dps;

TEST_CASE("counter rng is deterministic and seekable") {
  CounterRng a(42, 7, StreamRole::ColorUniform);
  CounterRng b(42, 7, StreamRole::ColorUniform);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  CounterRng c(42, 7, StreamRole::ColorUniform);
  c.seek(50);
  a.seek(50);
  CHECK(a.next_u64() == c.next_u64());
}

TEST_CASE("streams with different keys are distinct") {
  CounterRng color(42, 7, StreamRole::ColorUniform);
  CounterRng noise(42, 7, StreamRole::NoiseUniform);
  CounterRng other(42, 8, StreamRole::ColorUniform);
  CounterRng reseed(43, 7, StreamRole::ColorUniform);
  int equal = 0;
  for (int i = 0; i < 1000; ++i) {
    auto v = color.next_u64();
    if (v == noise.next_u64()) ++equal;
    if (v == other.next_u64()) ++equal;
    if (v == reseed.next_u64()) ++equal;
  }
  CHECK(equal == 0);
}

TEST_CASE("uniforms look uniform") {
  CounterRng rng(123, 0, StreamRole::ColorUniform);
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0;
  int below_half = 0;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum2 += u * u;
    if (u < 0.5) ++below_half;
  }
  double mean = sum / n;
  double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(var - 1.0 / 12.0) < 0.002);
  CHECK(std::abs(below_half / double(n) - 0.5) < 4.0 * 0.5 / std::sqrt(double(n)));
}

TEST_CASE("successive replicate streams are uncorrelated") {
  const int pairs = 2000;
  double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
  for (int r = 0; r < pairs; ++r) {
    double x = CounterRng(99, r, StreamRole::ColorUniform).uniform();
    double y = CounterRng(99, r + 1, StreamRole::ColorUniform).uniform();
    sx += x;
    sy += y;
    sxy += x * y;
    sxx += x * x;
    syy += y * y;
  }
  double n = pairs;
  double rho = (n * sxy - sx * sy) /
               std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
  CHECK(std::abs(rho) < 4.0 / std::sqrt(n));
}
