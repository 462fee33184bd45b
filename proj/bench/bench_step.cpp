// Timing comparison: Fenwick vs linear-scan sampling index on long single
// runs, and replicate throughput single-threaded vs the OpenMP worker pool.

#include <chrono>
#include <cstdio>

#include "dps/experiment.hpp"
#include "dps/rng.hpp"
#include "dps/urn.hpp"
#include "dps/weight_model.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace dps;
namespace chrono = std::chrono;

namespace {

double run_single(IndexKind kind, long steps, long* distinct_out) {
  WeightModel model = WeightModel::constant(1.0);
  UrnState state(1.0, BaseMeasure::uniform01(), kind);
  CounterRng color(2024, 0, StreamRole::ColorUniform);
  CounterRng noise(2024, 0, StreamRole::NoiseUniform);
  auto t0 = chrono::steady_clock::now();
  for (long i = 0; i < steps; ++i) state.step(model, color, noise);
  double s = chrono::duration<double>(chrono::steady_clock::now() - t0).count();
  *distinct_out = state.distinct();
  return s;
}

double run_pool(int threads, int replicates, long n) {
  ExperimentConfig cfg;
  cfg.model.kind = ModelKind::StepSpecies;
  cfg.model.w1 = 1.0;
  cfg.model.w2 = 2.0;
  cfg.model.p = 0.5;
  cfg.n = n;
  cfg.replicates = replicates;
  cfg.oracle_factor = 0;
  cfg.threads = threads;
  cfg.seed = 99;
  auto t0 = chrono::steady_clock::now();
  auto summaries = run_replicates(cfg);
  (void)summaries;
  return chrono::duration<double>(chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  const long steps = 1000000;
  long distinct = 0;
  double fen = run_single(IndexKind::Fenwick, steps, &distinct);
  std::printf("fenwick: %ld steps in %.3f s (%.0f ns/step), L=%ld\n", steps, fen,
              fen / steps * 1e9, distinct);
  double lin = run_single(IndexKind::Linear, steps, &distinct);
  std::printf("linear:  %ld steps in %.3f s (%.0f ns/step), L=%ld\n", steps, lin,
              lin / steps * 1e9, distinct);

  const int reps = 32;
  const long n = 20000;
  double serial = run_pool(1, reps, n);
#ifdef _OPENMP
  int max_threads = omp_get_max_threads();
#else
  int max_threads = 1;
#endif
  double parallel = run_pool(max_threads, reps, n);
  std::printf("pool: %d replicates x %ld steps, 1 thread %.3f s, %d threads %.3f s\n", reps, n,
              serial, max_threads, parallel);
  return 0;
}
