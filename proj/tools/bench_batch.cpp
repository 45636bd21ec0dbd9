// Throughput comparison of the OpenMP batch kernels against their serial
// reference implementations. Prints one row per workload with the speedup;
// exits nonzero if any parallel result disagrees with the serial one.

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "weiljets/batch.hpp"

using namespace weiljets;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::mt19937_64 rng(0xbe7c4);

PadicNumber random_zp(int vmax = 3) {
  long v = static_cast<long>(rng() % static_cast<unsigned long>(vmax + 1));
  BigInt unit = 0;
  for (int i = 0; i < 20; ++i) unit = unit * 5 + BigInt(rng() % 5);
  if (unit % 5 == 0) unit += 1 + static_cast<long>(rng() % 4);
  return PadicNumber::from_unit(v, unit, 5, 20);
}

bool bench_eval() {
  PowerSeries f(5, 20, 1, 40 + kTailWindow);
  for (unsigned k = 0; k <= 40; ++k)
    f.set_term({k}, PadicNumber::from_integer(static_cast<long>(rng() % 101) - 50, 5, 20));
  batch::PointSet points;
  for (int i = 0; i < 20000; ++i) points.push_back({random_zp()});

  auto t0 = Clock::now();
  auto serial = batch::eval_many(f, points, Execution::serial, EvalCheck::unchecked);
  double ts = seconds_since(t0);
  t0 = Clock::now();
  auto parallel = batch::eval_many(f, points, Execution::parallel, EvalCheck::unchecked);
  double tp = seconds_since(t0);

  bool ok = serial.size() == parallel.size();
  for (std::size_t i = 0; ok && i < serial.size(); ++i) ok = serial[i] == parallel[i];
  std::printf("%-34s %8.3fs %8.3fs %7.2fx  %s\n", "series_eval x 20000", ts, tp, ts / tp,
              ok ? "match" : "MISMATCH");
  return ok;
}

bool bench_residuals() {
  PowerSeries f(5, 20, 3, 6), g(5, 20, 3, 6), h(5, 20, 3, 6);
  auto c = [&](long v) { return PadicNumber::from_integer(v, 5, 20); };
  f.set_term({2, 0, 0}, c(1));
  f.set_term({0, 2, 0}, c(1));
  f.set_term({0, 0, 2}, c(1));
  f.set_term({0, 0, 0}, c(-3));
  g.set_term({1, 1, 0}, c(2));
  g.set_term({0, 0, 1}, c(-2));
  h.set_term({1, 0, 1}, c(1));
  h.set_term({0, 1, 0}, c(-1));
  auto system = DiophantineSystem::create(5, 20, 3, {f, g, h});

  batch::PointSet points;
  for (int i = 0; i < 10000; ++i) points.push_back({random_zp(), random_zp(), random_zp()});

  auto t0 = Clock::now();
  auto serial = batch::residuals_many(system, points, Execution::serial);
  double ts = seconds_since(t0);
  t0 = Clock::now();
  auto parallel = batch::residuals_many(system, points, Execution::parallel);
  double tp = seconds_since(t0);

  bool ok = serial.size() == parallel.size();
  for (std::size_t i = 0; ok && i < serial.size(); ++i)
    ok = serial[i].valuations == parallel[i].valuations;
  std::printf("%-34s %8.3fs %8.3fs %7.2fx  %s\n", "system residuals x 10000", ts, tp, ts / tp,
              ok ? "match" : "MISMATCH");
  return ok;
}

bool bench_associativity() {
  auto algebra = WeilAlgebra::jet_algebra(5, 20, 13);  // dim 14 table
  const auto& constants = algebra->constants();

  auto t0 = Clock::now();
  auto serial = associativity_witness(constants, algebra->dim(), 20, Execution::serial);
  double ts = seconds_since(t0);
  t0 = Clock::now();
  auto parallel = associativity_witness(constants, algebra->dim(), 20, Execution::parallel);
  double tp = seconds_since(t0);

  bool ok = serial == parallel;
  std::printf("%-34s %8.3fs %8.3fs %7.2fx  %s\n", "associativity sweep (dim 14)", ts, tp,
              ts / tp, ok ? "match" : "MISMATCH");
  return ok;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled; both paths run serially\n");
#endif
  std::printf("%-34s %9s %9s %8s\n", "workload", "serial", "parallel", "speedup");
  bool ok = bench_eval();
  ok = bench_residuals() && ok;
  ok = bench_associativity() && ok;
  return ok ? 0 : 1;
}
