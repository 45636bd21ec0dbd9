#include "weiljets/batch.hpp"

#include <exception>
#include <optional>

namespace weiljets::batch {

namespace {

// Runs the worker over every index, serially or under OpenMP. Exceptions are
// captured per item and the one with the smallest index is rethrown, so both
// paths fail identically.
template <typename Result, typename Worker>
std::vector<Result> run_items(std::size_t count, Execution exec, Worker&& worker) {
  std::vector<std::optional<Result>> staged(count);
  std::vector<std::exception_ptr> errors(count);
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        staged[i] = worker(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < n; ++i) {
      try {
        staged[i] = worker(static_cast<std::size_t>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  for (std::size_t i = 0; i < count; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
  std::vector<Result> out;
  out.reserve(count);
  for (auto& slot : staged) out.push_back(std::move(*slot));
  return out;
}

}  // namespace

std::vector<PadicNumber> eval_many(const PowerSeries& f, const PointSet& points, Execution exec,
                                   EvalCheck check) {
  return run_items<PadicNumber>(points.size(), exec, [&](std::size_t i) {
    return series_eval(f, points[i], check);
  });
}

std::vector<WeilElement> lift_many(const PowerSeries& f, const JetArgSet& args, Execution exec,
                                   EvalCheck check) {
  return run_items<WeilElement>(args.size(), exec, [&](std::size_t i) {
    return lift_series(f, args[i], check);
  });
}

std::vector<ResidualReport> residuals_many(const DiophantineSystem& system,
                                           const PointSet& points, Execution exec) {
  return run_items<ResidualReport>(points.size(), exec, [&](std::size_t i) {
    return evaluate_system(system, points[i]);
  });
}

}  // namespace weiljets::batch
