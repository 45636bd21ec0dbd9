#pragma once

#include "weiljets/diophantine.hpp"
#include "weiljets/execution.hpp"
#include "weiljets/power_series.hpp"

namespace weiljets::batch {

using PointSet = std::vector<std::vector<PadicNumber>>;
using JetArgSet = std::vector<std::vector<WeilElement>>;

/**
 * Batch kernels over independent inputs. Every kernel has a serial reference
 * path (Execution::serial) and an OpenMP path (Execution::parallel) that must
 * produce identical values; the benchmark tool compares their throughput.
 * Values are pure and immutable, so the parallel loops share nothing.
 */

std::vector<PadicNumber> eval_many(const PowerSeries& f, const PointSet& points,
                                   Execution exec = Execution::parallel,
                                   EvalCheck check = EvalCheck::certified);

std::vector<WeilElement> lift_many(const PowerSeries& f, const JetArgSet& args,
                                   Execution exec = Execution::parallel,
                                   EvalCheck check = EvalCheck::certified);

std::vector<ResidualReport> residuals_many(const DiophantineSystem& system,
                                           const PointSet& points,
                                           Execution exec = Execution::parallel);

}  // namespace weiljets::batch
