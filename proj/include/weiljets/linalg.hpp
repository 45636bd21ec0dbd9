#pragma once

#include <vector>

#include "weiljets/padic.hpp"

namespace weiljets {

using PadicMatrix = std::vector<std::vector<PadicNumber>>;

/// Entries with valuation >= threshold count as zero ("zero at precision").
bool is_zero_at(const PadicNumber& x, long threshold);

struct Elimination {
  PadicMatrix reduced;             ///< RREF: unit pivots, eliminated above and below
  std::vector<int> pivot_columns;  ///< one per pivot row, increasing
  std::vector<long> pivot_valuations;
  int rank = 0;
};

/**
 * Gaussian elimination over Q_p with valuation pivoting: each sweep picks the
 * remaining entry of minimal valuation so that all multipliers stay in Z_p and
 * precision loss is controlled. Rank is rank at the given precision threshold.
 */
Elimination eliminate(PadicMatrix m, long threshold);

/// Basis of { v : M v == 0 mod p^threshold }; vectors have unit free coordinates.
std::vector<std::vector<PadicNumber>> kernel_basis(const PadicMatrix& m, long threshold);

/// Solves M x = rhs for square M of full rank at the threshold; throws std::domain_error otherwise.
std::vector<PadicNumber> solve_square(const PadicMatrix& m, const std::vector<PadicNumber>& rhs,
                                      long threshold);

}  // namespace weiljets
