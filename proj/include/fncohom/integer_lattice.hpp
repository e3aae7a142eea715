#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

namespace fncohom {

using SparseRow = std::vector<std::pair<int, mpz_class>>;

/// Rank and invariant factors of the row lattice of an integer matrix.
struct LatticeSummary {
  int rank = 0;
  /// Invariant factors d_1 | d_2 | ... (positive, one per rank).
  std::vector<mpz_class> invariant_factors;

  /// True when every invariant factor is 1, i.e. Z^cols / rows is free.
  bool torsion_free() const;
};

/// Smith normal form diagonal of the matrix with the given sparse rows.
/// Dense mpz elimination; meant for the small residual systems left over by
/// the oracle's pivoting pass.
LatticeSummary smith_summary(const std::vector<SparseRow>& rows, int ncols);

/// Rank over Q.
int rational_rank(const std::vector<SparseRow>& rows, int ncols);

/// Solves sum_k x_k * columns[k] = rhs over Q.  Vectors are sparse with
/// entries in [0, nrows).  nullopt when the system is inconsistent or the
/// columns are dependent (the solution would not be unique).
std::optional<std::vector<mpq_class>> solve_rational(const std::vector<SparseRow>& columns, const SparseRow& rhs,
                                                     int nrows);

}  // namespace fncohom
