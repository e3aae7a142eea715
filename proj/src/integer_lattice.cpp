#include "fncohom/integer_lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace fncohom {

bool LatticeSummary::torsion_free() const {
  return std::all_of(invariant_factors.begin(), invariant_factors.end(), [](const mpz_class& d) { return d == 1; });
}

namespace {

using Dense = std::vector<std::vector<mpz_class>>;

Dense densify(const std::vector<SparseRow>& rows, int ncols) {
  Dense a(rows.size(), std::vector<mpz_class>(static_cast<std::size_t>(ncols)));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) {
      if (c < 0 || c >= ncols) throw std::out_of_range("sparse row column out of range");
      a[r][static_cast<std::size_t>(c)] += v;
    }
  return a;
}

}  // namespace

LatticeSummary smith_summary(const std::vector<SparseRow>& rows, int ncols) {
  Dense a = densify(rows, ncols);
  const std::size_t nr = a.size();
  const std::size_t nc = static_cast<std::size_t>(ncols);
  std::vector<mpz_class> diag;
  mpz_class q, tmp;

  for (std::size_t t = 0; t < std::min(nr, nc); ++t) {
    for (;;) {
      // Smallest nonzero magnitude in the trailing block becomes the pivot.
      std::size_t pr = nr, pc = nc;
      for (std::size_t r = t; r < nr; ++r)
        for (std::size_t c = t; c < nc; ++c)
          if (a[r][c] != 0 && (pr == nr || abs(a[r][c]) < abs(a[pr][pc]))) {
            pr = r;
            pc = c;
          }
      if (pr == nr) goto done;
      std::swap(a[t], a[pr]);
      if (pc != t)
        for (auto& row : a) std::swap(row[t], row[pc]);

      bool clean = true;
      for (std::size_t r = t + 1; r < nr; ++r) {
        if (a[r][t] == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a[r][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t c = t; c < nc; ++c)
          if (a[t][c] != 0) {
            tmp = q * a[t][c];
            a[r][c] -= tmp;
          }
        if (a[r][t] != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < nc; ++c) {
        if (a[t][c] == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a[t][c].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t r = t; r < nr; ++r)
          if (a[r][t] != 0) {
            tmp = q * a[r][t];
            a[r][c] -= tmp;
          }
        if (a[t][c] != 0) clean = false;
      }
      if (clean) break;
    }
    diag.push_back(abs(a[t][t]));
  }
done:
  // Diagonal to Smith form: replace (a, b) by (gcd, lcm) until divisibility holds.
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      mpz_class g = gcd(diag[i], diag[j]);
      mpz_class l = lcm(diag[i], diag[j]);
      diag[i] = g;
      diag[j] = l;
    }
  LatticeSummary out;
  out.rank = static_cast<int>(diag.size());
  out.invariant_factors = std::move(diag);
  return out;
}

int rational_rank(const std::vector<SparseRow>& rows, int ncols) {
  // Fraction-free (Bareiss-style) elimination keeps everything in Z.
  Dense a = densify(rows, ncols);
  const std::size_t nr = a.size();
  const std::size_t nc = static_cast<std::size_t>(ncols);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < nc && rank < nr; ++c) {
    std::size_t p = rank;
    while (p < nr && a[p][c] == 0) ++p;
    if (p == nr) continue;
    std::swap(a[rank], a[p]);
    for (std::size_t r = rank + 1; r < nr; ++r) {
      if (a[r][c] == 0) continue;
      const mpz_class f = a[r][c];
      const mpz_class e = a[rank][c];
      for (std::size_t k = c; k < nc; ++k) a[r][k] = a[r][k] * e - a[rank][k] * f;
      mpz_class g = 0;
      for (std::size_t k = c; k < nc; ++k) g = gcd(g, a[r][k]);
      if (g > 1)
        for (std::size_t k = c; k < nc; ++k) mpz_divexact(a[r][k].get_mpz_t(), a[r][k].get_mpz_t(), g.get_mpz_t());
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

std::optional<std::vector<mpq_class>> solve_rational(const std::vector<SparseRow>& columns, const SparseRow& rhs,
                                                     int nrows) {
  const std::size_t k = columns.size();
  const std::size_t nr = static_cast<std::size_t>(nrows);
  // Augmented matrix [A | rhs], rows = coordinates.
  std::vector<std::vector<mpq_class>> a(nr, std::vector<mpq_class>(k + 1));
  for (std::size_t c = 0; c < k; ++c)
    for (const auto& [r, v] : columns[c]) a.at(static_cast<std::size_t>(r))[c] += v;
  for (const auto& [r, v] : rhs) a.at(static_cast<std::size_t>(r))[k] += v;

  std::vector<std::size_t> pivot_row(k, nr);
  std::size_t row = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = row;
    while (p < nr && a[p][c] == 0) ++p;
    if (p == nr) return std::nullopt;
    std::swap(a[row], a[p]);
    const mpq_class inv = 1 / a[row][c];
    for (std::size_t x = c; x <= k; ++x) a[row][x] *= inv;
    for (std::size_t r = 0; r < nr; ++r) {
      if (r == row || a[r][c] == 0) continue;
      const mpq_class f = a[r][c];
      for (std::size_t x = c; x <= k; ++x) a[r][x] -= f * a[row][x];
    }
    pivot_row[c] = row++;
  }
  for (std::size_t r = row; r < nr; ++r)
    if (a[r][k] != 0) return std::nullopt;
  std::vector<mpq_class> x(k);
  for (std::size_t c = 0; c < k; ++c) x[c] = a[pivot_row[c]][k];
  return x;
}

}  // namespace fncohom
