#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fncohom/element.hpp"

namespace fncohom {

/// The four spaces of the fibration: base B = Conf(R^d, m), total space
/// E = Conf(R^d, m+n), fiber X = Conf(R^d minus m points, n), and E x_B E.
enum class Space : std::uint8_t { Base, Total, Fiber, Pair };

std::string to_string(Space s);
Space space_from_string(std::string_view s);

/// Basis test.  A monomial is basic iff, within each copy, no two factors
/// share an upper index j.  (Primed factors have j > m by normalization.)
bool is_basis_monomial(const AlgebraContext& ctx, const Monomial& mono);

/// Normal form: the unique combination of basis monomials equal to e.
///
/// Rewrites the largest repeated upper index first (unprimed copy on ties,
/// smallest lower indices first) with
///   w_{a,j} w_{b,j} = w_{a,b} w_{b,j} - w_{a,b} w_{a,j},   a < b < j,
/// in either copy.  Both right-hand monomials are smaller in the Monomial
/// order, so monomials are processed largest-first and each exactly once.
Element reduce(const AlgebraContext& ctx, const Element& e);

/// The relation w_{a,b}w_{a,c} - w_{a,b}w_{b,c} + w_{a,c}w_{b,c} in the given
/// copy (after normalization of primed classes with upper index <= m).
Element relation_instance(const AlgebraContext& ctx, Copy copy, int a, int b, int c);

/// One rewrite step: the reducer added coeff * relation(copy; a, b, c) * multiplier.
struct RelationApplication {
  Copy copy;
  int a;
  int b;
  int c;
  Monomial multiplier;
  Integer coeff;
};

struct TracedReduction {
  Element result;
  std::vector<RelationApplication> steps;
};

/// reduce() that also records every applied relation, so that
/// result == e + sum(coeff * relation * multiplier) can be checked.
TracedReduction reduce_traced(const AlgebraContext& ctx, const Element& e);

struct AdmissibleSequence {
  std::vector<int> indices;
  int distinct = 0;  // number of distinct entries

  friend bool operator==(const AdmissibleSequence&, const AdmissibleSequence&) = default;
};

/// All J-admissible sequences, lexicographically sorted; there are 2^(|J|-1).
std::vector<AdmissibleSequence> admissible_sequences(std::span<const int> J);

/// Closed-form basis expansion of the column product w_{j1,r} ... w_{jl,r}:
///   (-1)^l sum_I (-1)^{d_I} w_{i1,j2} w_{i2,j3} ... w_{i(l-1),jl} w_{il,r}
/// over J-admissible I, in the requested copy.
Element expand_constant_column(const AlgebraContext& ctx, std::span<const int> J, int r, Copy copy);

/// Basis monomials with exactly `step` factors, in canonical order.
std::vector<Monomial> basis_enumerate(const AlgebraContext& ctx, int step);

/// Betti numbers indexed by degree step (powers of t^(d-1)).
struct PoincarePolynomial {
  std::vector<std::uint64_t> coefficients;

  std::uint64_t at(int step) const {
    return step >= 0 && static_cast<std::size_t>(step) < coefficients.size() ? coefficients[static_cast<std::size_t>(step)]
                                                                             : 0;
  }
  /// Highest step with a nonzero coefficient.
  int top_step() const;
  std::uint64_t total() const;

  friend bool operator==(const PoincarePolynomial&, const PoincarePolynomial&) = default;
};

PoincarePolynomial operator*(const PoincarePolynomial& a, const PoincarePolynomial& b);

/// Closed products: B = prod_{k<m}(1+kt), E = prod_{k<m+n}(1+kt),
/// X = prod_{k=m}^{m+n-1}(1+kt), E x_B E = P_B * P_X^2.
PoincarePolynomial poincare_polynomial(int m, int n, Space space);
PoincarePolynomial poincare_polynomial(const AlgebraContext& ctx, Space space);

}  // namespace fncohom
