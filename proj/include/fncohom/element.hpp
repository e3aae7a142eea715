#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <vector>

#include "fncohom/context.hpp"
#include "fncohom/monomial.hpp"

namespace fncohom {

using Integer = mpz_class;

struct Term {
  Monomial mono;
  Integer coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Finite Z-linear combination of monomials.  Terms are kept sorted in
/// CanonicalLess order with no zero coefficients, so structural equality is
/// ring-element equality of the (unreduced) representation.
class Element {
 public:
  /// Zero that belongs to no context; only useful as a placeholder.
  Element() = default;
  explicit Element(const AlgebraContext& ctx) : key_(ctx.key()) {}

  static Element zero(const AlgebraContext& ctx) { return Element(ctx); }
  static Element one(const AlgebraContext& ctx) { return monomial(ctx, Monomial{}); }
  static Element monomial(const AlgebraContext& ctx, const Monomial& mono, const Integer& coeff = 1);
  static Element generator(const AlgebraContext& ctx, const Generator& g);
  static Element generator(const AlgebraContext& ctx, Copy copy, int i, int j);
  /// Sums duplicate monomials and drops zeros.
  static Element from_terms(const AlgebraContext& ctx, std::vector<Term> terms);

  const ContextKey& key() const { return key_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Integer coefficient(const Monomial& mono) const;

  /// Common number of factors when every term has the same count.
  std::optional<int> homogeneous_step() const;

  friend bool operator==(const Element&, const Element&) = default;

 private:
  friend class TermAccumulator;
  ContextKey key_;
  std::vector<Term> terms_;
};

/// Collects terms keyed by monomial and emits a canonical Element.
class TermAccumulator {
 public:
  void add(const Monomial& mono, const Integer& coeff);
  void add(const Monomial& mono, const Integer& coeff, int sign);
  Element finish(const AlgebraContext& ctx) &&;

 private:
  std::map<Monomial, Integer, CanonicalLess> terms_;
};

Element add(const AlgebraContext& ctx, const Element& a, const Element& b);
Element subtract(const AlgebraContext& ctx, const Element& a, const Element& b);
Element negate(const AlgebraContext& ctx, const Element& a);
Element scale(const AlgebraContext& ctx, const Element& a, const Integer& k);

/// Signed graded product; no basis reduction.  Repeated generators give 0;
/// for even d each transposition of factors contributes a sign.
Element multiply(const AlgebraContext& ctx, const Element& a, const Element& b);

/// Throws ContextMismatch unless e was built over ctx.
void require_context(const AlgebraContext& ctx, const Element& e);

}  // namespace fncohom
