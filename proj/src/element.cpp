#include "fncohom/element.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace fncohom {

void require_context(const AlgebraContext& ctx, const Element& e) {
  const ContextKey& k = e.key();
  if (k != ctx.key()) {
    throw ContextMismatch(fmt::format("element over (m={}, n={}, d={}, {}) used with context (m={}, n={}, d={}, {})",
                                      k.m, k.n, k.d, to_string(k.mode), ctx.m(), ctx.n(), ctx.d(),
                                      to_string(ctx.mode())));
  }
}

Element Element::monomial(const AlgebraContext& ctx, const Monomial& mono, const Integer& coeff) {
  Element e(ctx);
  if (!mono.empty() && mono.highest() >= ctx.generator_count())
    throw GeneratorError("monomial references a generator outside the context");
  if (coeff != 0) e.terms_.push_back({mono, coeff});
  return e;
}

Element Element::generator(const AlgebraContext& ctx, const Generator& g) {
  return monomial(ctx, Monomial::of(ctx.index_of(ctx.make_generator(g.copy, g.i, g.j))));
}

Element Element::generator(const AlgebraContext& ctx, Copy copy, int i, int j) {
  return generator(ctx, Generator{copy, i, j});
}

Element Element::from_terms(const AlgebraContext& ctx, std::vector<Term> terms) {
  TermAccumulator acc;
  for (const Term& t : terms) {
    if (!t.mono.empty() && t.mono.highest() >= ctx.generator_count())
      throw GeneratorError("monomial references a generator outside the context");
    acc.add(t.mono, t.coeff);
  }
  return std::move(acc).finish(ctx);
}

Integer Element::coefficient(const Monomial& mono) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mono,
                             [](const Term& t, const Monomial& m) { return CanonicalLess{}(t.mono, m); });
  if (it != terms_.end() && it->mono == mono) return it->coeff;
  return 0;
}

std::optional<int> Element::homogeneous_step() const {
  if (terms_.empty()) return std::nullopt;
  const int s = terms_.front().mono.size();
  // Sorted by size first, so the last term decides.
  if (terms_.back().mono.size() != s) return std::nullopt;
  return s;
}

void TermAccumulator::add(const Monomial& mono, const Integer& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(mono, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

void TermAccumulator::add(const Monomial& mono, const Integer& coeff, int sign) {
  if (sign >= 0)
    add(mono, coeff);
  else
    add(mono, Integer(-coeff));
}

Element TermAccumulator::finish(const AlgebraContext& ctx) && {
  Element e(ctx);
  e.terms_.reserve(terms_.size());
  for (auto& [mono, coeff] : terms_) e.terms_.push_back({mono, std::move(coeff)});
  terms_.clear();
  return e;
}

Element add(const AlgebraContext& ctx, const Element& a, const Element& b) {
  require_context(ctx, a);
  require_context(ctx, b);
  TermAccumulator acc;
  for (const Term& t : a.terms()) acc.add(t.mono, t.coeff);
  for (const Term& t : b.terms()) acc.add(t.mono, t.coeff);
  return std::move(acc).finish(ctx);
}

Element subtract(const AlgebraContext& ctx, const Element& a, const Element& b) {
  return add(ctx, a, negate(ctx, b));
}

Element negate(const AlgebraContext& ctx, const Element& a) { return scale(ctx, a, -1); }

Element scale(const AlgebraContext& ctx, const Element& a, const Integer& k) {
  require_context(ctx, a);
  std::vector<Term> terms;
  if (k != 0) {
    terms.reserve(a.size());
    for (const Term& t : a.terms()) terms.push_back({t.mono, t.coeff * k});
  }
  return Element::from_terms(ctx, std::move(terms));
}

Element multiply(const AlgebraContext& ctx, const Element& a, const Element& b) {
  require_context(ctx, a);
  require_context(ctx, b);
  const bool anti = ctx.anticommuting();
  TermAccumulator acc;
  Integer prod;
  for (const Term& x : a.terms()) {
    for (const Term& y : b.terms()) {
      auto p = concatenate(x.mono, y.mono, anti);
      if (!p) continue;
      prod = x.coeff * y.coeff;
      acc.add(p->mono, prod, p->sign);
    }
  }
  return std::move(acc).finish(ctx);
}

}  // namespace fncohom
