#include "fncohom/normal_form.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include <fmt/format.h>

namespace fncohom {

std::string to_string(Space s) {
  switch (s) {
    case Space::Base:
      return "B";
    case Space::Total:
      return "E";
    case Space::Fiber:
      return "X";
    case Space::Pair:
      return "EXBE";
  }
  return "?";
}

Space space_from_string(std::string_view s) {
  if (s == "B") return Space::Base;
  if (s == "E") return Space::Total;
  if (s == "X") return Space::Fiber;
  if (s == "EXBE") return Space::Pair;
  throw ParameterError(fmt::format("unknown space '{}' (expected B, E, X or EXBE)", s));
}

bool is_basis_monomial(const AlgebraContext& ctx, const Monomial& mono) {
  // Upper indices fit in 128 bits because m + n is bounded by the generator cap.
  std::uint64_t seen[2][2] = {{0, 0}, {0, 0}};
  bool basic = true;
  mono.for_each([&](GenIndex g) {
    const Generator& gen = ctx.generator(g);
    const int c = gen.copy == Copy::Unprimed ? 0 : 1;
    std::uint64_t& word = seen[c][gen.j / 64];
    const std::uint64_t bit = std::uint64_t{1} << (gen.j % 64);
    if (word & bit) basic = false;
    word |= bit;
  });
  return basic;
}

Element relation_instance(const AlgebraContext& ctx, Copy copy, int a, int b, int c) {
  if (!(a < b && b < c)) throw ParameterError(fmt::format("relation needs a < b < c (got {},{},{})", a, b, c));
  auto gen = [&](int i, int j) { return Element::generator(ctx, copy, i, j); };
  Element r = multiply(ctx, gen(a, b), gen(a, c));
  r = subtract(ctx, r, multiply(ctx, gen(a, b), gen(b, c)));
  return add(ctx, r, multiply(ctx, gen(a, c), gen(b, c)));
}

namespace {

struct RewriteSite {
  GenIndex lo;  // w_{a,j}
  GenIndex hi;  // w_{b,j}
};

// Largest repeated upper index in either copy; unprimed wins ties, and the
// two smallest lower indices are taken.
std::optional<RewriteSite> find_rewrite(const AlgebraContext& ctx, const Monomial& mono) {
  std::optional<RewriteSite> best;
  int best_j = 0;
  GenIndex prev = -1;
  mono.for_each([&](GenIndex g) {
    if (prev >= 0) {
      const Generator& p = ctx.generator(prev);
      const Generator& q = ctx.generator(g);
      // Factors ascend by (copy, j, i): a run of equal (copy, j) is contiguous
      // and its first pair holds the two smallest lower indices.
      if (p.copy == q.copy && p.j == q.j && q.j > best_j) {
        best_j = q.j;
        best = RewriteSite{prev, g};
      }
    }
    prev = g;
  });
  return best;
}

template <class OnStep>
Element reduce_impl(const AlgebraContext& ctx, const Element& e, OnStep&& on_step) {
  require_context(ctx, e);
  const bool anti = ctx.anticommuting();
  std::map<Monomial, Integer> work;
  for (const Term& t : e.terms()) work.emplace(t.mono, t.coeff);

  std::vector<Term> out;
  while (!work.empty()) {
    auto it = std::prev(work.end());
    const Monomial mono = it->first;
    Integer coeff = std::move(it->second);
    work.erase(it);
    if (coeff == 0) continue;

    const auto site = find_rewrite(ctx, mono);
    if (!site) {
      out.push_back({mono, std::move(coeff)});
      continue;
    }
    const Generator ga = ctx.generator(site->lo);
    const Generator gb = ctx.generator(site->hi);
    const Monomial rest = mono.without(site->lo).without(site->hi);
    // mono = eps * (w_{a,j} w_{b,j}) * rest
    int eps = 1;
    if (anti && ((rest.count_below(site->lo) + rest.count_below(site->hi)) & 1)) eps = -1;
    const Integer c = eps > 0 ? coeff : Integer(-coeff);
    on_step(ga.copy, ga.i, gb.i, ga.j, rest, Integer(-c));

    const GenIndex gab = ctx.index(ga.copy, ga.i, gb.i);
    auto push = [&](GenIndex second, int sign) {
      auto head = concatenate(Monomial::of(gab), Monomial::of(second), anti);
      if (!head) return;
      auto full = concatenate(head->mono, rest, anti);
      if (!full) return;
      Integer& slot = work[full->mono];
      if (sign * head->sign * full->sign > 0)
        slot += c;
      else
        slot -= c;
      if (slot == 0) work.erase(full->mono);
    };
    push(site->hi, +1);  // + w_{a,b} w_{b,j} rest
    push(site->lo, -1);  // - w_{a,b} w_{a,j} rest
  }
  return Element::from_terms(ctx, std::move(out));
}

}  // namespace

Element reduce(const AlgebraContext& ctx, const Element& e) {
  return reduce_impl(ctx, e, [](Copy, int, int, int, const Monomial&, Integer&&) {});
}

TracedReduction reduce_traced(const AlgebraContext& ctx, const Element& e) {
  std::vector<RelationApplication> steps;
  Element result = reduce_impl(ctx, e, [&](Copy copy, int a, int b, int c, const Monomial& rest, Integer&& k) {
    steps.push_back({copy, a, b, c, rest, std::move(k)});
  });
  return {std::move(result), std::move(steps)};
}

std::vector<AdmissibleSequence> admissible_sequences(std::span<const int> J) {
  if (J.empty()) throw ParameterError("admissible sequences need a nonempty J");
  for (std::size_t k = 1; k < J.size(); ++k)
    if (J[k] <= J[k - 1]) throw ParameterError("J must be strictly increasing");

  std::vector<std::vector<int>> level{{J[0]}};
  for (std::size_t k = 1; k < J.size(); ++k) {
    std::vector<std::vector<int>> next;
    next.reserve(level.size() * 2);
    for (const auto& prefix : level) {
      // Appending i_{l-1} or j_l keeps the sequence nondecreasing.
      auto repeat = prefix;
      repeat.push_back(prefix.back());
      next.push_back(std::move(repeat));
      auto jump = prefix;
      jump.push_back(J[k]);
      next.push_back(std::move(jump));
    }
    level = std::move(next);
  }
  std::sort(level.begin(), level.end());

  std::vector<AdmissibleSequence> out;
  out.reserve(level.size());
  for (auto& seq : level) {
    std::vector<int> copy = seq;
    const int d = static_cast<int>(std::unique(copy.begin(), copy.end()) - copy.begin());
    out.push_back({std::move(seq), d});
  }
  return out;
}

Element expand_constant_column(const AlgebraContext& ctx, std::span<const int> J, int r, Copy copy) {
  if (J.empty()) throw ParameterError("J must be nonempty");
  if (J.front() < 1) throw ParameterError("J entries must be >= 1");
  if (r <= J.back()) throw ParameterError(fmt::format("r = {} must exceed max(J) = {}", r, J.back()));
  if (r > ctx.points()) throw ParameterError(fmt::format("r = {} exceeds m+n = {}", r, ctx.points()));
  const auto seqs = admissible_sequences(J);
  const std::size_t len = J.size();
  const bool anti = ctx.anticommuting();

  std::vector<Term> terms;
  terms.reserve(seqs.size());
  std::unordered_set<Monomial> seen;
  for (const auto& I : seqs) {
    SignedMonomial prod;
    bool vanished = false;
    for (std::size_t k = 0; k < len && !vanished; ++k) {
      const int upper = k + 1 < len ? J[k + 1] : r;
      auto p = concatenate(prod.mono, Monomial::of(ctx.index(copy, I.indices[k], upper)), anti);
      if (!p) {
        vanished = true;
        break;
      }
      prod.mono = p->mono;
      prod.sign *= p->sign;
    }
    if (vanished) throw std::logic_error("admissible product repeated a generator");
    if (!seen.insert(prod.mono).second) throw std::logic_error("admissible expansion produced a repeated monomial");
    const int exponent = static_cast<int>(len) + I.distinct;
    terms.push_back({prod.mono, Integer((exponent % 2 == 0 ? 1 : -1) * prod.sign)});
  }
  return Element::from_terms(ctx, std::move(terms));
}

std::vector<Monomial> basis_enumerate(const AlgebraContext& ctx, int step) {
  if (step < 0) throw ParameterError("degree step must be nonnegative");
  // One slot per (copy, upper index); each slot holds at most one factor.
  struct Slot {
    Copy copy;
    int j;
  };
  std::vector<Slot> slots;
  for (int j = 2; j <= ctx.points(); ++j) slots.push_back({Copy::Unprimed, j});
  if (ctx.mode() == RingMode::TwoCopy)
    for (int j = ctx.m() + 1; j <= ctx.points(); ++j) slots.push_back({Copy::Primed, j});

  std::vector<Monomial> out;
  if (step > static_cast<int>(slots.size())) return out;
  auto rec = [&](auto&& self, std::size_t k, int remaining, Monomial acc) -> void {
    if (remaining == 0) {
      out.push_back(acc);
      return;
    }
    if (slots.size() - k < static_cast<std::size_t>(remaining)) return;
    self(self, k + 1, remaining, acc);
    const Slot& s = slots[k];
    for (int i = 1; i < s.j; ++i) self(self, k + 1, remaining - 1, acc.with(ctx.index_of({s.copy, i, s.j})));
  };
  rec(rec, 0, step, Monomial{});
  std::sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

int PoincarePolynomial::top_step() const {
  for (int k = static_cast<int>(coefficients.size()) - 1; k >= 0; --k)
    if (coefficients[static_cast<std::size_t>(k)] != 0) return k;
  return -1;
}

std::uint64_t PoincarePolynomial::total() const {
  std::uint64_t s = 0;
  for (auto c : coefficients) s += c;
  return s;
}

PoincarePolynomial operator*(const PoincarePolynomial& a, const PoincarePolynomial& b) {
  PoincarePolynomial out;
  if (a.coefficients.empty() || b.coefficients.empty()) return out;
  out.coefficients.assign(a.coefficients.size() + b.coefficients.size() - 1, 0);
  for (std::size_t x = 0; x < a.coefficients.size(); ++x)
    for (std::size_t y = 0; y < b.coefficients.size(); ++y) out.coefficients[x + y] += a.coefficients[x] * b.coefficients[y];
  return out;
}

namespace {

PoincarePolynomial linear_product(int from, int to) {
  PoincarePolynomial p{{1}};
  for (int k = from; k <= to; ++k) p = p * PoincarePolynomial{{1, static_cast<std::uint64_t>(k)}};
  return p;
}

}  // namespace

PoincarePolynomial poincare_polynomial(int m, int n, Space space) {
  if (m < 1 || n < 1) throw ParameterError("poincare polynomial needs m >= 1 and n >= 1");
  switch (space) {
    case Space::Base:
      return linear_product(1, m - 1);
    case Space::Total:
      return linear_product(1, m + n - 1);
    case Space::Fiber:
      return linear_product(m, m + n - 1);
    case Space::Pair: {
      const auto x = linear_product(m, m + n - 1);
      return linear_product(1, m - 1) * x * x;
    }
  }
  throw ParameterError("unknown space");
}

PoincarePolynomial poincare_polynomial(const AlgebraContext& ctx, Space space) {
  return poincare_polynomial(ctx.m(), ctx.n(), space);
}

}  // namespace fncohom
