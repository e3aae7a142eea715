#include <doctest.h>

#include <random>
#include <set>

#include "fncohom/normal_form.hpp"
#include "fncohom/sampling.hpp"
#include "fncohom/serialize.hpp"

using namespace fncohom;

namespace {

Element gen(const AlgebraContext& ctx, Copy c, int i, int j) { return Element::generator(ctx, c, i, j); }

Element column_product(const AlgebraContext& ctx, const std::vector<int>& J, int r, Copy copy) {
  Element e = Element::one(ctx);
  for (int j : J) e = multiply(ctx, e, gen(ctx, copy, j, r));
  return e;
}

bool all_basic(const AlgebraContext& ctx, const Element& e) {
  for (const auto& t : e.terms())
    if (!is_basis_monomial(ctx, t.mono)) return false;
  return true;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

TEST_CASE("basis test") {
  AlgebraContext ctx(2, 1, 2, RingMode::TwoCopy);
  const auto w = [&](int i, int j) { return ctx.index(Copy::Unprimed, i, j); };
  CHECK(is_basis_monomial(ctx, Monomial::of({w(1, 2), w(1, 3)})));
  CHECK_FALSE(is_basis_monomial(ctx, Monomial::of({w(1, 3), w(2, 3)})));
  CHECK(is_basis_monomial(ctx, Monomial{}));
  // different copies may share an upper index
  CHECK(is_basis_monomial(ctx, Monomial::of({w(1, 3), ctx.index(Copy::Primed, 2, 3)})));
}

TEST_CASE("reduce examples") {
  AlgebraContext ctx(2, 1, 2, RingMode::TwoCopy);
  const Element lhs = multiply(ctx, gen(ctx, Copy::Unprimed, 1, 3), gen(ctx, Copy::Unprimed, 2, 3));
  const Element rhs = subtract(ctx, multiply(ctx, gen(ctx, Copy::Unprimed, 1, 2), gen(ctx, Copy::Unprimed, 2, 3)),
                               multiply(ctx, gen(ctx, Copy::Unprimed, 1, 2), gen(ctx, Copy::Unprimed, 1, 3)));
  CHECK(reduce(ctx, lhs) == rhs);

  for (int step = 0; step <= 3; ++step)
    for (const Monomial& b : basis_enumerate(ctx, step)) CHECK(reduce(ctx, Element::monomial(ctx, b)) == Element::monomial(ctx, b));

  const Element psi = multiply(ctx, subtract(ctx, gen(ctx, Copy::Unprimed, 1, 3), gen(ctx, Copy::Primed, 1, 3)),
                               subtract(ctx, gen(ctx, Copy::Unprimed, 2, 3), gen(ctx, Copy::Primed, 2, 3)));
  const Element r = reduce(ctx, psi);
  CHECK(r.size() == 6);
  for (const auto& t : r.terms()) CHECK(abs(t.coeff) == 1);
  const Monomial witness = Monomial::of({ctx.index(Copy::Unprimed, 1, 2), ctx.index(Copy::Unprimed, 1, 3)});
  CHECK(abs(r.coefficient(witness)) == 1);
}

TEST_CASE("relation instances reduce to zero") {
  for (int d : {2, 3}) {
    AlgebraContext ctx(2, 3, d, RingMode::TwoCopy);
    for (Copy copy : {Copy::Unprimed, Copy::Primed})
      for (int c = 3; c <= 5; ++c)
        for (int b = 2; b < c; ++b)
          for (int a = 1; a < b; ++a) {
            CHECK(reduce(ctx, relation_instance(ctx, copy, a, b, c)).is_zero());
          }
  }
}

TEST_CASE("traced reduction is a sum of relation multiples") {
  std::mt19937_64 rng(99);
  for (auto [m, n] : {std::pair{2, 1}, {2, 2}, {3, 2}, {1, 4}}) {
    for (int d : {2, 3}) {
      AlgebraContext ctx(m, n, d, RingMode::TwoCopy);
      for (int trial = 0; trial < 30; ++trial) {
        const Element e = random_homogeneous(ctx, 5, rng);
        const TracedReduction tr = reduce_traced(ctx, e);
        CHECK(tr.result == reduce(ctx, e));
        CHECK(all_basic(ctx, tr.result));
        Element rebuilt = e;
        for (const auto& s : tr.steps) {
          const Element rel = relation_instance(ctx, s.copy, s.a, s.b, s.c);
          const Element piece = multiply(ctx, rel, Element::monomial(ctx, s.multiplier, s.coeff));
          rebuilt = add(ctx, rebuilt, piece);
        }
        CHECK(rebuilt == tr.result);
      }
    }
  }
}

TEST_CASE("reduce is idempotent and linear") {
  std::mt19937_64 rng(3);
  for (int d : {2, 3}) {
    AlgebraContext ctx(3, 2, d, RingMode::TwoCopy);
    for (int trial = 0; trial < 50; ++trial) {
      const int step = 1 + trial % 4;
      const Element x = random_homogeneous(ctx, step, 6, rng);
      const Element y = random_homogeneous(ctx, step, 6, rng);
      const Element rx = reduce(ctx, x);
      CHECK(reduce(ctx, rx) == rx);
      CHECK(reduce(ctx, add(ctx, x, y)) == add(ctx, rx, reduce(ctx, y)));
      CHECK(reduce(ctx, scale(ctx, x, -7)) == scale(ctx, rx, -7));
    }
  }
}

TEST_CASE("reduction respects products") {
  // reduce(x*y) == reduce(reduce(x)*reduce(y))
  std::mt19937_64 rng(8);
  AlgebraContext ctx(2, 3, 2, RingMode::TwoCopy);
  for (int trial = 0; trial < 40; ++trial) {
    const Element x = random_homogeneous(ctx, 2, 4, rng);
    const Element y = random_homogeneous(ctx, 2, 4, rng);
    CHECK(reduce(ctx, multiply(ctx, x, y)) == reduce(ctx, multiply(ctx, reduce(ctx, x), reduce(ctx, y))));
  }
}

TEST_CASE("one-copy reduction") {
  AlgebraContext ctx(2, 2, 2, RingMode::OneCopy);
  const Element e = column_product(ctx, {1, 2, 3}, 4, Copy::Unprimed);
  const Element r = reduce(ctx, e);
  CHECK(all_basic(ctx, r));
  CHECK(r.size() == 4);
  CHECK(reduce(ctx, column_product(ctx, {1, 2}, 4, Copy::Unprimed)) ==
        expand_constant_column(ctx, std::vector<int>{1, 2}, 4, Copy::Unprimed));
}

TEST_CASE("admissible sequences") {
  const auto two = admissible_sequences(std::vector<int>{3, 7});
  REQUIRE(two.size() == 2);
  CHECK(two[0].indices == std::vector<int>{3, 3});
  CHECK(two[1].indices == std::vector<int>{3, 7});

  const auto s = admissible_sequences(std::vector<int>{2, 5, 6});
  REQUIRE(s.size() == 4);
  CHECK(s[0] == AdmissibleSequence{{2, 2, 2}, 1});
  CHECK(s[1] == AdmissibleSequence{{2, 2, 6}, 2});
  CHECK(s[2] == AdmissibleSequence{{2, 5, 5}, 2});
  CHECK(s[3] == AdmissibleSequence{{2, 5, 6}, 3});

  const auto one = admissible_sequences(std::vector<int>{4});
  REQUIRE(one.size() == 1);
  CHECK(one[0] == AdmissibleSequence{{4}, 1});

  for (int len = 1; len <= 8; ++len) {
    std::vector<int> J(static_cast<std::size_t>(len));
    for (int k = 0; k < len; ++k) J[static_cast<std::size_t>(k)] = 2 * k + 1;
    const auto seqs = admissible_sequences(J);
    CHECK(seqs.size() == (std::size_t{1} << (len - 1)));
    std::set<std::vector<int>> unique;
    for (const auto& a : seqs) {
      unique.insert(a.indices);
      CHECK(a.indices.front() == J.front());
      CHECK(std::set<int>(a.indices.begin(), a.indices.end()).size() == static_cast<std::size_t>(a.distinct));
    }
    CHECK(unique.size() == seqs.size());
  }
}

TEST_CASE("column expansion") {
  AlgebraContext ctx(2, 2, 2, RingMode::TwoCopy);
  const Element two = expand_constant_column(ctx, std::vector<int>{1, 2}, 3, Copy::Unprimed);
  const Element expect = subtract(ctx, multiply(ctx, gen(ctx, Copy::Unprimed, 1, 2), gen(ctx, Copy::Unprimed, 2, 3)),
                                  multiply(ctx, gen(ctx, Copy::Unprimed, 1, 2), gen(ctx, Copy::Unprimed, 1, 3)));
  CHECK(two == expect);
  CHECK(expand_constant_column(ctx, std::vector<int>{2}, 4, Copy::Primed) == gen(ctx, Copy::Primed, 2, 4));

  const std::vector<int> J{1, 2, 3};
  for (Copy copy : {Copy::Unprimed, Copy::Primed})
    CHECK(expand_constant_column(ctx, J, 4, copy) == reduce(ctx, column_product(ctx, J, 4, copy)));

  CHECK_THROWS_AS(expand_constant_column(ctx, std::vector<int>{2, 1}, 4, Copy::Unprimed), ParameterError);
  CHECK_THROWS_AS(expand_constant_column(ctx, std::vector<int>{1, 4}, 4, Copy::Unprimed), ParameterError);
  CHECK_THROWS_AS(expand_constant_column(ctx, std::vector<int>{}, 4, Copy::Unprimed), ParameterError);
  CHECK_THROWS_AS(expand_constant_column(ctx, std::vector<int>{1}, 5, Copy::Unprimed), ParameterError);
}

TEST_CASE("column expansion matches reduce for every column, both parities") {
  for (int d : {2, 3}) {
    AlgebraContext ctx(3, 3, d, RingMode::TwoCopy);
    const int N = ctx.points();
    for (int r = 2; r <= N; ++r)
      for (unsigned mask = 1; mask < (1U << (r - 1)); ++mask) {
        std::vector<int> J;
        for (int j = 1; j < r; ++j)
          if (mask & (1U << (j - 1))) J.push_back(j);
        for (Copy copy : {Copy::Unprimed, Copy::Primed})
          CHECK(expand_constant_column(ctx, J, r, copy) == reduce(ctx, column_product(ctx, J, r, copy)));
      }
  }
}

TEST_CASE("basis enumeration") {
  AlgebraContext ctx(2, 1, 2, RingMode::TwoCopy);
  const auto one = basis_enumerate(ctx, 1);
  CHECK(one.size() == 5);
  CHECK(basis_enumerate(ctx, 0) == std::vector<Monomial>{Monomial{}});
  CHECK(basis_enumerate(ctx, 3).size() == 4);
  CHECK(basis_enumerate(ctx, 4).empty());

  for (int m = 1; m <= 4; ++m)
    for (int n = 1; m + n <= 6; ++n) {
      AlgebraContext c(m, n, 2, RingMode::TwoCopy);
      const PoincarePolynomial p = poincare_polynomial(c, Space::Pair);
      CHECK(p.top_step() == c.top_step());
      for (int step = 0; step <= c.top_step() + 1; ++step) {
        const auto mons = basis_enumerate(c, step);
        CHECK(mons.size() == p.at(step));
        CHECK(std::is_sorted(mons.begin(), mons.end()));
      }
      AlgebraContext e = c.one_copy();
      const PoincarePolynomial pe = poincare_polynomial(m, n, Space::Total);
      for (int step = 0; step <= e.top_step() + 1; ++step) CHECK(basis_enumerate(e, step).size() == pe.at(step));
    }
}

TEST_CASE("Poincare polynomials") {
  CHECK(poincare_polynomial(2, 1, Space::Base).coefficients == std::vector<std::uint64_t>{1, 1});
  CHECK(poincare_polynomial(2, 1, Space::Fiber).coefficients == std::vector<std::uint64_t>{1, 2});
  CHECK(poincare_polynomial(2, 1, Space::Pair).coefficients == std::vector<std::uint64_t>{1, 5, 8, 4});
  CHECK(poincare_polynomial(2, 1, Space::Total).coefficients == std::vector<std::uint64_t>{1, 3, 2});
  CHECK(poincare_polynomial(1, 1, Space::Base).coefficients == std::vector<std::uint64_t>{1});

  for (int m = 1; m <= 5; ++m)
    for (int n = 1; n <= 4; ++n) {
      const auto b = poincare_polynomial(m, n, Space::Base);
      const auto x = poincare_polynomial(m, n, Space::Fiber);
      const auto e = poincare_polynomial(m, n, Space::Total);
      CHECK(b * x == e);
      CHECK(b.top_step() == m - 1);
      CHECK(x.top_step() == n);
      CHECK(e.top_step() == m + n - 1);
      CHECK(poincare_polynomial(m, n, Space::Pair).top_step() == 2 * n + m - 1);
      // Euler characteristic of E vanishes for m + n >= 2
      long long chi = 0;
      for (std::size_t k = 0; k < e.coefficients.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(e.coefficients[k]);
      CHECK(chi == 0);
      // total rank of E is (m+n)!
      std::uint64_t fact = 1;
      for (int k = 2; k <= m + n; ++k) fact *= static_cast<std::uint64_t>(k);
      CHECK(e.total() == fact);
      CHECK(e.at(1) == binomial(m + n, 2));
    }
  CHECK(space_from_string("EXBE") == Space::Pair);
  CHECK(to_string(Space::Fiber) == "X");
}
