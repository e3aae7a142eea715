#include <doctest.h>

#include <random>

#include "fncohom/oracle.hpp"
#include "fncohom/sampling.hpp"

using namespace fncohom;

namespace {

Element gen(const AlgebraContext& ctx, Copy c, int i, int j) { return Element::generator(ctx, c, i, j); }

std::vector<std::uint64_t> expected_dims(int m, int n, Space space, int max_step) {
  const auto p = poincare_polynomial(m, n, space);
  std::vector<std::uint64_t> out;
  for (int s = 0; s <= max_step; ++s) out.push_back(p.at(s));
  return out;
}

OracleOptions with(SpanningMode spanning, ExecPolicy policy = ExecPolicy::Serial) {
  OracleOptions o;
  o.spanning = spanning;
  o.policy = policy;
  return o;
}

}  // namespace

TEST_CASE("dimensions of small rings") {
  HomologyOracle oracle;
  const OracleReport r = oracle.report(2, 1, 2, Space::Pair, 4);
  CHECK(r.dimensions() == std::vector<std::uint64_t>{1, 5, 8, 4, 0});
  CHECK(r.torsion_free());
  CHECK(r.basis_match());
  CHECK(r.top_step() == 3);

  const OracleReport e = oracle.report(2, 1, 2, Space::Total, 3);
  CHECK(e.dimensions() == std::vector<std::uint64_t>{1, 3, 2, 0});

  CHECK(oracle.report(2, 1, 2, Space::Base, 2).dimensions() == std::vector<std::uint64_t>{1, 1, 0});
  CHECK(oracle.report(2, 1, 2, Space::Fiber, 2).dimensions() == std::vector<std::uint64_t>{1, 2, 0});

  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 2; ++n)
      for (Space s : {Space::Base, Space::Total, Space::Fiber, Space::Pair})
        CHECK(oracle.degree(m, n, 2, s, 0).dimension == 1);
}

TEST_CASE("dimensions follow the Poincare products") {
  HomologyOracle oracle;
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; m + n <= 4; ++n)
      for (int d : {2, 3, 4})
        for (Space s : {Space::Base, Space::Total, Space::Fiber, Space::Pair}) {
          const auto p = poincare_polynomial(m, n, s);
          const int top = p.top_step();
          const OracleReport r = oracle.report(m, n, d, s, top + 1);
          CAPTURE(m);
          CAPTURE(n);
          CAPTURE(d);
          CAPTURE(to_string(s));
          CHECK(r.dimensions() == expected_dims(m, n, s, top + 1));
          CHECK(r.torsion_free());
          CHECK(r.basis_match());
          CHECK(r.top_step() == top);
        }
  // top degrees in the four spaces
  CHECK(oracle.report(3, 2, 2, Space::Base, 3).top_step() == 2);
  CHECK(oracle.report(3, 2, 2, Space::Fiber, 3).top_step() == 2);
  CHECK(oracle.report(3, 2, 2, Space::Total, 5).top_step() == 4);
  CHECK(oracle.report(3, 2, 2, Space::Pair, 7).top_step() == 6);
}

TEST_CASE("literal slices agree with the oracle") {
  // Rank of the literal relation matrix, computed independently of the
  // block decomposition and pivoting.
  for (auto [m, n] : {std::pair{2, 1}, {1, 2}, {2, 2}, {3, 1}})
    for (int d : {2, 3})
      for (Space s : {Space::Pair, Space::Total, Space::Fiber}) {
        const RingModel model = ring_model(m, n, d, s);
        HomologyOracle oracle(with(SpanningMode::Full));
        for (int step = 0; step <= model.top_step() + 1; ++step) {
          const DegreeSlice slice = degree_slice(model, step);
          const int cols = static_cast<int>(slice.spanning_monomials.size());
          const int rank = rational_rank(slice.relation_rows, cols);
          const DegreeReport rep = oracle.degree(m, n, d, s, step);
          CHECK(static_cast<std::uint64_t>(cols - rank) == rep.dimension);
          CHECK(smith_summary(slice.relation_rows, cols).torsion_free());
        }
      }
}

TEST_CASE("relation rows are relations") {
  const RingModel model = ring_model(2, 2, 2, Space::Pair);
  AlgebraContext ctx(2, 2, 2, RingMode::TwoCopy);
  for (int step = 2; step <= 4; ++step) {
    const DegreeSlice slice = degree_slice(model, step);
    CHECK_FALSE(slice.relation_rows.empty());
    for (const SparseRow& row : slice.relation_rows) {
      std::vector<Term> terms;
      for (const auto& [col, c] : row) terms.push_back({slice.spanning_monomials[static_cast<std::size_t>(col)], c});
      CHECK(reduce(ctx, Element::from_terms(ctx, terms)).is_zero());
    }
  }
}

TEST_CASE("spanning modes, pivoting and execution policy agree") {
  for (auto [m, n] : {std::pair{2, 1}, {1, 3}, {2, 2}, {3, 1}})
    for (int d : {2, 3})
      for (Space s : {Space::Pair, Space::Total}) {
        const int top = ring_model(m, n, d, s).top_step();
        const auto full = oracle_dimensions(m, n, d, s, top + 1, with(SpanningMode::Full));
        const auto forest = oracle_dimensions(m, n, d, s, top + 1, with(SpanningMode::Forest));
        const auto par = oracle_dimensions(m, n, d, s, top + 1, with(SpanningMode::Auto, ExecPolicy::Parallel));
        OracleOptions nopiv = with(SpanningMode::Full);
        nopiv.use_pivots = false;
        const auto slow = oracle_dimensions(m, n, d, s, top + 1, nopiv);
        CHECK(full.dimensions() == forest.dimensions());
        CHECK(full.dimensions() == par.dimensions());
        CHECK(full.dimensions() == slow.dimensions());
        CHECK(slow.torsion_free());
        CHECK(forest.basis_match());
      }
}

TEST_CASE("sign rule depends only on the parity of d") {
  HomologyOracle oracle;
  CHECK(oracle.report(2, 2, 2, Space::Pair, 6).dimensions() == oracle.report(2, 2, 4, Space::Pair, 6).dimensions());
  CHECK(oracle.report(2, 2, 3, Space::Pair, 6).dimensions() == oracle.report(2, 2, 5, Space::Pair, 6).dimensions());
  const AlgebraContext a(2, 2, 2, RingMode::TwoCopy);
  const AlgebraContext b(2, 2, 4, RingMode::TwoCopy);
  const Element x = multiply(a, gen(a, Copy::Unprimed, 1, 4), gen(a, Copy::Unprimed, 2, 4));
  const Element y = multiply(b, gen(b, Copy::Unprimed, 1, 4), gen(b, Copy::Unprimed, 2, 4));
  CHECK(oracle.project(a, x).terms() == oracle.project(b, y).terms());
}

TEST_CASE("caps and model restrictions") {
  OracleOptions tiny;
  tiny.size_cap = 10;
  tiny.spanning = SpanningMode::Full;
  CHECK_THROWS_AS(oracle_dimensions(2, 2, 2, Space::Pair, 3, tiny), SizeCapExceeded);
  CHECK_THROWS_AS(degree_slice(ring_model(2, 2, 2, Space::Pair), 3, 10), SizeCapExceeded);
  CHECK_THROWS_AS(oracle_dimensions(2, 2, 2, Space::Fiber, 2, with(SpanningMode::Forest)), ParameterError);
  OracleOptions forest_tiny = with(SpanningMode::Forest);
  forest_tiny.forest_cap = 3;
  CHECK_THROWS_AS(oracle_dimensions(2, 2, 2, Space::Pair, 3, forest_tiny), SizeCapExceeded);
}

TEST_CASE("ring models") {
  const RingModel pair = ring_model(2, 1, 2, Space::Pair);
  CHECK(pair.generator_count() == 5);
  CHECK(pair.graphic);
  CHECK(pair.vertex_count == 4);
  CHECK(pair.relations.size() == 2);  // triangles 123 and 123'
  CHECK(pair.top_step() == 3);
  const RingModel fiber = ring_model(2, 1, 2, Space::Fiber);
  CHECK_FALSE(fiber.graphic);
  CHECK(fiber.generator_count() == 2);
  CHECK(fiber.index(Copy::Unprimed, 1, 2) == -1);
  const RingModel base = ring_model(1, 2, 2, Space::Base);
  CHECK(base.generator_count() == 0);
  CHECK(base.top_step() == 0);

  // generator numbering agrees with the algebra context
  AlgebraContext ctx(3, 2, 2, RingMode::TwoCopy);
  const RingModel model = ring_model(3, 2, 2, Space::Pair);
  REQUIRE(model.generator_count() == ctx.generator_count());
  for (GenIndex g = 0; g < ctx.generator_count(); ++g) CHECK(model.generators[static_cast<std::size_t>(g)] == ctx.generator(g));
  const auto w = [&](int i, int j) { return ctx.index(Copy::Unprimed, i, j); };
  CHECK(model.is_forest(Monomial::of({w(1, 2), w(2, 3)})));
  CHECK_FALSE(model.is_forest(Monomial::of({w(1, 2), w(2, 3), w(1, 3)})));
}

TEST_CASE("projection examples") {
  AlgebraContext ctx(2, 1, 2, RingMode::TwoCopy);
  HomologyOracle oracle;
  const Element lhs = multiply(ctx, gen(ctx, Copy::Unprimed, 1, 3), gen(ctx, Copy::Unprimed, 2, 3));
  const Element rhs = subtract(ctx, multiply(ctx, gen(ctx, Copy::Unprimed, 1, 2), gen(ctx, Copy::Unprimed, 2, 3)),
                               multiply(ctx, gen(ctx, Copy::Unprimed, 1, 2), gen(ctx, Copy::Unprimed, 1, 3)));
  CHECK(oracle.project(ctx, lhs) == rhs);
  for (int step = 0; step <= 3; ++step)
    for (const Monomial& b : basis_enumerate(ctx, step))
      CHECK(oracle.project(ctx, Element::monomial(ctx, b)) == Element::monomial(ctx, b));
  CHECK(oracle.project(ctx, relation_instance(ctx, Copy::Primed, 1, 2, 3)).is_zero());
  CHECK(oracle.project(ctx, Element::zero(ctx)).is_zero());

  const Element psi = multiply(ctx, subtract(ctx, gen(ctx, Copy::Unprimed, 1, 3), gen(ctx, Copy::Primed, 1, 3)),
                               subtract(ctx, gen(ctx, Copy::Unprimed, 2, 3), gen(ctx, Copy::Primed, 2, 3)));
  const Element p = oracle.project(ctx, psi);
  CHECK(p.size() == 6);
  for (const auto& t : p.terms()) CHECK(abs(t.coeff) == 1);

  CHECK_THROWS_AS(oracle.project(ctx, add(ctx, lhs, gen(ctx, Copy::Unprimed, 1, 2))), ParameterError);
}

TEST_CASE("reduce agrees with projection on random elements") {
  std::mt19937_64 rng(42);
  HomologyOracle oracle;
  for (auto [m, n] : {std::pair{2, 1}, {1, 2}, {2, 2}, {3, 1}, {1, 3}})
    for (int d : {2, 3})
      for (RingMode mode : {RingMode::TwoCopy, RingMode::OneCopy}) {
        AlgebraContext ctx(m, n, d, mode);
        for (int trial = 0; trial < 60; ++trial) {
          const Element e = random_homogeneous(ctx, 5, rng);
          CHECK(reduce(ctx, e) == oracle.project(ctx, e));
        }
      }
}

TEST_CASE("basis verification") {
  for (auto [m, n] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
    AlgebraContext ctx(m, n, 2, RingMode::TwoCopy);
    const BasisVerification v = verify_basis(ctx, ctx.top_step() + 1);
    CHECK(v.ok);
    CHECK(v.report.top_step() == 2 * n + m - 1);
  }
}

TEST_CASE("lattice helpers") {
  // [[2, 0], [0, 3]] -> invariant factors 1, 6
  std::vector<SparseRow> rows{{{0, 2}}, {{1, 3}}};
  const LatticeSummary s = smith_summary(rows, 2);
  CHECK(s.rank == 2);
  REQUIRE(s.invariant_factors.size() == 2);
  CHECK(s.invariant_factors[0] == 1);
  CHECK(s.invariant_factors[1] == 6);
  CHECK_FALSE(s.torsion_free());

  std::vector<SparseRow> dep{{{0, 1}, {1, 1}}, {{0, 2}, {1, 2}}, {{2, -1}}};
  CHECK(rational_rank(dep, 3) == 2);
  CHECK(smith_summary(dep, 3).torsion_free());
  CHECK(smith_summary({}, 4).rank == 0);

  // x * (1, 1) + y * (0, 2) = (3, 5)  =>  x = 3, y = 1
  const auto sol = solve_rational({{{0, 1}, {1, 1}}, {{1, 2}}}, {{0, 3}, {1, 5}}, 2);
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == 3);
  CHECK((*sol)[1] == 1);
  CHECK_FALSE(solve_rational({{{0, 1}}}, {{1, 1}}, 2).has_value());                // inconsistent
  CHECK_FALSE(solve_rational({{{0, 1}}, {{0, 2}}}, {{0, 1}}, 1).has_value());      // dependent
  const auto half = solve_rational({{{0, 2}}}, {{0, 1}}, 1);
  REQUIRE(half.has_value());
  CHECK((*half)[0] == mpq_class(1, 2));
}
