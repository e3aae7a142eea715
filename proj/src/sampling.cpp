#include "fncohom/sampling.hpp"

#include <algorithm>
#include <numeric>

namespace fncohom {

Element random_homogeneous(const AlgebraContext& ctx, int step, int max_terms, std::mt19937_64& rng) {
  const int g = ctx.generator_count();
  if (step < 0 || step > g) throw ParameterError("sample step out of range");
  std::uniform_int_distribution<int> nterms(1, std::max(1, max_terms));
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::vector<GenIndex> pool(static_cast<std::size_t>(g));
  std::iota(pool.begin(), pool.end(), 0);

  std::vector<Term> terms;
  const int k = nterms(rng);
  for (int t = 0; t < k; ++t) {
    // Partial Fisher-Yates: the first `step` entries form a uniform subset.
    for (int i = 0; i < step; ++i) {
      std::uniform_int_distribution<int> pick(i, g - 1);
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(rng))]);
    }
    Monomial mono;
    for (int i = 0; i < step; ++i) mono = mono.with(pool[static_cast<std::size_t>(i)]);
    terms.push_back({mono, Integer(coeff(rng))});
  }
  return Element::from_terms(ctx, std::move(terms));
}

Element random_homogeneous(const AlgebraContext& ctx, int max_terms, std::mt19937_64& rng) {
  const int hi = std::min(ctx.top_step() + 1, ctx.generator_count());
  std::uniform_int_distribution<int> step(std::min(1, hi), hi);
  return random_homogeneous(ctx, step(rng), max_terms, rng);
}

}  // namespace fncohom
