#pragma once

#include <random>

#include "fncohom/element.hpp"

namespace fncohom {

/// Random homogeneous element: up to max_terms squarefree monomials (not
/// necessarily basic) with `step` factors and coefficients in [-3, 3].
Element random_homogeneous(const AlgebraContext& ctx, int step, int max_terms, std::mt19937_64& rng);

/// Same, with the step drawn uniformly from [1, top_step + 1] (capped by the
/// generator count), so some samples lie above the top degree.
Element random_homogeneous(const AlgebraContext& ctx, int max_terms, std::mt19937_64& rng);

}  // namespace fncohom
