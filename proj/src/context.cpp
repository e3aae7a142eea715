#include "fncohom/context.hpp"

#include <fmt/format.h>

namespace fncohom {

namespace {

int pairs_below(int j) { return (j - 1) * (j - 2) / 2; }

}  // namespace

AlgebraContext::AlgebraContext(int m, int n, int d, RingMode mode) : m_(m), n_(n), d_(d), mode_(mode) {
  if (m < 1) throw ParameterError(fmt::format("obstacle count m must be >= 1 (got {})", m));
  if (n < 1) throw ParameterError(fmt::format("robot count n must be >= 1 (got {})", n));
  if (d < 2) throw ParameterError(fmt::format("dimension d must be >= 2 (got {})", d));

  const int total = m + n;
  // Guard before building the table; m + n is otherwise unbounded.
  long long count = static_cast<long long>(total) * (total - 1) / 2;
  if (mode == RingMode::TwoCopy) count += count - static_cast<long long>(m) * (m - 1) / 2;
  if (count > kMaxGenerators) {
    throw ParameterError(fmt::format("ring with m={}, n={} has {} generators; at most {} are supported", m, n,
                                     count, kMaxGenerators));
  }

  for (int j = 2; j <= total; ++j)
    for (int i = 1; i < j; ++i) table_.push_back({Copy::Unprimed, i, j});
  if (mode == RingMode::TwoCopy) {
    for (int j = m + 1; j <= total; ++j)
      for (int i = 1; i < j; ++i) table_.push_back({Copy::Primed, i, j});
  }
}

int AlgebraContext::top_step() const {
  if (mode_ == RingMode::OneCopy) return m_ + n_ - 1;
  return 2 * n_ + m_ - 1;
}

Generator AlgebraContext::make_generator(Copy copy, int i, int j) const {
  const int total = points();
  if (i < 1 || j < 1 || i > total || j > total)
    throw GeneratorError(fmt::format("generator index ({},{}) outside 1..{}", i, j, total));
  if (i >= j) throw GeneratorError(fmt::format("generator ({},{}) needs i < j", i, j));
  if (copy == Copy::Primed && mode_ == RingMode::OneCopy)
    throw GeneratorError("primed generators do not exist in the one-copy ring");
  if (copy == Copy::Primed && j <= m_) copy = Copy::Unprimed;
  return {copy, i, j};
}

GenIndex AlgebraContext::index_of(const Generator& g) const {
  const Generator norm = make_generator(g.copy, g.i, g.j);
  if (norm != g) throw GeneratorError(fmt::format("generator {} is not normalized", to_string(g)));
  if (g.copy == Copy::Unprimed) return pairs_below(g.j) + (g.i - 1);
  const int unprimed = pairs_below(points() + 1);
  return unprimed + pairs_below(g.j) - pairs_below(m_ + 1) + (g.i - 1);
}

std::string to_string(RingMode mode) { return mode == RingMode::OneCopy ? "one-copy" : "two-copy"; }

std::string to_string(const Generator& g) {
  return fmt::format("{}({},{})", g.copy == Copy::Unprimed ? "w" : "wp", g.i, g.j);
}

}  // namespace fncohom
