#include "fncohom/monomial.hpp"

namespace fncohom {

std::vector<GenIndex> Monomial::factors() const {
  std::vector<GenIndex> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each([&](GenIndex g) { out.push_back(g); });
  return out;
}

int shuffle_parity(const Monomial& a, const Monomial& b) {
  int inversions = 0;
  const int total_a = a.size();
  b.for_each([&](GenIndex y) { inversions += total_a - a.count_below(y); });
  return inversions & 1;
}

std::optional<SignedMonomial> concatenate(const Monomial& a, const Monomial& b, bool anticommuting) {
  if (!a.disjoint(b)) return std::nullopt;
  SignedMonomial out{a | b, 1};
  if (anticommuting && shuffle_parity(a, b) != 0) out.sign = -1;
  return out;
}

}  // namespace fncohom
