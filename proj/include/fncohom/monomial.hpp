#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fncohom/context.hpp"

namespace fncohom {

/// A squarefree product of generators, stored as a 128-bit set of generator
/// indices.  Factors are implicitly in canonical (ascending index) order.
///
/// The built-in ordering compares the highest generator first, i.e. the
/// integer value of the bitmask.  Every three-term rewrite replaces a factor
/// by a strictly smaller one, so reduction walks this order downwards.
class Monomial {
 public:
  constexpr Monomial() = default;

  static Monomial of(GenIndex g) {
    Monomial m;
    m.set(g);
    return m;
  }
  static Monomial of(std::initializer_list<GenIndex> gens) {
    Monomial m;
    for (GenIndex g : gens) m.set(g);
    return m;
  }
  static constexpr Monomial from_words(std::uint64_t hi, std::uint64_t lo) {
    Monomial m;
    m.hi_ = hi;
    m.lo_ = lo;
    return m;
  }

  std::uint64_t hi() const { return hi_; }
  std::uint64_t lo() const { return lo_; }

  bool empty() const { return (hi_ | lo_) == 0; }
  int size() const { return std::popcount(hi_) + std::popcount(lo_); }
  bool contains(GenIndex g) const {
    return g < 64 ? ((lo_ >> g) & 1U) != 0 : ((hi_ >> (g - 64)) & 1U) != 0;
  }
  bool disjoint(const Monomial& o) const { return ((hi_ & o.hi_) | (lo_ & o.lo_)) == 0; }
  bool includes(const Monomial& o) const { return (o.hi_ & ~hi_) == 0 && (o.lo_ & ~lo_) == 0; }

  Monomial with(GenIndex g) const {
    Monomial m = *this;
    m.set(g);
    return m;
  }
  Monomial without(GenIndex g) const {
    Monomial m = *this;
    if (g < 64)
      m.lo_ &= ~(std::uint64_t{1} << g);
    else
      m.hi_ &= ~(std::uint64_t{1} << (g - 64));
    return m;
  }

  /// Factors strictly below generator g.
  int count_below(GenIndex g) const {
    if (g < 64) return std::popcount(lo_ & ((std::uint64_t{1} << g) - 1));
    const int k = g - 64;
    return std::popcount(lo_) + std::popcount(hi_ & ((std::uint64_t{1} << k) - 1));
  }

  /// Largest factor; undefined on the unit.
  GenIndex highest() const { return hi_ != 0 ? 127 - std::countl_zero(hi_) : 63 - std::countl_zero(lo_); }

  std::vector<GenIndex> factors() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t w = lo_; w != 0; w &= w - 1) f(std::countr_zero(w));
    for (std::uint64_t w = hi_; w != 0; w &= w - 1) f(64 + std::countr_zero(w));
  }

  friend Monomial operator|(Monomial a, const Monomial& b) {
    a.hi_ |= b.hi_;
    a.lo_ |= b.lo_;
    return a;
  }
  friend Monomial operator&(Monomial a, const Monomial& b) {
    a.hi_ &= b.hi_;
    a.lo_ &= b.lo_;
    return a;
  }
  friend Monomial operator^(Monomial a, const Monomial& b) {
    a.hi_ ^= b.hi_;
    a.lo_ ^= b.lo_;
    return a;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial&, const Monomial&) = default;

 private:
  void set(GenIndex g) {
    if (g < 64)
      lo_ |= std::uint64_t{1} << g;
    else
      hi_ |= std::uint64_t{1} << (g - 64);
  }

  // hi_ first so the defaulted comparison is numeric.
  std::uint64_t hi_ = 0;
  std::uint64_t lo_ = 0;
};

/// Canonical monomial order used for storing and printing terms: by number
/// of factors, then by the built-in (highest-factor-first) order.
struct CanonicalLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int sa = a.size();
    const int sb = b.size();
    if (sa != sb) return sa < sb;
    return a < b;
  }
};

/// Parity of the shuffle that sorts the concatenation a·b into canonical
/// order (number of pairs x in a, y in b with x > y, mod 2).
int shuffle_parity(const Monomial& a, const Monomial& b);

struct SignedMonomial {
  Monomial mono;
  int sign = 1;
};

/// Product a·b as a canonical monomial with its sign; nullopt when a factor
/// repeats (squares vanish).  The sign is +1 when generators commute.
std::optional<SignedMonomial> concatenate(const Monomial& a, const Monomial& b, bool anticommuting);

}  // namespace fncohom

template <>
struct std::hash<fncohom::Monomial> {
  std::size_t operator()(const fncohom::Monomial& m) const noexcept {
    std::uint64_t h = m.lo() * 0x9E3779B97F4A7C15ULL;
    h ^= m.hi() + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};
