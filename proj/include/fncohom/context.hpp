#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fncohom {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected (m, n, d) triple or other out-of-domain numeric input.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Invalid generator request: index out of range, i >= j, or a primed class in a one-copy ring.
class GeneratorError : public Error {
 public:
  using Error::Error;
};

/// Operands built over different contexts were combined.
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

enum class RingMode : std::uint8_t {
  OneCopy,  // H*(Conf(R^d, m+n))
  TwoCopy,  // H*(E x_B E)
};

enum class Copy : std::uint8_t { Unprimed, Primed };

using GenIndex = int;

/// One degree-(d-1) class w_{i,j} or w'_{i,j}.  Ordered by (copy, j, i).
struct Generator {
  Copy copy = Copy::Unprimed;
  int i = 0;
  int j = 0;

  friend bool operator==(const Generator&, const Generator&) = default;
  friend std::strong_ordering operator<=>(const Generator& a, const Generator& b) {
    if (auto c = a.copy <=> b.copy; c != 0) return c;
    if (auto c = a.j <=> b.j; c != 0) return c;
    return a.i <=> b.i;
  }
};

/// The identifying parameters of a context.  Elements carry one so that
/// mixing values from different rings is caught.
struct ContextKey {
  int m = 0;
  int n = 0;
  int d = 0;
  RingMode mode = RingMode::TwoCopy;

  friend bool operator==(const ContextKey&, const ContextKey&) = default;
};

/// Immutable parameters of one cohomology ring plus the generator table.
///
/// Generators are numbered in canonical order: all unprimed classes sorted by
/// (j, i), then (two-copy mode only) the primed classes w'_{i,j} with j > m,
/// again sorted by (j, i).  That numbering is what makes a Monomial bitmask
/// compare in canonical order.
class AlgebraContext {
 public:
  /// Largest generator count representable by Monomial.
  static constexpr int kMaxGenerators = 128;

  AlgebraContext(int m, int n, int d, RingMode mode);

  int m() const { return m_; }
  int n() const { return n_; }
  int d() const { return d_; }
  int points() const { return m_ + n_; }
  RingMode mode() const { return mode_; }
  ContextKey key() const { return {m_, n_, d_, mode_}; }

  int gen_degree() const { return d_ - 1; }
  /// Highest number of generator factors in a nonzero product.
  int top_step() const;
  int top_degree() const { return top_step() * gen_degree(); }
  /// Generators of odd degree anticommute; that happens exactly for even d.
  bool anticommuting() const { return d_ % 2 == 0; }

  int generator_count() const { return static_cast<int>(table_.size()); }
  const Generator& generator(GenIndex g) const { return table_.at(static_cast<std::size_t>(g)); }
  const std::vector<Generator>& generators() const { return table_; }

  /// Validates and normalizes (primed with j <= m becomes unprimed).
  Generator make_generator(Copy copy, int i, int j) const;
  /// Index of an already-normalized generator.
  GenIndex index_of(const Generator& g) const;
  /// Shorthand for index_of(make_generator(copy, i, j)).
  GenIndex index(Copy copy, int i, int j) const { return index_of(make_generator(copy, i, j)); }

  /// The one-copy ring of E = Conf(R^d, m+n) with the same parameters.
  AlgebraContext one_copy() const { return AlgebraContext(m_, n_, d_, RingMode::OneCopy); }

 private:
  int m_;
  int n_;
  int d_;
  RingMode mode_;
  std::vector<Generator> table_;
};

std::string to_string(RingMode mode);
std::string to_string(const Generator& g);

}  // namespace fncohom
