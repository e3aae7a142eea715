#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fncohom/element.hpp"
#include "fncohom/integer_lattice.hpp"
#include "fncohom/normal_form.hpp"

namespace fncohom {

class SizeCapExceeded : public Error {
 public:
  using Error::Error;
};

/// A relation or the oracle's own bookkeeping contradicted itself: a row that
/// is not homogeneous, a non-integral projection, a singular candidate basis.
class OracleInconsistency : public Error {
 public:
  using Error::Error;
};

/// One signed term of a relation template.  The sign already folds in the
/// coefficient and the reordering sign of the listed product.
struct RelationTerm {
  Monomial mono;
  int sign = 1;
};

/// Free graded-commutative presentation of one of the four rings.
///
/// Generators of B, E and E x_B E are the edges of a graph (K_m, K_{m+n} and
/// two copies of K_{m+n} glued along K_m), and every relation is the
/// three-term relation of a triangle.  The fiber ring is presented on w_{i,j},
/// j > m, with the base classes set to zero, so it has the extra two-factor
/// relations w_{i,k} w_{j,k} = 0 for i < j <= m < k and is not graphic.
struct RingModel {
  Space space = Space::Pair;
  int m = 0;
  int n = 0;
  bool anticommuting = true;
  std::vector<Generator> generators;
  std::vector<std::vector<RelationTerm>> relations;
  bool graphic = false;
  int vertex_count = 0;
  std::vector<std::pair<int, int>> endpoints;  // graph edge of each generator

  int generator_count() const { return static_cast<int>(generators.size()); }
  /// Highest step carried by the candidate basis.
  int top_step() const;
  /// Index of a generator given in the two-copy normalization; -1 if absent.
  GenIndex index(Copy copy, int i, int j) const;
  /// Candidate basis test: distinct upper indices within each copy.
  bool is_candidate(const Monomial& mono) const;
  /// Candidate basis monomials of the given step, in canonical order.
  std::vector<Monomial> candidates(int step) const;
  /// True when the factors form a forest in the generator graph.
  bool is_forest(const Monomial& mono) const;
};

/// Generator numbering agrees with AlgebraContext: the two-copy context for
/// Pair and the one-copy context for Total.
RingModel ring_model(int m, int n, int d, Space space);

/// The literal degree slice: every squarefree monomial with `step` factors
/// and every relation template multiplied by every complementary monomial.
struct DegreeSlice {
  int degree_step = 0;
  std::vector<Monomial> spanning_monomials;
  std::vector<SparseRow> relation_rows;  // indices into spanning_monomials
};

/// Throws SizeCapExceeded when C(g, step) > cap.
DegreeSlice degree_slice(const RingModel& model, int step, std::uint64_t cap = 200000);

enum class SpanningMode : std::uint8_t {
  Auto,    // Full while under size_cap, Forest beyond it for graphic rings
  Full,    // every squarefree monomial
  Forest,  // only monomials whose edges form a forest (graphic rings)
};

enum class ExecPolicy : std::uint8_t { Serial, Parallel };

std::string to_string(SpanningMode mode);

struct OracleOptions {
  std::uint64_t size_cap = 200000;     // squarefree monomials per degree, Full mode
  std::uint64_t forest_cap = 5000000;  // forest monomials per degree, Forest mode
  SpanningMode spanning = SpanningMode::Auto;
  ExecPolicy policy = ExecPolicy::Parallel;
  /// When false no pivots are taken and every row goes to the exact lattice.
  /// Only sensible on tiny slices; it exists to cross-check the pivot path.
  bool use_pivots = true;
};

struct DegreeReport {
  int step = 0;
  SpanningMode mode = SpanningMode::Full;
  std::uint64_t spanning = 0;  // columns
  std::uint64_t rows = 0;      // nonzero relation rows
  std::uint64_t blocks = 0;
  std::uint64_t rank = 0;
  std::uint64_t dimension = 0;
  /// Nontrivial invariant factors of the relation lattice.
  std::vector<mpz_class> torsion;
  std::uint64_t candidates = 0;
  bool basis_match = false;
};

struct OracleReport {
  Space space = Space::Pair;
  int m = 0;
  int n = 0;
  int d = 0;
  std::vector<DegreeReport> degrees;

  std::vector<std::uint64_t> dimensions() const;
  bool torsion_free() const;
  bool basis_match() const;
  /// Highest step with nonzero dimension, -1 if none.
  int top_step() const;
};

struct BlockTable;

/// Exact brute-force model of a ring.  Reports are cached per degree; the
/// sign rule only depends on the parity of d, so d and d + 2 share entries.
/// Thread-safe.
class HomologyOracle {
 public:
  explicit HomologyOracle(OracleOptions options = {});
  ~HomologyOracle();
  HomologyOracle(const HomologyOracle&) = delete;
  HomologyOracle& operator=(const HomologyOracle&) = delete;

  const OracleOptions& options() const { return options_; }

  DegreeReport degree(int m, int n, int d, Space space, int step);
  OracleReport report(int m, int n, int d, Space space, int max_step);

  /// Coordinates of a homogeneous two-copy (or one-copy) element in the
  /// candidate basis.  Throws OracleInconsistency if the exact solve fails.
  Element project(const AlgebraContext& ctx, const Element& e);

 private:
  struct Key {
    int m, n, parity, space, step;
    auto operator<=>(const Key&) const = default;
  };

  std::shared_ptr<const BlockTable> table(const RingModel& model, int step);

  OracleOptions options_;
  std::mutex mutex_;
  std::map<Key, DegreeReport> reports_;
  std::map<Key, std::shared_ptr<const BlockTable>> tables_;
};

/// Per-degree dimensions, torsion and basis match for the ring of ctx
/// (E x_B E for two-copy contexts, E for one-copy ones).
OracleReport oracle_dimensions(const AlgebraContext& ctx, int max_step, const OracleOptions& options = {});
OracleReport oracle_dimensions(int m, int n, int d, Space space, int max_step, const OracleOptions& options = {});

Element oracle_project(const AlgebraContext& ctx, const Element& e, const OracleOptions& options = {});

struct BasisVerification {
  bool ok = false;
  OracleReport report;
};

BasisVerification verify_basis(const AlgebraContext& ctx, int max_step, const OracleOptions& options = {});

}  // namespace fncohom
