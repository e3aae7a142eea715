#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fncohom/element.hpp"
#include "fncohom/oracle.hpp"

namespace fncohom {

/// Request outside the supported range: odd d for psi, cup length and ptc.
class UnsupportedCase : public Error {
 public:
  using Error::Error;
};

/// The ideal generated by w_{i,j} - w'_{i,j}, 1 <= i < j, m < j <= m+n.
struct KernelIdeal {
  std::vector<Element> generators;
  std::vector<std::pair<int, int>> pairs;  // (i, j) of each generator

  int count() const { return static_cast<int>(generators.size()); }
};

KernelIdeal ideal_generators(const AlgebraContext& ctx);

/// Restriction along the diagonal: w' -> w, then reduction in the one-copy
/// ring.  The result lives over ctx.one_copy().
Element delta_star(const AlgebraContext& ctx, const Element& e);

/// Reduced product
///   prod_{i<=m} (w_{i,m+1} - w'_{i,m+1})
///   prod_{m+2<=j<=m+n} (w_{1,j} - w'_{1,j})
///   prod_{m+2<=j<=m+n} (w_{j-1,j} - w'_{j-1,j}).
Element psi(const AlgebraContext& ctx, ExecPolicy policy = ExecPolicy::Serial);

/// w_{1,2} w_{1,3} ... w_{1,m+n} * w'_{m+1,m+2} ... w'_{m+n-1,m+n}.
Monomial psi_witness(const AlgebraContext& ctx);

enum class CertificateStatus : std::uint8_t { Verified, ZeroWitness };

std::string to_string(CertificateStatus s);

struct PsiCertificate {
  Element psi_reduced;
  Monomial witness;
  Integer witness_coefficient;
  int lower_bound = 0;
  CertificateStatus status = CertificateStatus::ZeroWitness;
};

PsiCertificate psi_certificate(const AlgebraContext& ctx, ExecPolicy policy = ExecPolicy::Serial);

enum class VanishingStatus : std::uint8_t { Vanishes, DoesNotVanish, NotChecked };

enum class VanishingReason : std::uint8_t {
  DegreeForced,            // q(d-1) exceeds the top degree
  InsufficientGenerators,  // fewer than q distinct generators
  Exhaustive,              // every distinct q-fold product reduced to 0
  Counterexample,          // some product survived
  BudgetExceeded,
};

std::string to_string(VanishingStatus s);
std::string to_string(VanishingReason r);

struct VanishingResult {
  VanishingStatus status = VanishingStatus::NotChecked;
  VanishingReason reason = VanishingReason::BudgetExceeded;
  int q = 0;
  std::uint64_t products = 0;       // distinct generator subsets
  std::uint64_t complementary = 0;  // basis monomials of complementary degree, unit included
  std::uint64_t work = 0;           // products * complementary, compared with the budget
  std::uint64_t products_checked = 0;
  std::vector<int> counterexample;  // generator positions of a surviving product
};

inline constexpr std::uint64_t kDefaultBudget = 50000000;

/// Whether J^q = 0.  Products of q distinct generators are checked; each must
/// reduce to 0 (the unit is among the complementary basis monomials, and a
/// zero product has zero multiples).  d even only.
VanishingResult ideal_power_vanishes(const AlgebraContext& ctx, int q, std::uint64_t budget = kDefaultBudget,
                                     ExecPolicy policy = ExecPolicy::Parallel);

struct CupLengthCertificate {
  int m = 0;
  int n = 0;
  int d = 0;
  PsiCertificate lower;
  VanishingResult vanishing;
  int lower_bound = 0;
  std::optional<int> upper_bound;
  /// Closed verdict when both bounds meet; otherwise the interval [lower, upper?].
  std::optional<int> verdict;
};

CupLengthCertificate cup_length_bounds(const AlgebraContext& ctx, std::uint64_t budget = kDefaultBudget,
                                       ExecPolicy policy = ExecPolicy::Parallel);

struct ProvenanceItem {
  std::string label;
  std::string statement;
  bool computed = false;
};

struct PtcResult {
  int value = 0;
  CupLengthCertificate certificate;
  std::vector<ProvenanceItem> provenance;
};

/// Parametrized topological complexity 2n+m-2 of the obstacle-avoiding
/// configuration bundle, with the cup-length lower bound computed and the
/// matching upper bound reported as non-computed arithmetic.  d even only.
PtcResult ptc_value(const AlgebraContext& ctx, std::uint64_t budget = kDefaultBudget,
                    ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace fncohom
