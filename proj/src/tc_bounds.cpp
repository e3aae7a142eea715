#include "fncohom/tc_bounds.hpp"

#include <algorithm>
#include <exception>
#include <limits>

#include <fmt/format.h>

#include "fncohom/normal_form.hpp"

namespace fncohom {

namespace {

void require_two_copy(const AlgebraContext& ctx, const char* what) {
  if (ctx.mode() != RingMode::TwoCopy) throw ParameterError(fmt::format("{} needs a two-copy context", what));
}

void require_even(const AlgebraContext& ctx, const char* what) {
  if (!ctx.anticommuting())
    throw UnsupportedCase(fmt::format("{} is only supported for even d (got d={})", what, ctx.d()));
}

Element difference(const AlgebraContext& ctx, int i, int j) {
  return subtract(ctx, Element::generator(ctx, Copy::Unprimed, i, j), Element::generator(ctx, Copy::Primed, i, j));
}

// reduce(a * b), split over chunks of a's terms.
Element multiply_reduced(const AlgebraContext& ctx, const Element& a, const Element& b, ExecPolicy policy) {
  constexpr std::size_t kChunk = 256;
  const auto& terms = a.terms();
  if (policy == ExecPolicy::Serial || terms.size() <= kChunk) return reduce(ctx, multiply(ctx, a, b));
  const long chunks = static_cast<long>((terms.size() + kChunk - 1) / kChunk);
  std::vector<Element> parts(static_cast<std::size_t>(chunks), Element::zero(ctx));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));
#ifdef FNCOHOM_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (long k = 0; k < chunks; ++k) {
    try {
      const std::size_t lo = static_cast<std::size_t>(k) * kChunk;
      const std::size_t hi = std::min(terms.size(), lo + kChunk);
      const Element piece = Element::from_terms(ctx, std::vector<Term>(terms.begin() + static_cast<long>(lo),
                                                                       terms.begin() + static_cast<long>(hi)));
      parts[static_cast<std::size_t>(k)] = reduce(ctx, multiply(ctx, piece, b));
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  TermAccumulator acc;
  for (const Element& p : parts)
    for (const Term& t : p.terms()) acc.add(t.mono, t.coeff);
  return std::move(acc).finish(ctx);
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) return std::numeric_limits<std::uint64_t>::max();
  return r;
}

std::uint64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t next = saturating_mul(r, static_cast<std::uint64_t>(n - k + i));
    if (next == std::numeric_limits<std::uint64_t>::max()) return next;
    r = next / static_cast<std::uint64_t>(i);
  }
  return r;
}

}  // namespace

KernelIdeal ideal_generators(const AlgebraContext& ctx) {
  require_two_copy(ctx, "the kernel ideal");
  KernelIdeal ideal;
  for (int j = ctx.m() + 1; j <= ctx.points(); ++j)
    for (int i = 1; i < j; ++i) {
      ideal.generators.push_back(difference(ctx, i, j));
      ideal.pairs.push_back({i, j});
    }
  return ideal;
}

Element delta_star(const AlgebraContext& ctx, const Element& e) {
  require_two_copy(ctx, "delta_star");
  require_context(ctx, e);
  const AlgebraContext one = ctx.one_copy();
  std::vector<GenIndex> image(static_cast<std::size_t>(ctx.generator_count()));
  for (GenIndex g = 0; g < ctx.generator_count(); ++g) {
    const Generator& x = ctx.generator(g);
    image[static_cast<std::size_t>(g)] = one.index(Copy::Unprimed, x.i, x.j);
  }
  const bool anti = ctx.anticommuting();
  TermAccumulator acc;
  for (const Term& t : e.terms()) {
    SignedMonomial prod;
    bool vanished = false;
    t.mono.for_each([&](GenIndex g) {
      if (vanished) return;
      auto p = concatenate(prod.mono, Monomial::of(image[static_cast<std::size_t>(g)]), anti);
      if (!p) {
        vanished = true;
        return;
      }
      prod.mono = p->mono;
      prod.sign *= p->sign;
    });
    if (!vanished) acc.add(prod.mono, t.coeff, prod.sign);
  }
  return reduce(one, std::move(acc).finish(one));
}

Element psi(const AlgebraContext& ctx, ExecPolicy policy) {
  require_two_copy(ctx, "psi");
  require_even(ctx, "psi");
  const int m = ctx.m();
  const int total = ctx.points();
  Element acc = Element::one(ctx);
  for (int i = 1; i <= m; ++i) acc = multiply_reduced(ctx, acc, difference(ctx, i, m + 1), policy);
  for (int j = m + 2; j <= total; ++j) acc = multiply_reduced(ctx, acc, difference(ctx, 1, j), policy);
  for (int j = m + 2; j <= total; ++j) acc = multiply_reduced(ctx, acc, difference(ctx, j - 1, j), policy);
  return acc;
}

Monomial psi_witness(const AlgebraContext& ctx) {
  require_two_copy(ctx, "psi_witness");
  Monomial w;
  for (int j = 2; j <= ctx.points(); ++j) w = w.with(ctx.index(Copy::Unprimed, 1, j));
  for (int j = ctx.m() + 2; j <= ctx.points(); ++j) w = w.with(ctx.index(Copy::Primed, j - 1, j));
  return w;
}

std::string to_string(CertificateStatus s) { return s == CertificateStatus::Verified ? "verified" : "zero-witness"; }

PsiCertificate psi_certificate(const AlgebraContext& ctx, ExecPolicy policy) {
  PsiCertificate cert{psi(ctx, policy), psi_witness(ctx), 0, 0, CertificateStatus::ZeroWitness};
  cert.witness_coefficient = cert.psi_reduced.coefficient(cert.witness);
  if (cert.witness_coefficient != 0) {
    cert.status = CertificateStatus::Verified;
    cert.lower_bound = 2 * ctx.n() + ctx.m() - 2;
  }
  return cert;
}

std::string to_string(VanishingStatus s) {
  switch (s) {
    case VanishingStatus::Vanishes:
      return "vanishes";
    case VanishingStatus::DoesNotVanish:
      return "does-not-vanish";
    case VanishingStatus::NotChecked:
      return "not-checked";
  }
  return "?";
}

std::string to_string(VanishingReason r) {
  switch (r) {
    case VanishingReason::DegreeForced:
      return "degree-forced";
    case VanishingReason::InsufficientGenerators:
      return "insufficient-distinct-generators";
    case VanishingReason::Exhaustive:
      return "exhaustive";
    case VanishingReason::Counterexample:
      return "counterexample";
    case VanishingReason::BudgetExceeded:
      return "budget-exceeded";
  }
  return "?";
}

VanishingResult ideal_power_vanishes(const AlgebraContext& ctx, int q, std::uint64_t budget, ExecPolicy policy) {
  require_two_copy(ctx, "ideal_power_vanishes");
  require_even(ctx, "ideal_power_vanishes");
  if (q < 1) throw ParameterError(fmt::format("ideal power q must be >= 1 (got {})", q));

  const KernelIdeal ideal = ideal_generators(ctx);
  VanishingResult res;
  res.q = q;
  res.products = choose(ideal.count(), q);
  const PoincarePolynomial p = poincare_polynomial(ctx, Space::Pair);
  for (int s = 0; s <= ctx.top_step() - q; ++s) res.complementary += p.at(s);
  res.work = saturating_mul(res.products, res.complementary);

  if (q > ctx.top_step()) {
    res.status = VanishingStatus::Vanishes;
    res.reason = VanishingReason::DegreeForced;
    return res;
  }
  if (q > ideal.count()) {
    res.status = VanishingStatus::Vanishes;
    res.reason = VanishingReason::InsufficientGenerators;
    return res;
  }
  if (res.work > budget) {
    res.status = VanishingStatus::NotChecked;
    res.reason = VanishingReason::BudgetExceeded;
    return res;
  }

  std::vector<std::vector<int>> subsets;
  subsets.reserve(res.products);
  std::vector<int> pick;
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(pick.size()) == q) {
      subsets.push_back(pick);
      return;
    }
    for (int x = next; x <= ideal.count() - (q - static_cast<int>(pick.size())); ++x) {
      pick.push_back(x);
      self(self, x + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);

  const long count = static_cast<long>(subsets.size());
  std::vector<char> survives(subsets.size(), 0);
  std::vector<std::exception_ptr> errors(subsets.size());
  auto check = [&](long k) {
    try {
      Element prod = Element::one(ctx);
      for (int x : subsets[static_cast<std::size_t>(k)]) {
        prod = reduce(ctx, multiply(ctx, prod, ideal.generators[static_cast<std::size_t>(x)]));
        if (prod.is_zero()) break;
      }
      survives[static_cast<std::size_t>(k)] = prod.is_zero() ? 0 : 1;
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  };
  if (policy == ExecPolicy::Parallel) {
#ifdef FNCOHOM_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (long k = 0; k < count; ++k) check(k);
  } else {
    for (long k = 0; k < count; ++k) check(k);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  res.products_checked = subsets.size();
  const auto hit = std::find(survives.begin(), survives.end(), 1);
  if (hit != survives.end()) {
    res.status = VanishingStatus::DoesNotVanish;
    res.reason = VanishingReason::Counterexample;
    res.counterexample = subsets[static_cast<std::size_t>(hit - survives.begin())];
  } else {
    res.status = VanishingStatus::Vanishes;
    res.reason = VanishingReason::Exhaustive;
  }
  return res;
}

CupLengthCertificate cup_length_bounds(const AlgebraContext& ctx, std::uint64_t budget, ExecPolicy policy) {
  CupLengthCertificate cert;
  cert.m = ctx.m();
  cert.n = ctx.n();
  cert.d = ctx.d();
  cert.lower = psi_certificate(ctx, policy);
  cert.lower_bound = cert.lower.lower_bound;
  const int q = 2 * ctx.n() + ctx.m() - 1;
  cert.vanishing = ideal_power_vanishes(ctx, q, budget, policy);
  if (cert.vanishing.status == VanishingStatus::Vanishes) cert.upper_bound = q - 1;
  if (cert.upper_bound && cert.lower.status == CertificateStatus::Verified && cert.lower_bound == *cert.upper_bound)
    cert.verdict = cert.lower_bound;
  return cert;
}

PtcResult ptc_value(const AlgebraContext& ctx, std::uint64_t budget, ExecPolicy policy) {
  require_two_copy(ctx, "ptc");
  const int m = ctx.m();
  const int n = ctx.n();
  const int d = ctx.d();
  if (!ctx.anticommuting())
    throw UnsupportedCase(fmt::format(
        "ptc for odd d is outside the supported range; the value known for odd d is 2n+m-1 = {}", 2 * n + m - 1));

  PtcResult out;
  out.value = 2 * n + m - 2;
  out.certificate = cup_length_bounds(ctx, budget, policy);
  const auto& cert = out.certificate;
  const int q = 2 * n + m - 1;

  std::string lower = fmt::format("psi has {} basis terms; witness coefficient {}; ", cert.lower.psi_reduced.size(),
                                  cert.lower.witness_coefficient.get_str());
  if (cert.lower.status == CertificateStatus::Verified)
    lower += fmt::format("cup length of the kernel ideal is at least {}", cert.lower_bound);
  else
    lower += "witness vanished, no lower bound certified";
  lower += fmt::format("; J^{}: {} ({})", q, to_string(cert.vanishing.status), to_string(cert.vanishing.reason));
  if (cert.verdict) lower += fmt::format("; cup length is exactly {}", *cert.verdict);
  out.provenance.push_back({"cup-length lower bound", lower, true});

  if (d == 2 && m >= 3) {
    out.provenance.push_back(
        {"planar upper bound",
         fmt::format("the planar trivialization reduces to m-2 = {} base points, and 2 dim X + dim B' = 2n + (m-2) = {}",
                     m - 2, 2 * n + m - 2),
         false});
  } else if (d == 2 && m == 2) {
    out.provenance.push_back(
        {"planar upper bound",
         fmt::format("the bundle is trivial for m = 2, so the value is the TC of Conf(C minus {{0,1}}, n), "
                     "which is 2n = {}",
                     2 * n),
         false});
  } else if (d == 2 && m == 1) {
    out.provenance.push_back(
        {"planar upper bound",
         "m = 1: the base is a point; the upper bound is not reproduced here", false});
  } else {
    out.provenance.push_back(
        {"obstruction upper bound",
         fmt::format("hdim(E x_B E) = {}(d-1); the obstruction classes land in J^{}, which vanishes, giving {}", q, q,
                     2 * n + m - 2),
         false});
  }
  if (m == 1)
    out.provenance.push_back(
        {"m = 1 remark",
         fmt::format("the formula value {} is reported as stated; the fiber TC value 2n = {} quoted for "
                     "obstacle-avoiding fibers uses a different convention and is not asserted here",
                     2 * n - 1, 2 * n),
         false});
  return out;
}

}  // namespace fncohom
