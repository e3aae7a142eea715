// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <fmt/core.h>

#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fncohom/normal_form.hpp"
#include "fncohom/oracle.hpp"
#include "fncohom/sampling.hpp"
#include "fncohom/tc_bounds.hpp"
#include "fncohom/trivialization.hpp"

using namespace fncohom;

namespace {

// Pinned limits.
constexpr double kBasisSeconds = 300.0;
constexpr double kClosureSeconds = 600.0;
constexpr double kTrivializationSeconds = 5.0;
constexpr double kRoundtripTolerance = 1e-9;
constexpr int kReducerSamples = 1000;
constexpr int kRoundtripSamples = 1000;

struct Outcome {
  bool pass = true;
  std::string detail;
  int checks = 0;

  void require(bool ok, const std::string& what) {
    ++checks;
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<std::pair<int, int>> sizes(int max_points, int min_m = 1) {
  std::vector<std::pair<int, int>> out;
  for (int m = min_m; m < max_points; ++m)
    for (int n = 1; m + n <= max_points; ++n) out.push_back({m, n});
  return out;
}

int failures = 0;

void criterion(int id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = fmt::format("exception: {}", e.what());
  }
  const double secs = seconds_since(t0);
  if (!o.pass) ++failures;
  fmt::print("[{}] {}. {}: {} checks, {:.1f} s{}\n", o.pass ? "PASS" : "FAIL", id, title, o.checks, secs,
             o.detail.empty() ? "" : " -- " + o.detail);
  std::fflush(stdout);
}

// Reports computed once for criterion 1 and reused by criterion 9.
std::vector<OracleReport> pair_reports;

}  // namespace

int main() {
  criterion(1, "basis validation, m+n<=6, d in {2,4}", [](Outcome& o) {
    const auto t0 = Clock::now();
    for (int d : {2, 4}) {
      HomologyOracle oracle;  // fresh per d: no reuse of the other parity's cache
      for (auto [m, n] : sizes(6)) {
        const AlgebraContext ctx(m, n, d, RingMode::TwoCopy);
        const PoincarePolynomial p = poincare_polynomial(m, n, Space::Base) * poincare_polynomial(m, n, Space::Fiber) *
                                     poincare_polynomial(m, n, Space::Fiber);
        const OracleReport r = oracle.report(m, n, d, Space::Pair, ctx.top_step() + 1);
        const auto dims = r.dimensions();
        const std::string tag = fmt::format("(m,n,d)=({},{},{})", m, n, d);
        for (int s = 0; s <= ctx.top_step() + 1; ++s) {
          const auto k = static_cast<std::size_t>(s);
          o.require(dims[k] == p.at(s), fmt::format("{} step {}: dim {} vs Poincare {}", tag, s, dims[k], p.at(s)));
          o.require(basis_enumerate(ctx, s).size() == p.at(s), fmt::format("{} step {}: basis count", tag, s));
        }
        o.require(r.torsion_free(), tag + ": torsion");
        o.require(r.basis_match(), tag + ": candidate basis does not span");
        pair_reports.push_back(r);
      }
    }
    const double secs = seconds_since(t0);
    o.require(secs <= kBasisSeconds, fmt::format("runtime {:.1f} s exceeds {:.0f} s", secs, kBasisSeconds));
  });

  criterion(2, "reduce() == oracle projection on seeded random elements, m+n<=5", [](Outcome& o) {
    std::mt19937_64 rng(20240601);
    for (int d : {2, 3}) {
      HomologyOracle oracle;
      for (auto [m, n] : sizes(5)) {
        const AlgebraContext ctx(m, n, d, RingMode::TwoCopy);
        int bad = 0;
        for (int t = 0; t < kReducerSamples; ++t) {
          const Element e = random_homogeneous(ctx, 6, rng);
          if (reduce(ctx, e) != oracle.project(ctx, e)) ++bad;
        }
        o.require(bad == 0, fmt::format("(m,n,d)=({},{},{}): {} mismatches", m, n, d, bad));
      }
    }
  });

  criterion(3, "closed-form column expansion, m+n<=6, both copies", [](Outcome& o) {
    for (int d : {2, 3})
      for (auto [m, n] : sizes(6)) {
        const AlgebraContext ctx(m, n, d, RingMode::TwoCopy);
        const int N = ctx.points();
        for (int r = 2; r <= N; ++r)
          for (unsigned mask = 1; mask < (1U << (r - 1)); ++mask) {
            std::vector<int> J;
            for (int j = 1; j < r; ++j)
              if (mask & (1U << (j - 1))) J.push_back(j);
            o.require(admissible_sequences(J).size() == (std::size_t{1} << (J.size() - 1)),
                      fmt::format("admissible count for |J|={}", J.size()));
            for (Copy copy : {Copy::Unprimed, Copy::Primed}) {
              Element lhs = Element::one(ctx);
              for (int j : J) lhs = multiply(ctx, lhs, Element::generator(ctx, copy, j, r));
              o.require(expand_constant_column(ctx, J, r, copy) == reduce(ctx, lhs),
                        fmt::format("(m,n,d)=({},{},{}) r={} mask={}", m, n, d, r, mask));
            }
          }
      }
  });

  criterion(4, "Psi nonzero with unit witness coefficient, m+n<=6, d in {2,4}", [](Outcome& o) {
    for (int d : {2, 4})
      for (auto [m, n] : sizes(6)) {
        const AlgebraContext ctx(m, n, d, RingMode::TwoCopy);
        const PsiCertificate c = psi_certificate(ctx, ExecPolicy::Parallel);
        const std::string tag = fmt::format("(m,n,d)=({},{},{})", m, n, d);
        o.require(!c.psi_reduced.is_zero(), tag + ": Psi is zero");
        o.require(abs(c.witness_coefficient) == 1,
                  fmt::format("{}: witness coefficient {}", tag, c.witness_coefficient.get_str()));
        o.require(c.lower_bound == 2 * n + m - 2, tag + ": lower bound");
      }
  });

  criterion(5, "ideal power J^(2n+m-1) vanishes, verdict 2n+m-2", [](Outcome& o) {
    for (int d : {2, 4})
      for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {4, 1}}) {
        const auto t0 = Clock::now();
        const AlgebraContext ctx(m, n, d, RingMode::TwoCopy);
        const std::string tag = fmt::format("(m,n,d)=({},{},{})", m, n, d);
        const VanishingResult v = ideal_power_vanishes(ctx, 2 * n + m - 1);
        o.require(v.status == VanishingStatus::Vanishes,
                  fmt::format("{}: {} ({})", tag, to_string(v.status), to_string(v.reason)));
        const CupLengthCertificate c = cup_length_bounds(ctx);
        o.require(c.verdict == 2 * n + m - 2, tag + ": no closed verdict");
        const double secs = seconds_since(t0);
        o.require(secs <= kClosureSeconds, fmt::format("{}: {:.1f} s", tag, secs));
      }
  });

  criterion(6, "ptc value 2n+m-2 for even d", [](Outcome& o) {
    for (int d : {2, 4})
      for (auto [m, n] : sizes(6)) {
        const AlgebraContext ctx(m, n, d, RingMode::TwoCopy);
        const PtcResult r = ptc_value(ctx);
        const std::string tag = fmt::format("(m,n,d)=({},{},{})", m, n, d);
        o.require(r.value == 2 * n + m - 2, tag + ": value");
        if (r.certificate.verdict) o.require(*r.certificate.verdict == r.value, tag + ": certificate disagrees");
        o.require(r.certificate.lower_bound == r.value, tag + ": lower bound");
        if (m == 2 && d == 2) o.require(r.value == 2 * n, tag + ": planar two-obstacle value");
      }
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {4, 1}})
      for (int d : {2, 4})
        o.require(ptc_value(AlgebraContext(m, n, d, RingMode::TwoCopy)).certificate.verdict.has_value(),
                  fmt::format("(m,n,d)=({},{},{}): certificate not closed", m, n, d));
  });

  criterion(7, "delta_star kills the kernel ideal and Psi", [](Outcome& o) {
    for (int d : {2, 3, 4})
      for (auto [m, n] : sizes(8)) {
        const AlgebraContext ctx(m, n, d, RingMode::TwoCopy);
        for (const Element& g : ideal_generators(ctx).generators)
          o.require(delta_star(ctx, g).is_zero(), fmt::format("(m,n,d)=({},{},{}): generator survives", m, n, d));
      }
    for (int d : {2, 4})
      for (auto [m, n] : sizes(6)) {
        const AlgebraContext ctx(m, n, d, RingMode::TwoCopy);
        o.require(delta_star(ctx, psi(ctx, ExecPolicy::Parallel)).is_zero(),
                  fmt::format("(m,n,d)=({},{},{}): delta_star(Psi) != 0", m, n, d));
      }
  });

  criterion(8, "planar trivialization roundtrip", [](Outcome& o) {
    const auto t0 = Clock::now();
    const RoundtripStats s = roundtrip_experiment(kRoundtripSamples, 6, 7, 1e3, 1e-3);
    const double secs = seconds_since(t0);
    o.require(s.samples == kRoundtripSamples, "sample count");
    o.require(s.max_forward_error < kRoundtripTolerance, fmt::format("forward error {:.3e}", s.max_forward_error));
    o.require(s.max_inverse_error < kRoundtripTolerance, fmt::format("inverse error {:.3e}", s.max_inverse_error));
    o.require(secs <= kTrivializationSeconds, fmt::format("runtime {:.2f} s", secs));
  });

  criterion(9, "top oracle degrees of B, E, X, ExBE", [](Outcome& o) {
    for (int d : {2, 4}) {
      HomologyOracle oracle;
      for (auto [m, n] : sizes(6)) {
        const int g = d - 1;
        const std::string tag = fmt::format("(m,n,d)=({},{},{})", m, n, d);
        auto top = [&](Space s, int bound) { return oracle.report(m, n, d, s, bound + 1).top_step() * g; };
        o.require(top(Space::Base, m - 1) == (m - 1) * g, tag + ": B");
        o.require(top(Space::Total, m + n - 1) == (m + n - 1) * g, tag + ": E");
        o.require(top(Space::Fiber, n) == n * g, tag + ": X");
      }
    }
    o.require(!pair_reports.empty(), "criterion 1 produced no reports");
    for (const OracleReport& r : pair_reports)
      o.require(r.top_step() * (r.d - 1) == (2 * r.n + r.m - 1) * (r.d - 1),
                fmt::format("(m,n,d)=({},{},{}): ExBE", r.m, r.n, r.d));
  });

  fmt::print("{}\n", failures == 0 ? "all criteria passed" : fmt::format("{} criteria failed", failures));
  return failures == 0 ? 0 : 1;
}
