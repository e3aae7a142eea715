#include "fncohom/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "fncohom/normal_form.hpp"
#include "fncohom/oracle.hpp"
#include "fncohom/sampling.hpp"
#include "fncohom/serialize.hpp"
#include "fncohom/tc_bounds.hpp"
#include "fncohom/trivialization.hpp"

namespace fncohom::cli {

namespace {

using nlohmann::ordered_json;

struct Shape {
  int m = 0;
  int n = 0;
  int d = 2;
  std::string mode = "two";

  AlgebraContext context() const { return AlgebraContext(m, n, d, mode == "one" ? RingMode::OneCopy : RingMode::TwoCopy); }
};

void add_shape(CLI::App* sub, Shape& s, bool with_mode) {
  sub->add_option("--m", s.m, "obstacle count")->required()->check(CLI::Range(1, 64));
  sub->add_option("--n", s.n, "robot count")->required()->check(CLI::Range(1, 64));
  sub->add_option("--d", s.d, "ambient dimension")->capture_default_str()->check(CLI::Range(2, 1000));
  if (with_mode)
    sub->add_option("--mode", s.mode, "one (Conf(R^d, m+n)) or two (E x_B E)")
        ->capture_default_str()
        ->check(CLI::IsMember({"one", "two"}));
}

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParameterError(fmt::format("cannot open '{}'", path));
  return read_all(f);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParameterError(fmt::format("'{}' is not a comma-separated list of integers", text));
    }
  }
  if (out.empty()) throw ParameterError("empty integer list");
  return out;
}

ordered_json shape_json(const Shape& s) {
  ordered_json j;
  j["m"] = s.m;
  j["n"] = s.n;
  j["d"] = s.d;
  return j;
}

void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

// ----- basis

struct BasisArgs {
  Shape shape;
  int step = -1;
  bool counts_only = false;
};

int cmd_basis(const BasisArgs& a, bool json, std::ostream& out) {
  const AlgebraContext ctx = a.shape.context();
  const int lo = a.step >= 0 ? a.step : 0;
  const int hi = a.step >= 0 ? a.step : ctx.top_step();
  ordered_json j = shape_json(a.shape);
  j["mode"] = a.shape.mode;
  j["steps"] = ordered_json::array();
  for (int s = lo; s <= hi; ++s) {
    const auto basis = basis_enumerate(ctx, s);
    if (json) {
      ordered_json rec;
      rec["step"] = s;
      rec["degree"] = s * ctx.gen_degree();
      rec["count"] = basis.size();
      if (!a.counts_only) {
        rec["monomials"] = ordered_json::array();
        for (const auto& mono : basis) rec["monomials"].push_back(to_json(ctx, mono));
      }
      j["steps"].push_back(std::move(rec));
    } else {
      out << fmt::format("step {} (degree {}): {} monomials\n", s, s * ctx.gen_degree(), basis.size());
      if (!a.counts_only)
        for (const auto& mono : basis) out << "  " << to_text(ctx, mono) << '\n';
    }
  }
  if (json) emit(out, j);
  return kOk;
}

// ----- reduce

struct ReduceArgs {
  Shape shape;
  std::string input;
  std::string expr;
};

int cmd_reduce(const ReduceArgs& a, bool json, std::istream& in, std::ostream& out) {
  const AlgebraContext ctx = a.shape.context();
  std::string src;
  if (!a.expr.empty())
    src = a.expr;
  else if (!a.input.empty() && a.input != "-")
    src = read_file(a.input);
  else
    src = read_all(in);
  const Element e = parse_element(ctx, src);
  const Element r = reduce(ctx, e);
  if (json) {
    ordered_json j = shape_json(a.shape);
    j["mode"] = a.shape.mode;
    j["terms"] = r.size();
    j["element"] = to_json(ctx, r);
    emit(out, j);
  } else {
    out << to_text(ctx, r) << '\n';
  }
  return kOk;
}

// ----- expand

struct ExpandArgs {
  Shape shape;
  std::string J;
  int r = 0;
  std::string copy = "w";
};

int cmd_expand(const ExpandArgs& a, bool json, std::ostream& out) {
  const AlgebraContext ctx = a.shape.context();
  const auto J = parse_int_list(a.J);
  const Copy copy = a.copy == "wp" ? Copy::Primed : Copy::Unprimed;
  const Element closed = expand_constant_column(ctx, J, a.r, copy);
  Element column = Element::one(ctx);
  for (int j : J) column = multiply(ctx, column, Element::generator(ctx, copy, j, a.r));
  const bool agrees = reduce(ctx, column) == closed;
  if (json) {
    ordered_json j = shape_json(a.shape);
    j["J"] = J;
    j["r"] = a.r;
    j["copy"] = a.copy;
    j["terms"] = closed.size();
    j["matches_reduce"] = agrees;
    j["element"] = to_json(ctx, closed);
    emit(out, j);
  } else {
    out << to_text(ctx, closed) << '\n';
    out << (agrees ? "matches reduce()\n" : "DIFFERS from reduce()\n");
  }
  return agrees ? kOk : kFailed;
}

// ----- admissible

int cmd_admissible(const std::string& Jtext, bool json, std::ostream& out) {
  const auto J = parse_int_list(Jtext);
  const auto seqs = admissible_sequences(J);
  if (json) {
    ordered_json j;
    j["J"] = J;
    j["count"] = seqs.size();
    j["sequences"] = ordered_json::array();
    for (const auto& s : seqs) {
      ordered_json rec;
      rec["indices"] = s.indices;
      rec["distinct"] = s.distinct;
      j["sequences"].push_back(std::move(rec));
    }
    emit(out, j);
  } else {
    for (const auto& s : seqs) {
      std::string idx;
      for (std::size_t k = 0; k < s.indices.size(); ++k) idx += (k ? "," : "") + std::to_string(s.indices[k]);
      out << fmt::format("({})  d_I = {}\n", idx, s.distinct);
    }
  }
  return kOk;
}

// ----- poincare

struct PoincareArgs {
  int m = 0;
  int n = 0;
  int d = 2;
  std::string space = "all";
};

int cmd_poincare(const PoincareArgs& a, bool json, std::ostream& out) {
  std::vector<Space> spaces;
  if (a.space == "all")
    spaces = {Space::Base, Space::Total, Space::Fiber, Space::Pair};
  else
    spaces = {space_from_string(a.space)};
  ordered_json j;
  j["m"] = a.m;
  j["n"] = a.n;
  j["d"] = a.d;
  j["spaces"] = ordered_json::array();
  for (Space s : spaces) {
    const auto p = poincare_polynomial(a.m, a.n, s);
    const int top = p.top_step();
    if (json) {
      ordered_json rec;
      rec["space"] = to_string(s);
      rec["coefficients"] = p.coefficients;
      rec["total"] = p.total();
      rec["top_step"] = top;
      rec["top_degree"] = top * (a.d - 1);
      j["spaces"].push_back(std::move(rec));
    } else {
      std::string coeffs;
      for (std::size_t k = 0; k < p.coefficients.size(); ++k) coeffs += (k ? " " : "") + std::to_string(p.coefficients[k]);
      out << fmt::format("{:<5} {}  (top degree {})\n", to_string(s), coeffs, top * (a.d - 1));
    }
  }
  if (json) emit(out, j);
  return kOk;
}

// ----- oracle-verify

struct OracleArgs {
  Shape shape;
  std::string space = "EXBE";
  int max_step = -1;
  std::uint64_t cap = OracleOptions{}.size_cap;
  std::uint64_t forest_cap = OracleOptions{}.forest_cap;
  std::string spanning = "auto";
  bool serial = false;
  int samples = 0;
  std::uint64_t seed = 1;
};

int cmd_oracle(const OracleArgs& a, bool json, std::ostream& out) {
  const Space space = space_from_string(a.space);
  OracleOptions opt;
  opt.size_cap = a.cap;
  opt.forest_cap = a.forest_cap;
  opt.spanning = a.spanning == "full" ? SpanningMode::Full
                 : a.spanning == "forest" ? SpanningMode::Forest
                                          : SpanningMode::Auto;
  opt.policy = a.serial ? ExecPolicy::Serial : ExecPolicy::Parallel;
  HomologyOracle oracle(opt);

  const auto expected = poincare_polynomial(a.shape.m, a.shape.n, space);
  const int top = expected.top_step();
  const int max_step = a.max_step >= 0 ? a.max_step : top + 1;
  const OracleReport rep = oracle.report(a.shape.m, a.shape.n, a.shape.d, space, max_step);

  bool poincare_match = true;
  for (const auto& deg : rep.degrees) poincare_match = poincare_match && deg.dimension == expected.at(deg.step);

  int sample_failures = 0;
  if (a.samples > 0) {
    if (space != Space::Pair && space != Space::Total)
      throw ParameterError("--samples needs --space EXBE or E (elements of the algebra contexts)");
    const AlgebraContext ctx(a.shape.m, a.shape.n, a.shape.d, space == Space::Pair ? RingMode::TwoCopy : RingMode::OneCopy);
    std::mt19937_64 rng(a.seed);
    for (int k = 0; k < a.samples; ++k) {
      const Element e = random_homogeneous(ctx, 4, rng);
      if (reduce(ctx, e) != oracle.project(ctx, e)) ++sample_failures;
    }
  }
  const bool ok = poincare_match && rep.torsion_free() && rep.basis_match() && sample_failures == 0;

  if (json) {
    ordered_json j = shape_json(a.shape);
    j["space"] = to_string(space);
    j["max_step"] = max_step;
    j["dimensions"] = rep.dimensions();
    j["poincare"] = expected.coefficients;
    j["poincare_match"] = poincare_match;
    j["torsion_free"] = rep.torsion_free();
    j["basis_match"] = rep.basis_match();
    j["top_step"] = rep.top_step();
    j["top_degree"] = rep.top_step() * (a.shape.d - 1);
    ordered_json degs = ordered_json::array();
    for (const auto& deg : rep.degrees) {
      ordered_json rec;
      rec["step"] = deg.step;
      rec["spanning_mode"] = to_string(deg.mode);
      rec["spanning"] = deg.spanning;
      rec["rows"] = deg.rows;
      rec["blocks"] = deg.blocks;
      rec["rank"] = deg.rank;
      rec["dimension"] = deg.dimension;
      rec["candidates"] = deg.candidates;
      rec["basis_match"] = deg.basis_match;
      ordered_json tors = ordered_json::array();
      for (const auto& t : deg.torsion) tors.push_back(t.get_str());
      rec["torsion"] = tors;
      degs.push_back(std::move(rec));
    }
    j["degrees"] = degs;
    if (a.samples > 0) {
      j["samples"] = a.samples;
      j["seed"] = a.seed;
      j["sample_failures"] = sample_failures;
    }
    j["ok"] = ok;
    emit(out, j);
  } else {
    out << fmt::format("{} for m={} n={} d={}\n", to_string(space), a.shape.m, a.shape.n, a.shape.d);
    out << "step  mode    spanning      rows  blocks  dimension  expected  basis\n";
    for (const auto& deg : rep.degrees)
      out << fmt::format("{:>4}  {:<6} {:>9} {:>9} {:>7} {:>10} {:>9}  {}\n", deg.step, to_string(deg.mode),
                         deg.spanning, deg.rows, deg.blocks, deg.dimension, expected.at(deg.step),
                         deg.basis_match ? "match" : "MISMATCH");
    out << fmt::format("torsion-free: {}\n", rep.torsion_free() ? "yes" : "NO");
    out << fmt::format("top degree: {}\n", rep.top_step() * (a.shape.d - 1));
    if (a.samples > 0) out << fmt::format("reduce vs projection: {}/{} agree\n", a.samples - sample_failures, a.samples);
    out << (ok ? "verified\n" : "FAILED\n");
  }
  return ok ? kOk : kFailed;
}

// ----- tc-bounds commands

std::uint64_t effective_budget(const CLI::Option* flag, std::uint64_t given) {
  if (flag->count() > 0) return given;
  if (const char* env = std::getenv(kBudgetEnv)) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ParameterError(fmt::format("{} must be a nonnegative integer (got '{}')", kBudgetEnv, env));
  }
  return kDefaultBudget;
}

ordered_json psi_json(const AlgebraContext& ctx, const PsiCertificate& c, bool brief) {
  ordered_json j;
  j["status"] = to_string(c.status);
  j["factors"] = 2 * ctx.n() + ctx.m() - 2;
  j["degree"] = (2 * ctx.n() + ctx.m() - 2) * ctx.gen_degree();
  j["terms"] = c.psi_reduced.size();
  j["witness"] = to_json(ctx, c.witness);
  j["witness_coefficient"] = c.witness_coefficient.get_str();
  j["lower_bound"] = c.lower_bound;
  if (!brief) j["psi_reduced"] = to_json(ctx, c.psi_reduced);
  return j;
}

ordered_json vanishing_json(const VanishingResult& v) {
  ordered_json j;
  j["q"] = v.q;
  j["status"] = to_string(v.status);
  j["reason"] = to_string(v.reason);
  j["products"] = v.products;
  j["complementary"] = v.complementary;
  j["work"] = v.work;
  j["products_checked"] = v.products_checked;
  if (!v.counterexample.empty()) j["counterexample"] = v.counterexample;
  return j;
}

ordered_json certificate_json(const AlgebraContext& ctx, const CupLengthCertificate& c, bool brief) {
  ordered_json j;
  j["m"] = c.m;
  j["n"] = c.n;
  j["d"] = c.d;
  j["psi"] = psi_json(ctx, c.lower, brief);
  j["lower_bound"] = c.lower_bound;
  if (c.vanishing.status == VanishingStatus::Vanishes && c.vanishing.reason == VanishingReason::DegreeForced)
    j["vanishing_exponent"] = "degree-forced";
  else if (c.vanishing.status == VanishingStatus::Vanishes)
    j["vanishing_exponent"] = c.vanishing.q;
  else
    j["vanishing_exponent"] = "not checked";
  j["vanishing"] = vanishing_json(c.vanishing);
  j["upper_bound"] = c.upper_bound ? ordered_json(*c.upper_bound) : ordered_json(nullptr);
  if (c.verdict) {
    j["verdict"] = *c.verdict;
  } else {
    ordered_json iv;
    iv["lower"] = c.lower_bound;
    iv["upper"] = c.upper_bound ? ordered_json(*c.upper_bound) : ordered_json(nullptr);
    j["verdict"] = iv;
  }
  return j;
}

bool certificate_failed(const CupLengthCertificate& c) {
  return c.lower.status != CertificateStatus::Verified || c.vanishing.status == VanishingStatus::DoesNotVanish;
}

std::string verdict_text(const CupLengthCertificate& c) {
  if (c.verdict) return std::to_string(*c.verdict);
  return fmt::format("[{}, {}]", c.lower_bound, c.upper_bound ? std::to_string(*c.upper_bound) : "?");
}

int cmd_psi(const Shape& s, bool brief, bool json, std::ostream& out) {
  const AlgebraContext ctx = s.context();
  const PsiCertificate c = psi_certificate(ctx, ExecPolicy::Parallel);
  if (json) {
    ordered_json j = shape_json(s);
    j.update(psi_json(ctx, c, brief));
    emit(out, j);
  } else {
    if (!brief) out << to_text(ctx, c.psi_reduced) << '\n';
    out << fmt::format("terms: {}\nwitness: {}\nwitness coefficient: {}\n", c.psi_reduced.size(),
                       to_text(ctx, c.witness), c.witness_coefficient.get_str());
    out << (c.status == CertificateStatus::Verified ? fmt::format("lower bound: {}\n", c.lower_bound)
                                                    : std::string("ZERO WITNESS: certificate failed\n"));
  }
  return c.status == CertificateStatus::Verified ? kOk : kFailed;
}

int cmd_cuplength(const Shape& s, std::uint64_t budget, bool brief, bool json, std::ostream& out) {
  const AlgebraContext ctx = s.context();
  const CupLengthCertificate c = cup_length_bounds(ctx, budget);
  if (json) {
    emit(out, certificate_json(ctx, c, brief));
  } else {
    out << fmt::format("witness coefficient: {} ({})\n", c.lower.witness_coefficient.get_str(), to_string(c.lower.status));
    out << fmt::format("lower bound: {}\n", c.lower_bound);
    out << fmt::format("J^{}: {} ({}, {} products checked)\n", c.vanishing.q, to_string(c.vanishing.status),
                       to_string(c.vanishing.reason), c.vanishing.products_checked);
    out << fmt::format("upper bound: {}\n", c.upper_bound ? std::to_string(*c.upper_bound) : "unknown");
    out << fmt::format("verdict: {}\n", verdict_text(c));
  }
  return certificate_failed(c) ? kFailed : kOk;
}

int cmd_ptc(const Shape& s, std::uint64_t budget, bool json, std::ostream& out) {
  const AlgebraContext ctx = s.context();
  const PtcResult r = ptc_value(ctx, budget);
  if (json) {
    ordered_json j;
    j["value"] = r.value;
    j["m"] = s.m;
    j["n"] = s.n;
    j["d"] = s.d;
    j["certificate"] = certificate_json(ctx, r.certificate, true);
    ordered_json prov = ordered_json::array();
    for (const auto& p : r.provenance) {
      ordered_json rec;
      rec["label"] = p.label;
      rec["statement"] = p.statement;
      rec["computed"] = p.computed;
      prov.push_back(std::move(rec));
    }
    j["provenance"] = prov;
    emit(out, j);
  } else {
    out << fmt::format("ptc = {}\n", r.value);
    out << fmt::format("certificate verdict: {}\n", verdict_text(r.certificate));
    for (const auto& p : r.provenance)
      out << fmt::format("- {} [{}]: {}\n", p.label, p.computed ? "computed" : "cited, not computed", p.statement);
  }
  return certificate_failed(r.certificate) ? kFailed : kOk;
}

// ----- trivialize

PlanarConfiguration points_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw ParameterError(fmt::format("{} must be a list of [re, im] pairs", what));
  PlanarConfiguration cfg;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw ParameterError(fmt::format("{} must be a list of [re, im] pairs", what));
    cfg.points.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return cfg;
}

ordered_json points_json(const PlanarConfiguration& cfg) {
  ordered_json a = ordered_json::array();
  for (const Point& p : cfg.points) a.push_back({p.real(), p.imag()});
  return a;
}

struct TrivializeArgs {
  std::string input;
  std::string points;
  bool inverse = false;
  double threshold = kDistinctThreshold;
};

int cmd_trivialize(const TrivializeArgs& a, bool json, std::istream& in, std::ostream& out) {
  std::string src = !a.points.empty() ? a.points : (!a.input.empty() && a.input != "-" ? read_file(a.input) : read_all(in));
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(src);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(fmt::format("invalid JSON input: {}", e.what()));
  }
  ordered_json result;
  if (!a.inverse) {
    const nlohmann::json& pts = j.is_object() ? j.at("points") : j;
    const Trivialized t = trivialize(points_from_json(pts, "points"), a.threshold);
    result["fiber"] = points_json(t.fiber);
    result["base"] = points_json(t.base);
  } else {
    if (!j.is_object() || !j.contains("fiber") || !j.contains("base"))
      throw ParameterError("--inverse expects {\"fiber\": [...], \"base\": [...]}");
    result["points"] = points_json(untrivialize(points_from_json(j["fiber"], "fiber"), points_from_json(j["base"], "base"),
                                                a.threshold));
  }
  out << (json ? result.dump(2) : result.dump()) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cohomology rings of obstacle-avoiding configuration bundles"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");

  BasisArgs basis;
  auto* c_basis = app.add_subcommand("basis", "enumerate the monomial basis per degree step");
  add_shape(c_basis, basis.shape, true);
  c_basis->add_option("--step", basis.step, "single step (default: all)")->check(CLI::NonNegativeNumber);
  c_basis->add_flag("--counts-only", basis.counts_only, "print counts only");

  ReduceArgs red;
  auto* c_reduce = app.add_subcommand("reduce", "normal form of an element (JSON or text, from --expr, --input or stdin)");
  add_shape(c_reduce, red.shape, true);
  c_reduce->add_option("--input", red.input, "file with the element ('-' for stdin)");
  c_reduce->add_option("--expr", red.expr, "element in text form, e.g. \"w(1,3)*w(2,3)\"");

  ExpandArgs exp;
  auto* c_expand = app.add_subcommand("expand", "closed-form expansion of w(j1,r)...w(jl,r)");
  add_shape(c_expand, exp.shape, true);
  c_expand->add_option("--J", exp.J, "strictly increasing list, e.g. 1,2")->required();
  c_expand->add_option("--r", exp.r, "common upper index")->required()->check(CLI::PositiveNumber);
  c_expand->add_option("--copy", exp.copy, "w or wp")->capture_default_str()->check(CLI::IsMember({"w", "wp"}));

  std::string adm_J;
  auto* c_adm = app.add_subcommand("admissible", "J-admissible sequences");
  c_adm->add_option("--J", adm_J, "strictly increasing list, e.g. 2,5,6")->required();

  PoincareArgs poin;
  auto* c_poin = app.add_subcommand("poincare", "Betti numbers from the product formulas");
  c_poin->add_option("--m", poin.m, "obstacle count")->required()->check(CLI::Range(1, 64));
  c_poin->add_option("--n", poin.n, "robot count")->required()->check(CLI::Range(1, 64));
  c_poin->add_option("--d", poin.d, "ambient dimension")->capture_default_str()->check(CLI::Range(2, 1000));
  c_poin->add_option("--space", poin.space, "B, E, X, EXBE or all")
      ->capture_default_str()
      ->check(CLI::IsMember({"B", "E", "X", "EXBE", "all"}));

  OracleArgs orc;
  auto* c_orc = app.add_subcommand("oracle-verify", "exact per-degree dimensions, torsion and basis check");
  add_shape(c_orc, orc.shape, false);
  c_orc->add_option("--space", orc.space, "B, E, X or EXBE")
      ->capture_default_str()
      ->check(CLI::IsMember({"B", "E", "X", "EXBE"}));
  c_orc->add_option("--max-step", orc.max_step, "highest degree step (default: top + 1)")
      ->check(CLI::NonNegativeNumber);
  c_orc->add_option("--cap", orc.cap, "squarefree monomials per degree in full mode")->capture_default_str();
  c_orc->add_option("--forest-cap", orc.forest_cap, "forest monomials per degree")->capture_default_str();
  c_orc->add_option("--spanning", orc.spanning, "auto, full or forest")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "full", "forest"}));
  c_orc->add_flag("--serial", orc.serial, "use the serial reference path");
  c_orc->add_option("--samples", orc.samples, "random elements to check reduce() against the projection")
      ->check(CLI::NonNegativeNumber);
  c_orc->add_option("--seed", orc.seed, "sampling seed")->capture_default_str();

  Shape psi_shape;
  bool psi_brief = false;
  auto* c_psi = app.add_subcommand("psi", "reduced product Psi and its witness coefficient");
  add_shape(c_psi, psi_shape, false);
  c_psi->add_flag("--brief", psi_brief, "omit the element itself");

  Shape cl_shape;
  std::uint64_t cl_budget = kDefaultBudget;
  bool cl_brief = false;
  auto* c_cl = app.add_subcommand("cuplength", "cup-length certificate of the kernel ideal");
  add_shape(c_cl, cl_shape, false);
  auto* cl_budget_opt = c_cl->add_option("--budget", cl_budget, "cap on products x complementary monomials");
  c_cl->add_flag("--brief", cl_brief, "omit the reduced Psi");

  Shape ptc_shape;
  std::uint64_t ptc_budget = kDefaultBudget;
  auto* c_ptc = app.add_subcommand("ptc", "parametrized topological complexity with provenance");
  add_shape(c_ptc, ptc_shape, false);
  auto* ptc_budget_opt = c_ptc->add_option("--budget", ptc_budget, "cap on products x complementary monomials");

  TrivializeArgs triv;
  auto* c_triv = app.add_subcommand("trivialize", "planar trivialization of a configuration (JSON [re, im] pairs)");
  c_triv->add_option("--input", triv.input, "JSON file ('-' for stdin)");
  c_triv->add_option("--points", triv.points, "inline JSON");
  c_triv->add_flag("--inverse", triv.inverse, "map {fiber, base} back to a configuration");
  c_triv->add_option("--threshold", triv.threshold, "distinctness threshold")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (c_basis->parsed()) return cmd_basis(basis, json, out);
    if (c_reduce->parsed()) return cmd_reduce(red, json, in, out);
    if (c_expand->parsed()) return cmd_expand(exp, json, out);
    if (c_adm->parsed()) return cmd_admissible(adm_J, json, out);
    if (c_poin->parsed()) return cmd_poincare(poin, json, out);
    if (c_orc->parsed()) return cmd_oracle(orc, json, out);
    if (c_psi->parsed()) return cmd_psi(psi_shape, psi_brief, json, out);
    if (c_cl->parsed()) return cmd_cuplength(cl_shape, effective_budget(cl_budget_opt, cl_budget), cl_brief, json, out);
    if (c_ptc->parsed()) return cmd_ptc(ptc_shape, effective_budget(ptc_budget_opt, ptc_budget), json, out);
    if (c_triv->parsed()) return cmd_trivialize(triv, json, in, out);
  } catch (const OracleInconsistency& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kUsage;
  }
  err << "error: no subcommand\n";
  return kUsage;
}

}  // namespace fncohom::cli
