#include "fncohom/serialize.hpp"

#include <cctype>

#include <fmt/format.h>

namespace fncohom {

using nlohmann::ordered_json;

ordered_json to_json(const Generator& g) {
  ordered_json j;
  j["copy"] = g.copy == Copy::Unprimed ? "w" : "wp";
  j["i"] = g.i;
  j["j"] = g.j;
  return j;
}

ordered_json to_json(const AlgebraContext& ctx, const Monomial& mono) {
  ordered_json factors = ordered_json::array();
  mono.for_each([&](GenIndex g) { factors.push_back(to_json(ctx.generator(g))); });
  return factors;
}

ordered_json to_json(const AlgebraContext& ctx, const Element& e) {
  require_context(ctx, e);
  ordered_json out = ordered_json::array();
  for (const Term& t : e.terms()) {
    ordered_json rec;
    rec["coeff"] = t.coeff.get_str();
    rec["factors"] = to_json(ctx, t.mono);
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

Generator generator_from_json(const AlgebraContext& ctx, const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("factor must be an object {copy, i, j}");
  const std::string copy = j.at("copy").get<std::string>();
  Copy c;
  if (copy == "w")
    c = Copy::Unprimed;
  else if (copy == "wp")
    c = Copy::Primed;
  else
    throw ParseError(fmt::format("unknown copy tag '{}' (expected \"w\" or \"wp\")", copy));
  return ctx.make_generator(c, j.at("i").get<int>(), j.at("j").get<int>());
}

// Product of the listed factors in the listed order.
std::optional<SignedMonomial> product_of(const AlgebraContext& ctx, const nlohmann::json& factors) {
  if (!factors.is_array()) throw ParseError("\"factors\" must be an array");
  SignedMonomial acc;
  for (const auto& f : factors) {
    auto p = concatenate(acc.mono, Monomial::of(ctx.index_of(generator_from_json(ctx, f))), ctx.anticommuting());
    if (!p) return std::nullopt;
    acc.mono = p->mono;
    acc.sign *= p->sign;
  }
  return acc;
}

}  // namespace

Monomial monomial_from_json(const AlgebraContext& ctx, const nlohmann::json& j) {
  auto p = product_of(ctx, j);
  if (!p) throw ParseError("monomial repeats a generator");
  if (p->sign != 1) throw ParseError("monomial factors are not in canonical order");
  return p->mono;
}

Element element_from_json(const AlgebraContext& ctx, const nlohmann::json& j) {
  const nlohmann::json* terms = &j;
  if (j.is_object()) {
    if (!j.contains("element")) throw ParseError("JSON object input needs an \"element\" field");
    terms = &j.at("element");
  }
  if (!terms->is_array()) throw ParseError("element must be a JSON array of terms");
  TermAccumulator acc;
  for (const auto& rec : *terms) {
    if (!rec.is_object()) throw ParseError("term must be an object {coeff, factors}");
    const auto& c = rec.at("coeff");
    Integer coeff;
    if (c.is_string()) {
      if (coeff.set_str(c.get<std::string>(), 10) != 0)
        throw ParseError(fmt::format("bad coefficient '{}'", c.get<std::string>()));
    } else if (c.is_number_integer()) {
      coeff = Integer(c.get<long>());
    } else {
      throw ParseError("coefficient must be a decimal string or integer");
    }
    auto p = product_of(ctx, rec.at("factors"));
    if (p) acc.add(p->mono, coeff, p->sign);
  }
  return std::move(acc).finish(ctx);
}

std::string to_text(const AlgebraContext& ctx, const Monomial& mono) {
  if (mono.empty()) return "1";
  std::string out;
  mono.for_each([&](GenIndex g) {
    if (!out.empty()) out += '*';
    out += to_string(ctx.generator(g));
  });
  return out;
}

std::string to_text(const AlgebraContext& ctx, const Element& e) {
  require_context(ctx, e);
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const Term& t : e.terms()) {
    const bool negative = t.coeff < 0;
    const Integer mag = abs(t.coeff);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (t.mono.empty()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += to_text(ctx, t.mono);
    }
  }
  return out;
}

namespace {

class TextParser {
 public:
  TextParser(const AlgebraContext& ctx, std::string_view src) : ctx_(ctx), src_(src) {}

  Element parse() {
    Element e = expr();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  Element expr() {
    Element acc = term();
    for (;;) {
      skip_space();
      if (accept('+'))
        acc = add(ctx_, acc, term());
      else if (accept('-'))
        acc = subtract(ctx_, acc, term());
      else
        return acc;
    }
  }

  Element term() {
    Element acc = unary();
    for (;;) {
      skip_space();
      if (!accept('*')) return acc;
      acc = multiply(ctx_, acc, unary());
    }
  }

  Element unary() {
    skip_space();
    if (accept('-')) return negate(ctx_, unary());
    if (accept('+')) return unary();
    return primary();
  }

  Element primary() {
    skip_space();
    if (accept('(')) {
      Element e = expr();
      expect(')');
      return e;
    }
    if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      Integer k;
      k.set_str(std::string(digits()), 10);
      return scale(ctx_, Element::one(ctx_), k);
    }
    if (accept('w')) {
      const Copy copy = accept('p') ? Copy::Primed : Copy::Unprimed;
      expect('(');
      const int i = integer();
      expect(',');
      const int j = integer();
      expect(')');
      return Element::generator(ctx_, copy, i, j);
    }
    fail("expected a number, w(i,j), wp(i,j) or '('");
  }

  int integer() {
    skip_space();
    std::string_view d = digits();
    if (d.empty() || d.size() > 6) fail("expected a small integer index");
    return std::stoi(std::string(d));
  }

  std::string_view digits() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return src_.substr(start, pos_ - start);
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(fmt::format("expected '{}'", c));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(fmt::format("{} at offset {} in \"{}\"", what, pos_, src_));
  }

  const AlgebraContext& ctx_;
  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

Element parse_text(const AlgebraContext& ctx, std::string_view text) { return TextParser(ctx, text).parse(); }

Element parse_element(const AlgebraContext& ctx, std::string_view input) {
  std::size_t k = 0;
  while (k < input.size() && std::isspace(static_cast<unsigned char>(input[k]))) ++k;
  if (k < input.size() && (input[k] == '[' || input[k] == '{')) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(input);
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(fmt::format("invalid JSON element: {}", ex.what()));
    }
    try {
      return element_from_json(ctx, j);
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(fmt::format("malformed element record: {}", ex.what()));
    }
  }
  return parse_text(ctx, input);
}

}  // namespace fncohom
