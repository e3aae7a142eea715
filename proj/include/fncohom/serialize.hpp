#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "fncohom/element.hpp"

namespace fncohom {

class ParseError : public Error {
 public:
  using Error::Error;
};

/// [{"coeff": "-2", "factors": [{"copy": "w", "i": 1, "j": 2}, ...]}, ...]
/// in canonical term order.  Coefficients are decimal strings so that
/// arbitrary-precision values survive JSON readers.
nlohmann::ordered_json to_json(const AlgebraContext& ctx, const Element& e);
nlohmann::ordered_json to_json(const AlgebraContext& ctx, const Monomial& mono);
nlohmann::ordered_json to_json(const Generator& g);

Element element_from_json(const AlgebraContext& ctx, const nlohmann::json& j);
Monomial monomial_from_json(const AlgebraContext& ctx, const nlohmann::json& j);

/// Terse text form, e.g. "w(1,2)*wp(1,3) - 2*w(1,2)".
std::string to_text(const AlgebraContext& ctx, const Element& e);
std::string to_text(const AlgebraContext& ctx, const Monomial& mono);

/// Parses the text form.  Products, sums, integer multiples, unary minus and
/// parentheses are accepted; products go through the signed ring product.
Element parse_text(const AlgebraContext& ctx, std::string_view text);

/// JSON if the input starts with '[' or '{', text form otherwise.
Element parse_element(const AlgebraContext& ctx, std::string_view input);

}  // namespace fncohom
