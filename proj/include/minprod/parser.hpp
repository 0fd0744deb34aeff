#pragma once

#include <string>

#include "minprod/expression.hpp"

namespace minprod {

// Grammar:
//   expr := leaf | "product(" expr ("," expr)+ ")"
//   leaf := "sphere(" int ["," "codim=" int] ")" | "torus(" "k=" int ")"
//         | "veronese()" | "isoparametric(" int "," "g=" int ")"
//         | "otfkm(" "k=" int ")" | "lawson(" int "," int ")"
//         | "bipolar_tau31()" | "file(" path ")"
// Whitespace-insensitive. Errors carry the position and the expected tokens.
ProductExpression parse_expression(const std::string& src);

}  // namespace minprod
