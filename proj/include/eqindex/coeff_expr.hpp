#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "eqindex/symbols.hpp"

namespace eqindex {

/// Scalar coefficient in the base coordinates x1..xn, parsed from text.
///
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := number | 'i' | 'x'k ['^' int] | ('sin'|'cos') '(' [number '*'] 'x'k ')'
///             | '(' expr ')'
///
/// Example: "2*x1^2*sin(x2) - 0.5*i*cos(3*x1)".
using ScalarExpression = std::function<cdouble(const VectorXd&)>;

ScalarExpression parse_coefficient_expression(const std::string& text, int base_dim);

/// Builds a scalar differential operator from (multi-index, expression) pairs,
/// the multi-index written as comma-separated exponents ("2,0").
DiffOpCoefficients parse_scalar_operator(int order, int base_dim,
                                         const std::vector<std::pair<std::string, std::string>>& terms);

}  // namespace eqindex
