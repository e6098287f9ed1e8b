#pragma once

#include <string>
#include <string_view>

#include "sentinel/poly_matrix.hpp"

#include <json.hpp>

namespace sentinel {

// Grammar: sum of terms `[sign][coef][*]x[^k]` or `[sign]coef`, e.g.
// `-6x^2+7x-6`, `x^3-3/2x^2+3/2x-1/2`, `3.6e4 x^6`. Whitespace is ignored.
template <Scalar F>
Polynomial<F> parse_polynomial(std::string_view text, double eps_zero = kDefaultEpsZero);

template <Scalar F>
std::string format_polynomial(const Polynomial<F>& p);

// Matrices are JSON arrays of arrays of polynomial strings. Plain JSON numbers
// are accepted as constant entries.
template <Scalar F>
PolyMatrix<F> poly_matrix_from_json(const nlohmann::json& j, double eps_zero = kDefaultEpsZero);

template <Scalar F>
nlohmann::json poly_matrix_to_json(const PolyMatrix<F>& m);

// A JSON scalar (number or numeric string) in the requested field. Numbers
// convert through their shortest decimal spelling, so 0.1 is exactly 1/10.
template <Scalar F>
F scalar_from_json(const nlohmann::json& j);

}  // namespace sentinel
