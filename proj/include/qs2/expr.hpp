#pragma once

#include "qs2/algebra.hpp"

#include <string>
#include <string_view>

namespace qs2 {

/**
 * Surface syntax for algebra elements:
 *
 *   expr   := ('+'|'-')? term (('+'|'-') term)*
 *   term   := factor (('*'|'/') factor)*
 *   factor := atom ('^' ['-'] integer)?
 *   atom   := 'q' | 'x1' | 'x0' | 'xm1' | integer | '(' expr ')'
 *
 * Products keep their factor order. The right operand of '/' and the base
 * of a negative power must be nonzero scalars. Whitespace is ignored.
 */
AlgElem parse(std::string_view text);

// Parses an expression that must evaluate to an element of Q(q).
RatFunc parse_scalar(std::string_view text);

// Deterministic rendering; parse(render(a)) == a.
std::string render(const AlgElem& a);

std::string render_monomial(BasisIndex idx);

} // namespace qs2
