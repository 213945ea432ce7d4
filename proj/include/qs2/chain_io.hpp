#pragma once

#include "qs2/complex.hpp"

#include <string>

namespace qs2 {

/**
 * JSON chain files:
 *   {"degree": n, "twist": "<scalar>",
 *    "terms": [{"coeff": "<scalar>", "tensor": [[i0,j0], ..., [in,jn]]}, ...]}
 * Scalars use the expr syntax; terms are written in tensor order with
 * canonical coefficients. Repeated tensors are summed on reading.
 */
std::string chain_to_json(const Chain& c);
// `source` names the input in diagnostics. Throws FormatError or ParseError.
Chain chain_from_json(const std::string& text, const std::string& source = "<input>");

Chain read_chain(const std::string& path);
void write_chain(const Chain& c, const std::string& path);

} // namespace qs2
