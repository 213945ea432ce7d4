#pragma once

#include "qs2/cochains.hpp"
#include "qs2/homology.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace qs2 {

// Exit statuses of dispatch.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;  // verify found a failure, cyclic-check a violation
inline constexpr int kExitError = 2;        // usage, parse, file and contract errors

/**
 * Runs one command line (without the program name), writing results to
 * `out` and diagnostics to `err`.
 */
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// d1, d0, dm1, x0, x0^i, inner:<expr>@<twist>, cup(<name>,<name>).
Cochain cochain_from_name(const std::string& name);

// 1, x1^j, xm1^j, x0, x0^i (exponents optional when 1).
H0Label h0_label_from_name(const std::string& name);

// The built-in name `fundamental` or a chain file path.
Chain load_chain(const std::string& spec);

} // namespace qs2
