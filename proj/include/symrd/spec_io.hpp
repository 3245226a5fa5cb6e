#pragma once

// Spec files are `key = value` lines; `#` starts a comment. Keys are `L` and
// either sigma_x_sq, rho_x, sigma_z_sq, rho_z or lambda_x, gamma_x, lambda_y,
// gamma_y. Unknown, repeated or mixed keys are errors.

#include <istream>
#include <string>

#include "symrd/model.hpp"

namespace symrd {

/// Throws ParseError with `source:line:` context, or ValidationError if the
/// parsed model is infeasible.
[[nodiscard]] Model parse_spec(std::istream& in, const std::string& source = "<input>");
[[nodiscard]] Model parse_spec_string(const std::string& text, const std::string& source = "<string>");
[[nodiscard]] Model load_spec(const std::string& path);

/// Parses a finite double with no trailing characters (locale independent).
[[nodiscard]] double parse_double(const std::string& text, const std::string& what);

}  // namespace symrd
