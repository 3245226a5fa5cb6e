#pragma once

#include <string>

namespace symrd {

/// Shortest general-format rendering with `digits` significant digits,
/// independent of the C++ locale. NaN prints as "nan".
[[nodiscard]] std::string format_number(double v, int digits = 12);

}  // namespace symrd
