#pragma once

#include <string>
#include <string_view>

#include "conic/gf2.hpp"

namespace conic {

/// Sparse interchange format for parity-check matrices, variable-length-line
/// dialect (no zero padding):
///   line 1: "rows cols"
///   line 2: "max_row_wt max_col_wt"
///   line 3: row weights           line 4: column weights
///   then one line of 1-based column indices per row,
///   then one line of 1-based row indices per column.
/// LF line endings throughout.
std::string to_alist(const Gf2Matrix& m);
Gf2Matrix parse_alist(std::string_view text); // throws IoError on malformed input

/// Dense dump: rows lines of '0'/'1' characters.
std::string to_bits(const Gf2Matrix& m);
Gf2Matrix parse_bits(std::string_view text);

} // namespace conic
