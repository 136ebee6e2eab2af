#pragma once

#include <string>

namespace vts {

/// Shortest decimal text that round-trips the double exactly.
std::string fmt_num(double v);

/// Fixed-point text with `decimals` digits; used where output is for humans or SVG.
std::string fmt_fixed(double v, int decimals);

}  // namespace vts
