#pragma once

#include <string>

namespace dsap {

/// Shortest decimal text that parses back to the same binary64.
std::string format_shortest(double v);

/// 17 significant digits, printf %.17g.
std::string format_g17(double v);

}  // namespace dsap
