#pragma once

#include <string>

namespace upc {

/// Shortest representation that parses back to the same double.
std::string format_exact(double value);

/// Six significant digits, '.' separator, no grouping; independent of the
/// process locale.
std::string format_sig6(double value);

}  // namespace upc
