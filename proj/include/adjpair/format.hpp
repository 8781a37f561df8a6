#pragma once

#include <string>

namespace adjpair {

/// Shortest decimal that reads back to the same double.
std::string format_real(double x);

}  // namespace adjpair
