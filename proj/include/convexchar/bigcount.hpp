#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace convexchar {

/// Exact non-negative counts. g_k grows exponentially in n, so nothing here
/// is ever stored in a fixed-width integer or a float.
using BigCount = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigCount& value) { return value.str(); }

}  // namespace convexchar
