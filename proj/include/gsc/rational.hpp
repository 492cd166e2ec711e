// Exact scalar types used throughout: arbitrary-precision integers and rationals.
// All linear algebra in this project is over Q; nothing is ever done in floating point.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace gsc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rat& q) { return q.str(); }
inline std::string to_string(const Int& z) { return z.str(); }

} // namespace gsc
