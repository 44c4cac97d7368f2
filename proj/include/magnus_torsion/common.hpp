#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace magnus_torsion {

/// Exact integer used for every symbolic coefficient.
using Integer = boost::multiprecision::cpp_int;

/// Raised for requests the library deliberately does not handle
/// (k >= 3 nilpotent quotients, non-commuting Alexander matrices on the
/// Mahler route, oversized quadrature grids).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a numerical series misbehaves (increasing trace sequence,
/// support overflow).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double to_double(const Integer& v) { return v.convert_to<double>(); }

}  // namespace magnus_torsion
