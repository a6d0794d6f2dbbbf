#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace papillon {

// Exact rational arithmetic for load accounting and means. Branch weights at
// desk scale keep numerators and denominators tiny, so cpp_rational is plenty.
using Rational = boost::multiprecision::cpp_rational;

inline std::string rational_str(const Rational& r) { return r.str(); }

inline double rational_approx(const Rational& r) { return r.convert_to<double>(); }

} // namespace papillon
