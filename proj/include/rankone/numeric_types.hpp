#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace rankone {

// Exact coefficient ring for the polynomial layer and the exact identity checks.
using Rational = boost::multiprecision::cpp_rational;

// Extended-precision float for verification routes with catastrophic
// cancellation (the Busemann/matrix side of the cocycle identity loses
// ~e^{-8t} of relative precision before the final quotient).
using QuadFloat = boost::multiprecision::cpp_bin_float_quad;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }
inline double to_double(const QuadFloat& x) { return x.template convert_to<double>(); }
inline double to_double(double x) { return x; }

template <class R>
R rational_to(const Rational& q) {
    return q.template convert_to<R>();
}
template <>
inline double rational_to<double>(const Rational& q) {
    return to_double(q);
}

} // namespace rankone
