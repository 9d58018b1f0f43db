#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace shiftlab {

// Language cardinalities overflow 64 bits quickly; counts are kept exact.
using BigInt = boost::multiprecision::cpp_int;

// ln of an exact count, evaluated in 113-bit precision and rounded once.
inline double ln_big(const BigInt& n) {
    using Quad = boost::multiprecision::cpp_bin_float_quad;
    Quad q(n);
    return static_cast<double>(boost::multiprecision::log(q));
}

// ln(n)/denom with the division still in extended precision, so algebraically
// equal inputs round to identical doubles.
inline double ln_big_over(const BigInt& n, std::uint64_t denom) {
    using Quad = boost::multiprecision::cpp_bin_float_quad;
    Quad q(n);
    return static_cast<double>(boost::multiprecision::log(q) / denom);
}

inline std::string to_string(const BigInt& n) { return n.str(); }

} // namespace shiftlab
