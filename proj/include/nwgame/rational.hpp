#ifndef NWGAME_RATIONAL_HPP
#define NWGAME_RATIONAL_HPP

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace nwg {

/// Exact arbitrary-precision rationals; every probability and bound is one.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }

inline BigInt pow_int(std::uint64_t base, std::uint64_t exp) { return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp)); }

/// "num/den" with den > 0 in lowest terms.
inline std::string to_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

}  // namespace nwg

#endif  // NWGAME_RATIONAL_HPP
