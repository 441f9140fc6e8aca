#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <optional>
#include <type_traits>

namespace ccem {

// Exact scalar for the rational pipeline. Doubles embed exactly (they are
// dyadic rationals), so converting a parsed config value loses nothing.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

template <class T>
T scalar_from(long n) {
    return T(n);
}

template <class T>
T scalar_from_ratio(long num, long den) {
    if constexpr (std::is_same_v<T, Rational>)
        return Rational(num, den);
    else
        return static_cast<double>(num) / static_cast<double>(den);
}

inline double abs_val(double x) { return std::fabs(x); }
inline Rational abs_val(const Rational& x) { return x < 0 ? Rational(-x) : x; }

// Exact square root of a rational, if one exists.
inline std::optional<Rational> exact_sqrt(const Rational& x) {
    if (x < 0) return std::nullopt;
    if (x == 0) return Rational(0);
    BigInt num = boost::multiprecision::numerator(x);
    BigInt den = boost::multiprecision::denominator(x);
    BigInt rn = boost::multiprecision::sqrt(num);
    BigInt rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) return std::nullopt;
    return Rational(rn, rd);
}

// sqrt_or<T>: exact for Rational operands (throws via optional-empty signal),
// floating otherwise. Callers decide how to handle inexact roots.
template <class T>
std::optional<T> checked_sqrt(const T& x) {
    if constexpr (std::is_same_v<T, Rational>) {
        return exact_sqrt(x);
    } else {
        if (x < 0) return std::nullopt;
        return std::sqrt(x);
    }
}

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

} // namespace ccem
