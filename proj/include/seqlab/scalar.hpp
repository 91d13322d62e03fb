#pragma once

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

namespace seqlab {

using Rational = mpq_class;

/// Parses "num/den", an integer, or a decimal literal ("0.125") exactly.
Rational parse_rational(std::string_view text);

/// Always "num/den", with den > 0 and the fraction in lowest terms.
std::string rational_to_string(const Rational& q);

/// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double x);

/// Arithmetic shared by the float and the exact-rational mode.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static constexpr bool exact = false;
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }
  static double from_rational(const Rational& q) { return q.get_d(); }
  static bool is_zero(double x, double eta) { return std::fabs(x) <= eta; }
  static bool is_finite(double x) { return std::isfinite(x); }
};

template <>
struct ScalarOps<Rational> {
  static constexpr bool exact = true;
  static Rational abs(const Rational& x) { return ::abs(x); }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational from_double(double x) { return rational_from_double(x); }
  static Rational from_rational(const Rational& q) { return q; }
  static bool is_zero(const Rational& x, double /*eta*/) { return sgn(x) == 0; }
  static bool is_finite(const Rational&) { return true; }
};

template <class S>
concept Scalar = requires { ScalarOps<S>::exact; };

}  // namespace seqlab
