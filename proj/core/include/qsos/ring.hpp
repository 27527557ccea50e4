#pragma once

#include <cmath>
#include <stdexcept>

#include "qsos/rational.hpp"

namespace qsos {

// Minimal algebraic interface shared by the exact and floating kernels.
// `exact_div` is only called where the quotient is known to be exact.
template <class T>
struct RingTraits;

template <>
struct RingTraits<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long v) { return static_cast<double>(v); }
  static bool is_zero(double v) { return v == 0.0; }
  static double exact_div(double a, double b) { return a / b; }
  static double magnitude(double v) { return std::abs(v); }
};

template <>
struct RingTraits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long v) { return Rational(v); }
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
  static Rational exact_div(const Rational& a, const Rational& b) {
    if (sgn(b) == 0) throw std::domain_error("division by zero");
    return Rational(a / b);
  }
  static double magnitude(const Rational& v) { return std::abs(v.get_d()); }
};

template <>
struct RingTraits<Integer> {
  static constexpr bool exact = true;
  static Integer zero() { return Integer(0); }
  static Integer one() { return Integer(1); }
  static Integer from_int(long v) { return Integer(v); }
  static bool is_zero(const Integer& v) { return sgn(v) == 0; }
  static Integer exact_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  static double magnitude(const Integer& v) { return std::abs(v.get_d()); }
};

}  // namespace qsos
