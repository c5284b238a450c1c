#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <ostream>
#include <string>

namespace hitchin {

using Rational = boost::multiprecision::cpp_rational;

/// Gaussian rational re + i*im with exact arithmetic.
struct ExactComplex {
  Rational re{0};
  Rational im{0};

  ExactComplex() = default;
  ExactComplex(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}
  ExactComplex(int r) : re(r), im(0) {}

  friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) { return {a.re + b.re, a.im + b.im}; }
  friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) { return {a.re - b.re, a.im - b.im}; }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
    const Rational den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }
  ExactComplex& operator+=(const ExactComplex& b) { return *this = *this + b; }
  ExactComplex& operator-=(const ExactComplex& b) { return *this = *this - b; }
  ExactComplex& operator*=(const ExactComplex& b) { return *this = *this * b; }

  friend bool operator==(const ExactComplex& a, const ExactComplex& b) { return a.re == b.re && a.im == b.im; }

  bool is_zero() const { return re == 0 && im == 0; }

  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  friend std::ostream& operator<<(std::ostream& os, const ExactComplex& z) {
    return os << "(" << z.re << "," << z.im << ")";
  }
};

/// Parses "p/q", "p" or a decimal literal into an exact rational.
Rational parse_rational(const std::string& text);

}  // namespace hitchin
