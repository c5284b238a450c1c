#pragma once

// Polynomials in z with complex coefficients, and the quotient ring C[z]/z^m
// which carries the Hecke u-coordinates. The scalar is either
// std::complex<double> or the exact ExactComplex.

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

#include "hitchin/error.hpp"
#include "hitchin/exact_complex.hpp"

namespace hitchin {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<std::complex<double>> {
  static bool is_zero(const std::complex<double>& x) { return x == 0.0; }
  static std::complex<double> to_complex(const std::complex<double>& x) { return x; }
};

template <>
struct ScalarTraits<ExactComplex> {
  static bool is_zero(const ExactComplex& x) { return x.is_zero(); }
  static std::complex<double> to_complex(const ExactComplex& x) { return x.to_complex(); }
};

/// Dense polynomial; coeffs[j] multiplies z^j. Never stores trailing zeros.
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly monomial(const T& c, int degree) {
    std::vector<T> v(static_cast<std::size_t>(degree) + 1, T(0));
    v.back() = c;
    return Poly(std::move(v));
  }

  const std::vector<T>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }

  T coeff(int j) const { return j >= 0 && j < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(j)] : T(0); }

  /// Order of vanishing at z = 0; -1 for the zero polynomial.
  int valuation() const {
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (!ScalarTraits<T>::is_zero(c_[j])) return static_cast<int>(j);
    }
    return -1;
  }

  /// Multiplication by z^k.
  Poly shifted(int k) const {
    if (is_zero()) return {};
    std::vector<T> v(static_cast<std::size_t>(k), T(0));
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(std::move(v));
  }

  std::complex<double> evaluate(std::complex<double> z) const {
    std::complex<double> acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + ScalarTraits<T>::to_complex(*it);
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> v(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t j = 0; j < a.c_.size(); ++j) v[j] += a.c_[j];
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[j] += b.c_[j];
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& a) {
    std::vector<T> v;
    v.reserve(a.c_.size());
    for (const auto& x : a.c_) v.push_back(-x);
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> v(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && ScalarTraits<T>::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

/// Element of C[z]/z^m. Modulus 0 is the zero ring.
template <class T>
class TruncatedPoly {
 public:
  TruncatedPoly() = default;
  TruncatedPoly(int modulus, std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (modulus < 0 || static_cast<int>(c_.size()) != modulus) {
      throw Error(ErrorCode::ModulusMismatch, "coefficient count " + std::to_string(c_.size()) +
                                                  " does not match modulus " + std::to_string(modulus));
    }
  }
  explicit TruncatedPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) {}

  static TruncatedPoly zero(int modulus) { return TruncatedPoly(modulus, std::vector<T>(static_cast<std::size_t>(modulus), T(0))); }
  static TruncatedPoly one(int modulus) {
    auto p = zero(modulus);
    if (modulus > 0) p.c_[0] = T(1);
    return p;
  }

  int modulus() const noexcept { return static_cast<int>(c_.size()); }
  const std::vector<T>& coeffs() const noexcept { return c_; }
  const T& operator[](std::size_t j) const { return c_[j]; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const T& x) { return ScalarTraits<T>::is_zero(x); });
  }

  /// The canonical representative of degree < m.
  Poly<T> lift() const { return Poly<T>(c_); }

  friend bool operator==(const TruncatedPoly& a, const TruncatedPoly& b) { return a.c_ == b.c_; }

 private:
  std::vector<T> c_;
};

template <class T>
TruncatedPoly<T> trunc_mul(const TruncatedPoly<T>& a, const TruncatedPoly<T>& b) {
  if (a.modulus() != b.modulus()) {
    throw Error(ErrorCode::ModulusMismatch,
                "moduli " + std::to_string(a.modulus()) + " and " + std::to_string(b.modulus()));
  }
  const std::size_t m = static_cast<std::size_t>(a.modulus());
  std::vector<T> out(m, T(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; i + j < m; ++j) out[i + j] += a[i] * b[j];
  }
  return TruncatedPoly<T>(std::move(out));
}

/// Power-series inverse mod z^m; throws NotInvertible when a(0) = 0.
template <class T>
TruncatedPoly<T> trunc_inverse(const TruncatedPoly<T>& a) {
  const std::size_t m = static_cast<std::size_t>(a.modulus());
  if (m == 0) return a;
  if (ScalarTraits<T>::is_zero(a[0])) throw Error(ErrorCode::NotInvertible, "constant coefficient is zero");
  std::vector<T> b(m, T(0));
  const T inv0 = T(1) / a[0];
  b[0] = inv0;
  for (std::size_t k = 1; k < m; ++k) {
    T acc(0);
    for (std::size_t j = 1; j <= k; ++j) acc += a[j] * b[k - j];
    b[k] = -(acc * inv0);
  }
  return TruncatedPoly<T>(std::move(b));
}

/// Chart change u_+ -> u_- = [u_+^{-1}] at an even zero.
template <class T>
TruncatedPoly<T> u_transition(const TruncatedPoly<T>& u_plus) {
  return trunc_inverse(u_plus);
}

}  // namespace hitchin
