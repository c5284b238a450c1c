#include <cmath>
#include <numbers>

#include "hitchin/error.hpp"
#include "hitchin/painleve.hpp"

namespace hitchin::painleve {

namespace {

// K_0 = -(log(x/2) + gamma) I_0(x) + sum_k (x^2/4)^k / (k!)^2 H_k
double k0_series(double x) {
  const double y = 0.25 * x * x;
  const double lead = std::log(0.5 * x) + std::numbers::egamma;
  double term = 1.0;  // (x^2/4)^k / (k!)^2
  double harmonic = 0.0;
  double i0 = 1.0;
  double tail = 0.0;
  for (int k = 1; k < 60; ++k) {
    term *= y / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    i0 += term;
    tail += term * harmonic;
    if (term * (harmonic + std::abs(lead)) < 1e-18 * std::abs(tail - lead * i0)) break;
  }
  return tail - lead * i0;
}

// e^x K_0(x) = int_0^inf exp(-x (cosh s - 1)) ds. The integrand is entire and
// decays double-exponentially, so the trapezoid rule converges geometrically in 1/h.
double k0_scaled_integral(double x) {
  const double h = 0.05;
  double sum = 0.5;
  for (int k = 1;; ++k) {
    const double f = std::exp(-x * (std::cosh(k * h) - 1.0));
    sum += f;
    if (f < 1e-18 * sum) break;
  }
  return h * sum;
}

// sqrt(pi/(2x)) sum_k (-1)^k ((2k-1)!!)^2 / (k! (8x)^k); truncation error ~ e^{-2x}.
double k0_scaled_asymptotic(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = -term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * x * k);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::sqrt(std::numbers::pi / (2.0 * x)) * sum;
}

}  // namespace

double k0(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::NonPositiveArgument, "k0 requires x > 0");
  if (x <= 2.0) return k0_series(x);
  if (x <= 25.0) return std::exp(-x) * k0_scaled_integral(x);
  return std::exp(-x) * k0_scaled_asymptotic(x);
}

}  // namespace hitchin::painleve
