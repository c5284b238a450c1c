#include <doctest.h>

#include <cmath>
#include <functional>

#include "hitchin/error.hpp"
#include "hitchin/painleve.hpp"

using namespace hitchin;
using namespace hitchin::painleve;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::NumericalFailure;
}

// K_0(x) = -(log(x/2) + gamma) I_0(x) + sum_k (x^2/4)^k / (k!)^2 H_k, 30 terms in long double.
long double k0_series_oracle(long double x) {
  const long double gamma = 0.57721566490153286060651209L;
  const long double y = x * x / 4.0L;
  long double term = 1.0L, i0 = 1.0L, tail = 0.0L, harmonic = 0.0L;
  for (int k = 1; k < 30; ++k) {
    term *= y / (static_cast<long double>(k) * k);
    harmonic += 1.0L / k;
    i0 += term;
    tail += term * harmonic;
  }
  return -(std::log(x / 2.0L) + gamma) * i0 + tail;
}

// K_0(x) = int_0^inf exp(-x cosh s) ds; the trapezoid rule converges geometrically here.
double k0_integral_oracle(double x) {
  const double h = 1e-3;
  double sum = 0.5 * std::exp(-x);
  for (int i = 1;; ++i) {
    const double term = std::exp(-x * std::cosh(i * h));
    sum += term;
    if (term < 1e-300 || term < 1e-20 * sum) break;
  }
  return sum * h;
}

double k0_reference(double x) { return std::cyl_bessel_k(0.0, x); }

PsiSolution solve(double a, int nodes = 2000) {
  PsiOptions o;
  o.nodes = nodes;
  return solve_psi(a, 1e-4, 20.0, 1e-10, o);
}

}  // namespace

TEST_CASE("k0 against independent oracles") {
  CHECK(static_cast<double>(k0_series_oracle(1.0L)) == doctest::Approx(0.4210244382).epsilon(1e-9));
  CHECK(k0_integral_oracle(1.0) == doctest::Approx(static_cast<double>(k0_series_oracle(1.0L))).epsilon(1e-12));
  CHECK(std::abs(k0(1.0) - 0.4210244382) < 1e-9);
  CHECK(std::abs(k0(0.1) - 2.4270690247) < 1e-8);
  CHECK(std::abs(k0(0.1) - static_cast<double>(k0_series_oracle(0.1L))) < 1e-12);

  for (double x = 0.05; x <= 60.0; x *= 1.17) {
    CHECK(std::abs(k0(x) / k0_reference(x) - 1.0) < 1e-10);
    if (x <= 2.0) CHECK(std::abs(k0(x) / static_cast<double>(k0_series_oracle(x)) - 1.0) < 1e-12);
    CHECK(std::abs(k0(x) / k0_integral_oracle(x) - 1.0) < 1e-10);
  }
  // The leading asymptotic has relative correction -1/(8x), 2.5e-3 at x = 50; the two-term
  // expansion is accurate to 9/(128 x^2).
  const double lead = k0(50.0) * std::exp(50.0) * std::sqrt(100.0 / M_PI);
  CHECK(std::abs(lead - 1.0) < 3e-3);
  CHECK(std::abs(lead - (1.0 - 1.0 / 400.0)) < 1e-4);
  CHECK(code_of([] { k0(0.0); }) == ErrorCode::NonPositiveArgument);
  CHECK(code_of([] { k0(-1.0); }) == ErrorCode::NonPositiveArgument);
}

TEST_CASE("rho_of") {
  CHECK(rho_of(1.0, 1.0, 2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(rho_of(3.0, 1.0, 1) == doctest::Approx(8.0).epsilon(1e-15));
  for (int m = 1; m <= 4; ++m) {
    CHECK(rho_of(2.0, 0.7, m) < rho_of(2.5, 0.7, m));
    CHECK(rho_of(2.0, 0.7, m) < rho_of(2.0, 0.8, m));
  }
  CHECK(boundary_coefficient(1, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(boundary_coefficient(2, 1) == 0.0);
}

TEST_CASE("psi with a = 0 vanishes") {
  const auto s = solve(0.0);
  for (double v : s.psi.values) CHECK(v == 0.0);
}

TEST_CASE("psi fidelity to the K0 tail at a = 1/3") {
  const auto s = solve(1.0 / 3.0);
  for (double rho = 6.0; rho <= 12.0; rho += 0.25) {
    const double ratio = M_PI * s.psi.value_at(rho) / k0_reference(rho);
    CHECK(ratio >= 0.98);
    CHECK(ratio <= 1.02);
  }
}

TEST_CASE("psi boundary slope and shape") {
  for (double a : {0.1, 1.0 / 3.0, 0.5, 0.8}) {
    CAPTURE(a);
    const auto s = solve(a);
    for (int i = 1; i <= 3; ++i) CHECK(std::abs(s.psi_s[static_cast<std::size_t>(i)] / -a - 1.0) < 0.01);
    for (int i = 0; i + 1 < s.psi.grid.size(); ++i) {
      CHECK(s.psi.values[static_cast<std::size_t>(i)] > 0.0);
      if (i > 0) CHECK(s.psi.d1[static_cast<std::size_t>(i)] < 0.0);
    }
    CHECK(ode_residual(s.psi) < 1e-9);
  }
}

TEST_CASE("property: second-order grid convergence") {
  const int n = 400;
  const auto c = solve(1.0 / 3.0, n), m = solve(1.0 / 3.0, 2 * n - 1), f = solve(1.0 / 3.0, 4 * n - 3);
  double d1 = 0.0, d2 = 0.0;
  for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
    d1 = std::max(d1, std::abs(c.psi.values[k] - m.psi.values[2 * k]));
    d2 = std::max(d2, std::abs(m.psi.values[2 * k] - f.psi.values[4 * k]));
  }
  CHECK(d1 / d2 >= 3.5);
  CHECK(d1 / d2 <= 4.5);
}

TEST_CASE("v_profile and u_profiles") {
  const auto grid = RadialGrid::log_spaced(0.5, 1.0, 51);
  const auto vp = v_profile(5.0, 1, 0, grid);
  // r = 1 maps to rho = 40/3.
  const double v1 = vp.v.values.back();
  CHECK(v1 == doctest::Approx(vp.psi.psi.value_at(40.0 / 3.0)).epsilon(1e-9));
  CHECK(v1 == doctest::Approx(solve(1.0 / 3.0).psi.value_at(40.0 / 3.0)).epsilon(2e-2));
  CHECK(v1 > 0.0);

  const auto flat = v_profile(3.0, 2, 1, grid);
  for (double v : flat.v.values) CHECK(v == 0.0);

  // Monotone decay in t at fixed r.
  double prev = INFINITY;
  for (double t : {1.0, 2.0, 4.0, 8.0}) {
    const double v = v_profile(t, 1, 0, grid).v.values[25];
    CHECK(v < prev);
    prev = v;
  }

  const auto u = u_profiles(2.0, 3, 1, grid);
  CHECK(u.u_inf.values.back() == doctest::Approx(0.0));
  for (int i = 0; i < grid.size(); ++i) {
    CHECK(u.u_inf.values[static_cast<std::size_t>(i)] == doctest::Approx(0.5 * std::log(grid[i])).epsilon(1e-14));
  }
  const auto trivial = u_profiles(2.0, 2, 1, grid);
  for (int i = 0; i < grid.size(); ++i) {
    CHECK(trivial.u_t.values[static_cast<std::size_t>(i)] == 0.0);
    CHECK(trivial.u_inf.values[static_cast<std::size_t>(i)] == 0.0);
  }
  prev = INFINITY;
  for (double t : {2.0, 4.0, 8.0}) {
    const auto p = u_profiles(t, 1, 0, grid);
    double sup = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
      const auto k = static_cast<std::size_t>(i);
      sup = std::max(sup, std::abs(p.u_t.values[k] - p.u_inf.values[k]));
    }
    CHECK(sup < prev);
    prev = sup;
  }
}

TEST_CASE("unreachable rho_max is a numerical failure") {
  VProfileOptions o;
  o.rho_max_limit = 10.0;
  CHECK(code_of([&] { v_profile(12.0, 1, 0, RadialGrid::log_spaced(0.5, 1.0, 11), o); }) ==
        ErrorCode::NumericalFailure);
}
