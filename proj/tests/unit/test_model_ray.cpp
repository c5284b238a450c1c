#include <doctest.h>

#include <cmath>
#include <functional>

#include "hitchin/error.hpp"
#include "hitchin/hecke_local.hpp"
#include "hitchin/model_ray.hpp"

using namespace hitchin;
using namespace hitchin::model;
using painleve::RadialGrid;

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

const std::vector<double> kLadder = {2, 3, 4, 6, 8, 10, 12};

}  // namespace

TEST_CASE("model_pair on the flat stratum m = 2d") {
  const auto grid = RadialGrid::log_spaced(0.5, 1.0, 21);
  const auto p = model_pair(3.0, 2, 1, grid);
  for (int i = 0; i < grid.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    CHECK(p.a[k] == 0.0);
    // With the phases z^d and z^{m-d} attached, both entries have modulus r.
    CHECK(p.e_plus[k] * grid[i] == doctest::Approx(grid[i]).epsilon(1e-15));
    CHECK(p.e_minus[k] * grid[i] == doctest::Approx(grid[i]).epsilon(1e-15));
  }
}

TEST_CASE("limiting_pair") {
  const auto grid = RadialGrid::log_spaced(0.5, 1.0, 21);
  const auto p = limiting_pair(1, 0, grid);
  for (int i = 0; i < grid.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    CHECK(p.a[k] == 0.125);
    CHECK(p.e_plus[k] == doctest::Approx(std::sqrt(grid[i])));
    CHECK(p.e_minus[k] == doctest::Approx(1.0 / std::sqrt(grid[i])));
  }
  for (double a : limiting_pair(2, 1, grid).a) CHECK(a == 0.0);
  // The limiting configuration solves the decoupled equations; only discretization remains.
  CHECK(hecke::decoupled_residual(1, 0, hecke::AnnulusGrid{}).max() < 1e-5);
}

TEST_CASE("property: det(phi_t) = -z^m dz^2 at every t") {
  const auto grid = RadialGrid::log_spaced(0.5, 1.0, 21);
  for (int m = 1; m <= 5; ++m) {
    for (int d = 0; 2 * d <= m; ++d) {
      CHECK(determinant_exponent(limiting_pair(m, d, grid)) == m);
      for (double t : {2.0, 6.0}) {
        const auto p = model_pair(t, m, d, grid);
        CHECK(determinant_exponent(p) == m);
        // e_+ e_- = 1 in floating point, which is the radial content of det phi_t.
        for (std::size_t k = 0; k < p.e_plus.size(); ++k) CHECK(std::abs(p.e_plus[k] * p.e_minus[k] - 1.0) < 64 * 1e-16);
      }
    }
  }
}

TEST_CASE("c0_distance") {
  const AnnulusSpec k;
  const auto grid = k.radial_grid();
  const auto p4 = model_pair(4.0, 1, 0, grid);
  const auto p8 = model_pair(8.0, 1, 0, grid);
  const auto inf = limiting_pair(1, 0, grid);
  CHECK(c0_distance(p4, p4, k) == 0.0);
  const double d4 = c0_distance(p4, inf, k), d8 = c0_distance(p8, inf, k);
  CHECK(std::isfinite(d4));
  CHECK(d4 > 0.0);
  CHECK(d8 > 0.0);
  CHECK(d8 < d4);
  CHECK(code_of([&] { c0_distance(p4, limiting_pair(2, 0, grid), k); }) == ErrorCode::StratumMismatch);

  // t -> infinity recovers the limiting pair.
  const auto far = model_pair(30.0, 1, 0, grid);
  CHECK(c0_distance(far, inf, k) < 1e-10);
}

TEST_CASE("radial Hitchin residual") {
  const AnnulusSpec k;
  const auto grid = k.radial_grid();
  const double tol = painleve::VProfileOptions{}.tol;
  double sup = 0.0;
  for (double f : hitchin_residual_radial(4.0, 1, 0, grid).values) sup = std::max(sup, std::abs(f));
  CHECK(sup < 100.0 * tol);
  for (double f : hitchin_residual_radial(4.0, 2, 1, grid).values) CHECK(f == 0.0);

  // A profile solved at t' = 3 fails the equation at scale t = 4.
  const auto wrong = painleve::v_profile(3.0, 1, 0, grid).v;
  double off = 0.0;
  for (double f : radial_residual(wrong, 4.0, 1).values) off = std::max(off, std::abs(f));
  CHECK(off > 1e3 * sup);
}

TEST_CASE("t ladder validation") {
  CHECK(code_of([] { check_t_ladder({2, 3, 4, 5}); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { check_t_ladder({4, 5, 6, 7, 8}); }) == ErrorCode::ConfigError);
  check_t_ladder(kLadder);
  CHECK(predicted_rate(1, 0.5) == doctest::Approx(4.0 * std::pow(0.5, 1.5) / 1.5));
}

TEST_CASE("fit_exponential recovers an exact exponential") {
  std::vector<double> y;
  for (double t : kLadder) y.push_back(3.0 * std::exp(-0.7 * t));
  const auto f = fit_exponential(kLadder, y);
  CHECK(f.rate == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(f.amplitude == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("decay rates on K = [1/2, 1]") {
  for (auto [m, d] : {std::pair{1, 0}, std::pair{2, 0}}) {
    CAPTURE(m);
    const auto f = decay_fit(m, d, {}, kLadder);
    for (std::size_t i = 1; i < f.distance.size(); ++i) CHECK(f.distance[i] < f.distance[i - 1]);
    CHECK(f.predicted_rate == doctest::Approx(m == 1 ? 0.9428 : 0.5).epsilon(1e-4));
    CHECK(f.relative_gap < 0.10);
  }
  // The rate does not depend on d at fixed m.
  const double r0 = decay_fit(3, 0, {}, kLadder).fit.rate, r1 = decay_fit(3, 1, {}, kLadder).fit.rate;
  CHECK(std::abs(r0 - r1) / r0 < 0.05);
}

TEST_CASE("degenerate ray m = 2d") {
  CHECK(code_of([] { decay_fit(2, 1, {}, kLadder); }) == ErrorCode::NonPositiveRate);
  DecayFitOptions o;
  o.allow_degenerate = true;
  const auto f = decay_fit(2, 1, {}, kLadder, o);
  CHECK(f.degenerate);
  for (double x : f.distance) CHECK(x == 0.0);
}
