#include <doctest.h>

#include <random>

#include "hitchin/exact_complex.hpp"
#include "hitchin/hecke_local.hpp"

using namespace hitchin;
using namespace hitchin::hecke;
using cplx = std::complex<double>;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::NumericalFailure;
}

TruncatedPoly<cplx> tp(std::vector<cplx> c) {
  const int m = static_cast<int>(c.size());
  return TruncatedPoly<cplx>(m, std::move(c));
}

ExactComplex rational(int p, int q, int r = 0, int s = 1) { return {Rational(p) / q, Rational(r) / s}; }

}  // namespace

TEST_CASE("trunc_mul and trunc_inverse examples") {
  CHECK(trunc_mul(tp({1.0, 1.0}), tp({1.0, -1.0})) == tp({1.0, 0.0}));
  CHECK(trunc_mul(tp({0.0, 1.0}), tp({0.0, 1.0})) == tp({0.0, 0.0}));
  CHECK(trunc_mul(tp({2.0, 3.0}), tp({1.0, 0.0})) == tp({2.0, 3.0}));
  CHECK(code_of([] { trunc_mul(tp({1.0}), tp({1.0, 2.0})); }) == ErrorCode::ModulusMismatch);

  CHECK(trunc_inverse(tp({2.0, 0.0})) == tp({0.5, 0.0}));
  // Geometric series (1 + z)^{-1} = 1 - z + z^2 - ...
  CHECK(trunc_inverse(tp({1.0, 1.0})) == tp({1.0, -1.0}));
  CHECK(trunc_inverse(tp({1.0, 1.0, 0.0, 0.0})) == tp({1.0, -1.0, 1.0, -1.0}));
  CHECK(code_of([] { trunc_inverse(tp({0.0, 1.0})); }) == ErrorCode::NotInvertible);
}

TEST_CASE("u_transition examples") {
  CHECK(u_transition(tp({1.0})) == tp({1.0}));
  CHECK(u_transition(tp({2.0, 4.0})) == tp({0.5, -1.0}));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> logmag(std::log(0.1), std::log(10.0)), phase(0.0, 6.283185307179586),
      coef(-1.0, 1.0);
  std::uniform_int_distribution<int> mod(1, 6);
  for (int k = 0; k < 1000; ++k) {
    std::vector<cplx> c{std::polar(std::exp(logmag(rng)), phase(rng))};
    for (int j = mod(rng); j > 1; --j) c.emplace_back(coef(rng), coef(rng));
    const auto u = tp(c);
    const auto back = u_transition(u_transition(u));
    double err = 0.0;
    for (int j = 0; j < u.modulus(); ++j) err = std::max(err, std::abs(back[j] - u[j]));
    // Relative to the coefficient scale, which can reach |u0|^{-(m-1)} in the inverse.
    CHECK(err <= 1e-12 * std::pow(std::max(std::abs(u[0]), 1.0 / std::abs(u[0])), u.modulus()));
  }
}

TEST_CASE("local_higgs normal forms") {
  const LocalHiggsModel<ExactComplex> simple(1, 0, TruncatedPoly<ExactComplex>::zero(0));
  const auto phi = local_higgs(simple);
  CHECK(phi.e[0][0].is_zero());
  CHECK(phi.e[0][1] == Poly<ExactComplex>::monomial(1, 1));
  CHECK(phi.e[1][0] == Poly<ExactComplex>::monomial(1, 0));
  CHECK(phi.e[1][1].is_zero());
  CHECK(phi.det() == Poly<ExactComplex>::monomial(-1, 1));

  // n = 5, v = 1, u = [u0]: det = -u0^2 z^6 - z^5 (1 - u0^2 z) = -z^5.
  const LocalHiggsModel<ExactComplex> five(5, 1, TruncatedPoly<ExactComplex>(1, {rational(3, 7, -2, 5)}));
  CHECK(determinant_identity_holds_exactly(five));
  const LocalHiggsModel<ExactComplex> four(4, 0, TruncatedPoly<ExactComplex>(2, {rational(1, 3), rational(-5, 2, 1, 9)}));
  CHECK(determinant_identity_holds_exactly(four));
  CHECK(local_higgs(four).trace().is_zero());

  CHECK(code_of([] { LocalHiggsModel<cplx>(4, 0, tp({1.0})); }) == ErrorCode::IncompatibleModulus);
  CHECK(code_of([] { LocalHiggsModel<cplx>(4, 3, TruncatedPoly<cplx>::zero(0)); }) == ErrorCode::IncompatibleModulus);
}

TEST_CASE("frame descent at even zeros needs u(0) != +-1") {
  CHECK(code_of([] { LocalHiggsModel<cplx>(4, 0, tp({1.0, 0.5})).check_frame_descent(); }) ==
        ErrorCode::ConstraintViolated);
  CHECK(code_of([] { LocalHiggsModel<cplx>(6, 1, tp({-1.0, 0.0})).check_frame_descent(); }) ==
        ErrorCode::ConstraintViolated);
  LocalHiggsModel<cplx>(4, 0, tp({0.5, 1.0})).check_frame_descent();
  LocalHiggsModel<cplx>(5, 0, tp({1.0, 1.0})).check_frame_descent();
}

TEST_CASE("property: det(local_higgs) = -z^n, pointwise evaluation oracle") {
  // The determinant of the evaluated 2x2 matrix at sample points, independent of polynomial products.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  for (int n = 1; n <= 9; ++n) {
    for (int v = 0; v <= n / 2; ++v) {
      for (int k = 0; k < 100; ++k) {
        std::vector<cplx> u;
        for (int j = 0; j < n / 2 - v; ++j) u.emplace_back(c(rng), c(rng));
        const LocalHiggsModel<cplx> model(n, v, tp(u));
        CHECK(determinant_defect(model) < 1e-12);
        const auto phi = local_higgs(model);
        const cplx z(c(rng), c(rng));
        const cplx det = phi.e[0][0].evaluate(z) * phi.e[1][1].evaluate(z) - phi.e[0][1].evaluate(z) * phi.e[1][0].evaluate(z);
        CHECK(std::abs(det + std::pow(z, n)) < 1e-12);
      }
    }
  }
}

TEST_CASE("property: exact determinant for rational u, n <= 9") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  for (int n = 1; n <= 9; ++n) {
    for (int v = 0; v <= n / 2; ++v) {
      for (int k = 0; k < 100; ++k) {
        std::vector<ExactComplex> u;
        for (int j = 0; j < n / 2 - v; ++j) u.push_back(rational(num(rng), den(rng), num(rng), den(rng)));
        const LocalHiggsModel<ExactComplex> model(n, v, TruncatedPoly<ExactComplex>(n / 2 - v, u));
        CHECK(determinant_identity_holds_exactly(model));
      }
    }
  }
}

TEST_CASE("property: truncated ring axioms, exact") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  auto rnd = [&](int m, bool unit) {
    std::vector<ExactComplex> c;
    for (int j = 0; j < m; ++j) c.push_back(rational(num(rng), den(rng), num(rng), den(rng)));
    if (unit && c[0].is_zero()) c[0] = ExactComplex(1);
    return TruncatedPoly<ExactComplex>(m, c);
  };
  for (int m = 1; m <= 7; ++m) {
    for (int k = 0; k < 25; ++k) {
      const auto a = rnd(m, true), b = rnd(m, false), c = rnd(m, false);
      CHECK(trunc_mul(trunc_mul(a, b), c) == trunc_mul(a, trunc_mul(b, c)));
      CHECK(trunc_mul(a, b) == trunc_mul(b, a));
      const auto inv = trunc_inverse(a);
      CHECK(trunc_mul(a, inv) == TruncatedPoly<ExactComplex>::one(m));
      CHECK(trunc_mul(inv, a) == TruncatedPoly<ExactComplex>::one(m));
      CHECK(u_transition(u_transition(a)) == a);
    }
  }
}

TEST_CASE("limiting_metric") {
  const auto h = limiting_metric(3, 0, 1.0, 0.0, 0.5);
  CHECK(h[0][0].real() == doctest::Approx(std::pow(0.5, 1.5)).epsilon(1e-14));
  CHECK(h[1][1].real() == doctest::Approx(std::pow(0.5, -1.5)).epsilon(1e-14));
  CHECK(h[0][0].real() == doctest::Approx(0.35355339059).epsilon(1e-10));
  CHECK(h[1][1].real() == doctest::Approx(2.82842712475).epsilon(1e-10));
  CHECK(h[0][1] == cplx(0.0));
  CHECK(code_of([] { limiting_metric(4, 0, 1.0, 0.1, 0.5); }) == ErrorCode::ConstraintViolated);
  CHECK(code_of([] { limiting_metric(3, 0, 1.0, 0.0, 0.0); }) == ErrorCode::OriginEvaluation);

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  for (int n = 1; n <= 9; ++n) {
    for (int v = 0; v <= n / 2; ++v) {
      for (int k = 0; k < 20; ++k) {
        const cplx z(c(rng), c(rng));
        const cplx g2 = n % 2 ? cplx(c(rng), c(rng)) : cplx(c(rng), 0.0);
        const double g1 = std::sqrt(1.0 + std::norm(g2) * (n % 2 ? std::abs(z) : 1.0));
        const auto m = limiting_metric(n, v, g1, g2, z);
        CHECK(std::abs(det(m) - 1.0) < 1e-12);
        CHECK(std::abs(m[0][1] - std::conj(m[1][0])) < 1e-14);
      }
    }
  }
}

TEST_CASE("is_locally_fiducial") {
  CHECK(is_locally_fiducial(LocalHiggsModel<cplx>(5, 2, TruncatedPoly<cplx>::zero(0))));
  CHECK(is_locally_fiducial(LocalHiggsModel<cplx>(5, 1, tp({0.0}))));
  CHECK_FALSE(is_locally_fiducial(LocalHiggsModel<cplx>(4, 0, tp({0.3, 0.0}))));
  // Fiducial models admit g1 = 1, g2 = 0.
  for (int n = 1; n <= 9; ++n) {
    const LocalHiggsModel<cplx> model(n, 0, TruncatedPoly<cplx>::zero(n / 2));
    CHECK(std::abs(det(limiting_metric(model, 1.0, 0.0, cplx(0.2, -0.7))) - 1.0) < 1e-14);
  }
}

TEST_CASE("decoupled equations for the fiducial pair") {
  AnnulusGrid grid;
  const auto r = decoupled_residual(1, 0, grid);
  CHECK(r.curvature < 1e-5);
  CHECK(r.commutator < 1e-5);
  CHECK(r.holomorphicity < 1e-5);
  for (int n : {1, 2, 3, 5}) {
    for (int v = 0; v <= n / 2; ++v) {
      for (auto z : grid.points()) CHECK(std::abs(fiducial_commutator_entry(n, v, z)) < 1e-15);
    }
  }
  // Second-order stencil: halving h divides the curvature residual by about 4 (steps large
  // enough that rounding stays negligible). The leading error of the five-point Laplacian on
  // log r is proportional to cos(4 theta), which vanishes on the default 8-point circle, so
  // six angles are used here.
  AnnulusGrid coarse = grid, fine = grid;
  coarse.angular_samples = fine.angular_samples = 6;
  coarse.step = 0.02;
  fine.step = 0.01;
  const double ratio = decoupled_residual(3, 0, coarse).curvature / decoupled_residual(3, 0, fine).curvature;
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
  AnnulusGrid bad = grid;
  bad.r_min = 0.001;
  bad.step = 0.001;
  CHECK(code_of([&] { decoupled_residual(1, 0, bad); }) == ErrorCode::GridTouchesOrigin);
}
