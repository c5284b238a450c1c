#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <functional>
#include <random>

#include "hitchin/error.hpp"
#include "hitchin/periods.hpp"

using namespace hitchin;
using namespace hitchin::periods;

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

PathSpec circle(cplx c, double r, int turns = 1) {
  PathSpec p;
  p.segments = {Segment::circle(c, r, turns)};
  return p;
}

// Real-line oracle: int_lo^hi dx / sqrt|P(x)| with endpoint singularities, by tanh-sinh.
double real_period(const std::function<double(double)>& p, double lo, double hi) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate([&](double x) { return 1.0 / std::sqrt(std::abs(p(x))); }, lo, hi);
}

const std::vector<cplx> kCubic = {0.0, -1.0, 0.0, 1.0};              // x^3 - x
const std::vector<cplx> kQuintic = {0.0, 4.0, 0.0, -5.0, 0.0, 1.0};  // x^5 - 5x^3 + 4x

}  // namespace

TEST_CASE("sqrtq_integrate examples") {
  CHECK(std::abs(sqrtq_integrate(PolyQuadDiff({0.0, 0.0, 1.0}), circle(0.0, 2.0))) < 1e-10);

  // Laurent oracle: sqrt(z^2 - 1) = z - 1/(2z) + O(z^-3), so the loop picks up 2 pi i (-1/2) per branch.
  const cplx v = sqrtq_integrate(PolyQuadDiff({-1.0, 0.0, 1.0}), circle(0.0, 2.0));
  CHECK(std::abs(std::abs(v.imag()) - M_PI) < 1e-8);
  CHECK(std::abs(v.real()) < 1e-8);

  // The antiderivative (2/3) z^{3/2} is single valued on the double loop.
  CHECK(std::abs(sqrtq_integrate(PolyQuadDiff({0.0, 1.0}), circle(0.0, 1.0, 2))) < 1e-10);
  // One loop alone changes branch: (2/3)(w_end - w_start) with w_end = -w_start.
  CHECK(std::abs(sqrtq_integrate(PolyQuadDiff({0.0, 1.0}), circle(0.0, 1.0)) - cplx(-4.0 / 3.0, 0.0)) < 1e-10);
}

TEST_CASE("sqrtq_integrate against an antiderivative on an open path") {
  // q = z: int sqrt(z) dz = (2/3) z^{3/2}, along a line in the right half plane.
  PathSpec p;
  p.segments = {Segment::line(cplx(1.0, -1.0), cplx(2.0, 3.0))};
  const auto f = [](cplx z) { return 2.0 / 3.0 * std::pow(z, 1.5); };
  CHECK(std::abs(sqrtq_integrate(PolyQuadDiff({0.0, 1.0}), p) - (f(cplx(2.0, 3.0)) - f(cplx(1.0, -1.0)))) < 1e-12);
}

TEST_CASE("property: branch consistency") {
  const PolyQuadDiff q({-1.0, 0.0, 1.0});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 20; ++k) {
    const cplx c(u(rng), u(rng));
    // A small loop that stays clear of both zeros.
    const double r = 0.5 * std::min(std::abs(c - 1.0), std::abs(c + 1.0));
    CHECK(std::abs(sqrtq_integrate(q, circle(c, r))) < 1e-9);
  }
  // Reversal negates when started on the branch the forward path ends on.
  PathSpec open;
  open.segments = {Segment::line(cplx(0.3, 2.0), cplx(2.0, 0.5)), Segment::line(cplx(2.0, 0.5), cplx(1.5, -1.0))};
  const auto fwd = tracked_integrate(q, q.zeros(), open, 1, [](cplx, cplx w, cplx* out) { out[0] = w; });
  PathSpec back = open.reversed();
  back.initial_sign = std::real(fwd.end_branch / std::sqrt(q(cplx(1.5, -1.0)))) > 0.0 ? 1 : -1;
  CHECK(std::abs(fwd.values[0] + sqrtq_integrate(q, back)) < 1e-10);
}

TEST_CASE("path errors") {
  PathSpec through;
  through.segments = {Segment::line(cplx(-2.0, 0.0), cplx(2.0, 0.0))};
  CHECK(code_of([&] { sqrtq_integrate(PolyQuadDiff({-1.0, 0.0, 1.0}), through); }) == ErrorCode::PathHitsZero);
}

TEST_CASE("sk_energy examples") {
  const Disk unit;
  CHECK(std::abs(sk_energy(PolyQuadDiff({1.0}), PolyQuadDiff({1.0}), unit) - M_PI / 4) < 1e-10);
  // Polar oracle: int r^{-1} dA over the unit disk = 2 pi.
  CHECK(std::abs(sk_energy(PolyQuadDiff({0.0, 1.0}), PolyQuadDiff({1.0}), unit) / (M_PI / 2) - 1.0) < 1e-4);
  CHECK(std::abs(sk_energy(PolyQuadDiff({0.0, 0.0, 1.0}), PolyQuadDiff({0.0, 1.0}), unit) / (M_PI / 4) - 1.0) < 1e-4);
  // Off-center zero: polar oracle around the zero is not available, so compare two kappas and resolutions.
  const PolyQuadDiff q({cplx(-0.3, -0.2), 1.0});
  const auto rep = sk_energy_report(q, PolyQuadDiff({1.0}), unit, 0.37);
  CHECK(rep.refinement_change < 1e-5);
  CHECK(sk_energy(q, PolyQuadDiff({1.0}), unit, 1.0) == doctest::Approx(rep.value / 0.37).epsilon(1e-12));

  CHECK(code_of([&] { sk_energy(PolyQuadDiff({0.0, 0.0, 1.0}), PolyQuadDiff({1.0}), unit); }) ==
        ErrorCode::NonIntegrableSingularity);
  CHECK(code_of([&] { sk_energy(PolyQuadDiff({-1.0, 1.0}), PolyQuadDiff({1.0}), unit); }) ==
        ErrorCode::ZeroOnBoundary);
}

TEST_CASE("property: sk_energy rotation and scaling") {
  const std::vector<cplx> qc = {cplx(0.1, -0.2), cplx(0.0, 0.3), 1.0};
  const std::vector<cplx> dc = {cplx(1.0, 0.5), cplx(-0.4, 0.0)};
  const Disk disk{cplx(0.2, 0.1), 1.3};
  const double base = sk_energy(PolyQuadDiff(qc), PolyQuadDiff(dc), disk);

  // Rotate everything by e^{i theta}: q(z) -> q(e^{-i theta} z).
  const cplx rot = std::polar(1.0, 0.8);
  auto rotated = [&](const std::vector<cplx>& c) {
    std::vector<cplx> out(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) out[j] = c[j] * std::pow(std::conj(rot), static_cast<int>(j));
    return out;
  };
  CHECK(sk_energy(PolyQuadDiff(rotated(qc)), PolyQuadDiff(rotated(dc)), Disk{rot * disk.center, disk.radius}) ==
        doctest::Approx(base).epsilon(1e-8));

  const cplx lambda(0.6, -1.1), mu(-2.0, 0.7);
  auto scaled = [](std::vector<cplx> c, cplx s) {
    for (auto& x : c) x *= s;
    return c;
  };
  CHECK(sk_energy(PolyQuadDiff(scaled(qc, mu)), PolyQuadDiff(scaled(dc, lambda)), disk) ==
        doctest::Approx(base * std::norm(lambda) / std::abs(mu)).epsilon(1e-10));
}

TEST_CASE("pullback to the spectral cover") {
  const Disk unit;
  const auto a = pullback_identity_check(PolyQuadDiff({0.0, 1.0}), PolyQuadDiff({1.0}), unit);
  CHECK(a.ramified);
  CHECK(a.discrepancy < 1e-6);
  const auto b = pullback_identity_check(PolyQuadDiff({1.0}), PolyQuadDiff({1.0}), unit);
  CHECK_FALSE(b.ramified);
  CHECK(b.discrepancy < 1e-6);
  const auto c = pullback_identity_check(PolyQuadDiff({0.0, 0.0, 0.0, 1.0}), PolyQuadDiff({0.0, 1.0}), unit);
  CHECK(c.ramified);
  CHECK(c.discrepancy < 1e-6);

  PullbackOptions strict;
  strict.allow_two_sheets = false;
  CHECK(code_of([&] {
          pullback_identity_check(PolyQuadDiff({0.0, 0.0, 1.0}), PolyQuadDiff({0.0, 1.0}), unit, 1.0, strict);
        }) == ErrorCode::EvenZeroChart);
}

TEST_CASE("period matrix of x^3 - x") {
  const auto pm = period_matrix(kCubic, standard_cycles(kCubic, {-1.0, 0.0, 1.0}));
  CHECK(std::abs(pm.tau(0, 0) - cplx(0.0, 1.0)) < 1e-6);
  const auto p = [](double x) { return x * x * x - x; };
  // Each cycle collapses onto twice the real segment between its branch points, and
  // 2 int_0^1 dx / sqrt(x - x^3) = B(1/4, 1/2) after x^2 = u.
  const double beta = std::beta(0.25, 0.5);
  CHECK(std::abs(pm.a_periods(0, 0)) == doctest::Approx(beta).epsilon(1e-12));
  CHECK(std::abs(pm.b_periods(0, 0)) == doctest::Approx(beta).epsilon(1e-12));
  // Direct quadrature loses digits to cancellation in x^3 - x at the endpoints.
  CHECK(std::abs(pm.a_periods(0, 0)) == doctest::Approx(2.0 * real_period(p, -1.0, 0.0)).epsilon(1e-8));
  CHECK(std::abs(pm.b_periods(0, 0)) == doctest::Approx(2.0 * real_period(p, 0.0, 1.0)).epsilon(1e-8));
  CHECK(pm.symmetry_defect < 1e-8);
  CHECK(pm.min_imag_eigenvalue > 0.0);
}

TEST_CASE("period matrix of x^3 - 1") {
  const auto pm = period_matrix({-1.0, 0.0, 0.0, 1.0}, cubic_unity_cycles());
  const cplx omega = std::polar(1.0, 2.0 * M_PI / 3.0);
  const cplx reduced = reduce_to_fundamental_domain(pm.tau(0, 0));
  // e^{2 pi i/3} and e^{pi i/3} are the same point of the modular orbit.
  CHECK(std::min(std::abs(reduced - omega), std::abs(reduced - (omega + 1.0))) < 1e-6);
}

TEST_CASE("property: Riemann relations, genus 2") {
  const auto pm = period_matrix(kQuintic, standard_cycles(kQuintic, {-2.0, -1.0, 0.0, 1.0, 2.0}), 1e-8);
  CHECK(pm.genus == 2);
  CHECK(pm.symmetry_defect < 1e-8);
  CHECK(pm.min_imag_eigenvalue > 0.0);
  auto cycles = standard_cycles(kQuintic, {-2.0, -1.0, 0.0, 1.0, 2.0});
  cycles.pop_back();
  CHECK(code_of([&] { period_matrix(kQuintic, cycles); }) == ErrorCode::CycleCountMismatch);
}

TEST_CASE("torus benchmarks against the area oracle") {
  for (cplx tau : {cplx(0.0, 1.0), cplx(0.3, 1.7)}) {
    const auto pm = flat_torus(tau);
    // Area of C / (Z + tau Z) is Im tau; |dz|^2 = 2 Area.
    const double area = tau.imag();
    const Eigen::VectorXcd dz = Eigen::VectorXcd::Ones(1);
    CHECK(std::abs(horizontal_norm(dz, pm, 1.0) - area) < 1e-12);
    CHECK(std::abs(vertical_norm(dz, pm, 1.0) - 4.0 * area) < 1e-12);
    CHECK(std::abs(vertical_norm(dz, pm, 2.0) - 2.0 * area) < 1e-12);
    CHECK(horizontal_norm(Eigen::VectorXcd::Zero(1), pm) == 0.0);
    CHECK(vertical_norm(Eigen::VectorXcd::Zero(1), pm) == 0.0);
    const cplx c(1.5, -0.5);
    CHECK(horizontal_norm(c * dz, pm) == doctest::Approx(std::norm(c) * horizontal_norm(dz, pm)).epsilon(1e-14));
    CHECK(hodge_duality_check(dz, pm, 1.0) < 1e-10);
    CHECK(hodge_duality_check(dz, pm, 2.0) < 1e-10);
  }
  CHECK(code_of([] { horizontal_norm(Eigen::VectorXcd::Ones(2), flat_torus(cplx(0, 1))); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([] { hodge_duality_check(Eigen::VectorXcd::Zero(1), flat_torus(cplx(0, 1))); }) ==
        ErrorCode::ZeroInput);
}

TEST_CASE("property: semi-flat duality on hyperelliptic curves") {
  const auto cubic = period_matrix(kCubic, standard_cycles(kCubic, {-1.0, 0.0, 1.0}));
  const auto quintic = period_matrix(kQuintic, standard_cycles(kQuintic, {-2.0, -1.0, 0.0, 1.0, 2.0}));
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n01;
  for (const auto* pm : {&cubic, &quintic}) {
    const auto g = gram_form(*pm);
    CHECK((g - g.adjoint()).norm() < 1e-10 * g.norm());
    for (int k = 0; k < 100; ++k) {
      Eigen::VectorXcd c(pm->genus);
      for (int j = 0; j < pm->genus; ++j) c(j) = cplx(n01(rng), n01(rng));
      const double h1 = hodge_duality_check(c, *pm, 1.0), h2 = hodge_duality_check(c, *pm, 2.0);
      CHECK(h1 < 1e-8);
      CHECK(h2 < 1e-8);
      CHECK(horizontal_norm(c, *pm) > 0.0);
    }
  }
}
