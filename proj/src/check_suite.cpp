#include "hitchin/check_suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "hitchin/error.hpp"
#include "hitchin/exact_complex.hpp"
#include "hitchin/glue.hpp"
#include "hitchin/hecke_local.hpp"
#include "hitchin/model_ray.hpp"
#include "hitchin/painleve.hpp"
#include "hitchin/periods.hpp"
#include "hitchin/strata.hpp"

namespace hitchin::checks {

namespace {

using cplx = std::complex<double>;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(4) << x;
  return os.str();
}

class Runner {
 public:
  void add(std::string module, std::string name, const std::function<Outcome()>& body) {
    CheckResult r{std::move(module), std::move(name), false, {}, 0.0};
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome o = body();
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("threw ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(r));
  }
  std::vector<CheckResult> results;
};

std::vector<double> desk_ladder() {
  std::vector<double> t;
  for (int k = 2; k <= 12; ++k) t.push_back(k);
  return t;
}

const std::vector<std::pair<int, int>> kRayCases = {{1, 0}, {2, 0}, {3, 1}};

// ---------------------------------------------------------------- strata

void strata_checks(Runner& run) {
  using namespace strata;
  auto for_all = [](const std::function<bool(const Partition&, const HiggsDivisor&, std::string&)>& f) {
    int pairs = 0;
    std::string why;
    for (int g : {2, 3}) {
      for (const auto& p : all_partitions(g)) {
        for (const auto& v : all_divisors(p)) {
          ++pairs;
          if (!f(p, v, why)) return Outcome{false, why};
        }
      }
    }
    return Outcome{true, std::to_string(pairs) + " (partition, divisor) pairs"};
  };

  run.add("strata", "k1 + k2 + prym = 3g-3-deg V", [&] {
    return for_all([](const Partition& p, const HiggsDivisor& v, std::string& why) {
      const auto s = fiber_shape(p, v);
      if (s.k1 + s.k2 + s.prym_dim == fiber_stratum_dimension(p.genus(), v)) return true;
      why = "dimension mismatch at g=" + std::to_string(p.genus());
      return false;
    });
  });
  run.add("strata", "fiber_shape matches Hecke oracle", [&] {
    return for_all([](const Partition& p, const HiggsDivisor& v, std::string& why) {
      const auto s = fiber_shape(p, v);
      int k1 = 0, k2 = 0;
      for (const auto& l : hecke_param_oracle(p, v)) {
        k1 += l.has_cstar ? 1 : 0;
        k2 += l.c_dim;
      }
      if (k1 == s.k1 && k2 == s.k2) return true;
      why = "oracle (" + std::to_string(k1) + "," + std::to_string(k2) + ") vs shape (" + std::to_string(s.k1) +
            "," + std::to_string(s.k2) + ")";
      return false;
    });
  });
  run.add("strata", "V_max has shape (0,0)", [] {
    int count = 0;
    for (int g : {2, 3, 4}) {
      for (const auto& p : all_partitions(g)) {
        const auto s = fiber_shape(p, v_max(p));
        if (s.k1 != 0 || s.k2 != 0) return Outcome{false, "nonzero shape at g=" + std::to_string(g)};
        ++count;
      }
    }
    return Outcome{true, std::to_string(count) + " partitions, g <= 4"};
  });
  run.add("strata", "r_odd even", [] {
    for (int g : {2, 3, 4}) {
      for (const auto& p : all_partitions(g)) {
        if (p.r_odd() % 2 != 0) return Outcome{false, "odd r_odd at g=" + std::to_string(g)};
      }
    }
    return Outcome{true, "g <= 4"};
  });
  run.add("strata", "limiting excess over Prym = r_even", [] {
    for (int g : {2, 3, 4}) {
      for (const auto& p : all_partitions(g)) {
        if (limiting_moduli_dimension(p).excess_over_prym != p.r_even()) {
          return Outcome{false, "mismatch at g=" + std::to_string(g)};
        }
      }
    }
    return Outcome{true, "real dimensions, g <= 4"};
  });
}

// ---------------------------------------------------------------- hecke

ExactComplex random_exact(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  return {Rational(num(rng)) / den(rng), Rational(num(rng)) / den(rng)};
}

cplx random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

template <class T, class Gen>
TruncatedPoly<T> random_trunc(int modulus, Gen&& gen, bool unit) {
  std::vector<T> c;
  for (int j = 0; j < modulus; ++j) c.push_back(gen());
  if (unit && modulus > 0 && ScalarTraits<T>::is_zero(c[0])) c[0] = T(1);
  return TruncatedPoly<T>(modulus, std::move(c));
}

double max_diff(const TruncatedPoly<cplx>& a, const TruncatedPoly<cplx>& b) {
  double worst = 0.0;
  for (int j = 0; j < a.modulus(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
  return worst;
}

void hecke_checks(Runner& run, std::uint64_t seed) {
  using namespace hecke;
  run.add("hecke_local", "det(local_higgs) = -z^n (exact, n <= 9)", [seed] {
    std::mt19937_64 rng(seed);
    int models = 0;
    for (int n = 1; n <= 9; ++n) {
      for (int v = 0; v <= n / 2; ++v) {
        for (int k = 0; k < 100; ++k) {
          LocalHiggsModel<ExactComplex> model(n, v, random_trunc<ExactComplex>(n / 2 - v, [&] { return random_exact(rng); }, false));
          if (!determinant_identity_holds_exactly(model)) {
            return Outcome{false, "n=" + std::to_string(n) + " v=" + std::to_string(v)};
          }
          ++models;
        }
      }
    }
    return Outcome{true, std::to_string(models) + " models"};
  });
  run.add("hecke_local", "det(local_higgs) = -z^n (double, n <= 9)", [seed] {
    std::mt19937_64 rng(seed + 1);
    double worst = 0.0;
    for (int n = 1; n <= 9; ++n) {
      for (int v = 0; v <= n / 2; ++v) {
        for (int k = 0; k < 100; ++k) {
          LocalHiggsModel<cplx> model(n, v, random_trunc<cplx>(n / 2 - v, [&] { return random_complex(rng); }, false));
          worst = std::max(worst, determinant_defect(model));
        }
      }
    }
    return Outcome{worst < 1e-12, "max defect " + fmt(worst)};
  });
  run.add("hecke_local", "u_transition is an involution", [seed] {
    std::mt19937_64 rng(seed + 2);
    std::uniform_int_distribution<int> mod(1, 6);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      std::vector<cplx> c;
      for (int j = mod(rng); j > 0; --j) c.push_back(random_complex(rng));
      c[0] += std::polar(0.5, std::arg(c[0]));  // keeps |u(0)| >= 0.5 on the chart overlap
      const TruncatedPoly<cplx> u(static_cast<int>(c.size()), c);
      const auto back = u_transition(u_transition(u));
      worst = std::max(worst, max_diff(back, u) / std::max(1.0, std::abs(u[0])));
    }
    return Outcome{worst < 1e-12, "1000 inputs, max error " + fmt(worst)};
  });
  run.add("hecke_local", "trunc ring axioms (exact)", [seed] {
    std::mt19937_64 rng(seed + 3);
    for (int m = 1; m <= 6; ++m) {
      for (int k = 0; k < 20; ++k) {
        auto gen = [&] { return random_exact(rng); };
        const auto a = random_trunc<ExactComplex>(m, gen, true);
        const auto b = random_trunc<ExactComplex>(m, gen, false);
        const auto c = random_trunc<ExactComplex>(m, gen, false);
        if (!(trunc_mul(trunc_mul(a, b), c) == trunc_mul(a, trunc_mul(b, c)))) return Outcome{false, "associativity"};
        if (!(trunc_mul(a, b) == trunc_mul(b, a))) return Outcome{false, "commutativity"};
        const auto inv = trunc_inverse(a);
        const auto one = TruncatedPoly<ExactComplex>::one(m);
        if (!(trunc_mul(a, inv) == one && trunc_mul(inv, a) == one)) return Outcome{false, "inverse"};
      }
    }
    return Outcome{true, "moduli 1..6, 20 triples each"};
  });
  run.add("hecke_local", "limiting_metric has det 1", [seed] {
    std::mt19937_64 rng(seed + 4);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    for (int n = 1; n <= 9; ++n) {
      for (int v = 0; v <= n / 2; ++v) {
        for (int k = 0; k < 20; ++k) {
          cplx z = random_complex(rng);
          if (std::abs(z) < 1e-3) z = 0.5;
          cplx g2 = (n % 2 == 1) ? random_complex(rng) : cplx(u(rng), 0.0);
          const double g1 = std::sqrt(1.0 + std::norm(g2) * (n % 2 == 1 ? std::abs(z) : 1.0));
          worst = std::max(worst, std::abs(det(limiting_metric(n, v, g1, g2, z)) - 1.0));
        }
      }
    }
    return Outcome{worst < 1e-12, "max |det - 1| " + fmt(worst)};
  });
  run.add("hecke_local", "fiducial models admit g1 = 1, g2 = 0", [] {
    for (int n = 1; n <= 9; ++n) {
      for (int v = 0; v <= n / 2; ++v) {
        LocalHiggsModel<cplx> model(n, v, TruncatedPoly<cplx>::zero(n / 2 - v));
        if (!is_locally_fiducial(model)) return Outcome{false, "u = 0 not fiducial"};
        const auto h = limiting_metric(model, 1.0, 0.0, cplx(0.3, 0.4));
        if (std::abs(det(h) - 1.0) > 1e-14 || h[0][1] != 0.0) return Outcome{false, "metric not diagonal"};
      }
    }
    return Outcome{true, "n <= 9"};
  });
}

// ---------------------------------------------------------------- painleve

const std::vector<double> kPsiAs = {0.1, 1.0 / 3.0, 0.5, 0.8};

void painleve_checks(Runner& run, double rhs_scale) {
  using namespace painleve;
  const double tol = 1e-8;
  auto solve = [rhs_scale, tol](double a, int nodes = 2000) {
    PsiOptions o;
    o.nodes = nodes;
    o.rhs_scale = rhs_scale;
    return solve_psi(a, 1e-4, 20.0, tol, o);
  };

  run.add("painleve", "ODE residual < 10 tol", [&] {
    double worst = 0.0;
    for (double a : kPsiAs) worst = std::max(worst, ode_residual(solve(a).psi));
    return Outcome{worst < 10.0 * tol, "max rho^2-scaled residual " + fmt(worst)};
  });
  run.add("painleve", "positive, decreasing, convex tail", [&] {
    for (double a : kPsiAs) {
      PsiOptions o;
      o.rhs_scale = rhs_scale;
      o.check_monotone = false;
      const auto s = solve_psi(a, 1e-4, 20.0, tol, o);
      const auto& g = s.psi.grid;
      for (int i = 0; i + 1 < g.size(); ++i) {
        if (!(s.psi.values[i] > s.psi.values[i + 1])) return Outcome{false, "not strictly decreasing, a=" + fmt(a)};
        if (!(s.psi.values[i] > 0.0)) return Outcome{false, "not positive, a=" + fmt(a)};
        if (g[i] >= 5.0 && g[i] <= 15.0 && !(s.psi.d2[i] > 0.0)) return Outcome{false, "not convex, a=" + fmt(a)};
      }
    }
    return Outcome{true, "a in {0.1, 1/3, 0.5, 0.8}; convexity on [5, 15]"};
  });
  run.add("painleve", "grid refinement ratio", [&] {
    // Differences at shared nodes between N, 2N-1 and 4N-3 nodes.
    const int n = 400;
    const auto c = solve(1.0 / 3.0, n), m = solve(1.0 / 3.0, 2 * n - 1), f = solve(1.0 / 3.0, 4 * n - 3);
    double d1 = 0.0, d2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      d1 = std::max(d1, std::abs(c.psi.values[k] - m.psi.values[2 * k]));
      d2 = std::max(d2, std::abs(m.psi.values[2 * k] - f.psi.values[4 * k]));
    }
    const double ratio = d1 / d2;
    return Outcome{ratio >= 3.5 && ratio <= 4.5, "ratio " + fmt(ratio)};
  });
  run.add("painleve", "K0-shaped tail on [8, 15]", [&] {
    double worst = 0.0;
    for (double a : kPsiAs) {
      const auto s = solve(a);
      double lo = INFINITY, hi = -INFINITY;
      for (int i = 0; i < s.psi.grid.size(); ++i) {
        const double rho = s.psi.grid[i];
        if (rho < 8.0 || rho > 15.0) continue;
        const double x = std::log(s.psi.values[static_cast<std::size_t>(i)]) + rho + 0.5 * std::log(rho);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
      worst = std::max(worst, hi - lo);
    }
    return Outcome{worst < 0.1, "max spread of log psi + rho + log(rho)/2: " + fmt(worst)};
  });
}

// ---------------------------------------------------------------- model_ray

void model_checks(Runner& run, int threads) {
  using namespace model;
  run.add("model_ray", "det phi = -z^m dz^2 for all t", [] {
    const auto grid = AnnulusSpec{}.radial_grid();
    for (const auto& [m, d] : kRayCases) {
      for (double t : {1.0, 4.0, 12.0}) {
        if (determinant_exponent(model_pair(t, m, d, grid)) != m) return Outcome{false, "finite t"};
      }
      if (determinant_exponent(limiting_pair(m, d, grid)) != m) return Outcome{false, "t = infinity"};
    }
    return Outcome{true, "t in {1, 4, 12, inf}"};
  });
  run.add("model_ray", "C0 distance decreasing along ladder", [threads] {
    DecayFitOptions o;
    o.threads = threads;
    std::string detail;
    for (const auto& [m, d] : kRayCases) {
      const auto f = decay_fit(m, d, {}, desk_ladder(), o);
      for (std::size_t i = 1; i < f.distance.size(); ++i) {
        if (!(f.distance[i] < f.distance[i - 1])) return Outcome{false, "(m,d)=(" + std::to_string(m) + "," + std::to_string(d) + ")"};
      }
      detail += "(" + std::to_string(m) + "," + std::to_string(d) + ") " + fmt(f.distance.front()) + "->" +
                fmt(f.distance.back()) + " ";
    }
    return Outcome{true, detail};
  });
  run.add("model_ray", "fitted rate independent of d", [threads] {
    DecayFitOptions o;
    o.threads = threads;
    double worst = 0.0;
    std::string detail;
    for (int m : {3, 4}) {
      const double r0 = decay_fit(m, 0, {}, desk_ladder(), o).fit.rate;
      const double r1 = decay_fit(m, 1, {}, desk_ladder(), o).fit.rate;
      const double gap = std::abs(r0 - r1) / std::max(r0, r1);
      worst = std::max(worst, gap);
      detail += "m=" + std::to_string(m) + ": " + fmt(r0) + " vs " + fmt(r1) + "; ";
    }
    return Outcome{worst < 0.05, detail + "max gap " + fmt(worst)};
  });
  run.add("model_ray", "tr phi_t^2 = tr phi_inf^2", [] {
    const auto grid = AnnulusSpec{}.radial_grid();
    double worst = 0.0;
    for (const auto& [m, d] : kRayCases) {
      for (double t : {1.0, 4.0, 12.0}) {
        const auto p = model_pair(t, m, d, grid);
        const auto q = limiting_pair(m, d, grid);
        for (std::size_t i = 0; i < p.e_plus.size(); ++i) {
          worst = std::max(worst, std::abs(p.e_plus[i] * p.e_minus[i] - q.e_plus[i] * q.e_minus[i]));
        }
      }
    }
    // tr phi^2 = 2 e_+ e_- z^m; the exponents cancel exactly and the product is 1 up to rounding.
    return Outcome{worst < 8.0 * std::numeric_limits<double>::epsilon(), "max |e+e- - 1| " + fmt(worst)};
  });
}

// ---------------------------------------------------------------- glue

void glue_checks(Runner& run, int threads) {
  using namespace glue;
  const double tol = painleve::VProfileOptions{}.tol;
  run.add("glue", "error density confined to the collar", [tol] {
    const auto outer = painleve::RadialGrid::log_spaced(1.0, 3.0, 64);
    const auto inner = painleve::RadialGrid::log_spaced(0.01, 0.5, 200);
    double inside = 0.0;
    for (const auto& [m, d] : kRayCases) {
      for (double t : {2.0, 6.0, 12.0}) {
        for (double x : error_density_profile(t, m, d, outer).values) {
          if (x != 0.0) return Outcome{false, "nonzero for r >= 1"};
        }
        for (double x : error_density_profile(t, m, d, inner).values) inside = std::max(inside, std::abs(x));
      }
    }
    return Outcome{inside < 100.0 * tol, "exact 0 on r >= 1; max |f| on [0.01, 1/2] " + fmt(inside)};
  });
  run.add("glue", "approx metric C1 across r = 1/2 and r = 1", [] {
    const double h = 1e-6;
    double worst = 0.0;
    for (const auto& [m, d] : kRayCases) {
      for (double r0 : {0.5, 1.0}) {
        const double f0 = approx_metric_entry(6.0, m, d, r0);
        const double fl = approx_metric_entry(6.0, m, d, r0 - h);
        const double fr = approx_metric_entry(6.0, m, d, r0 + h);
        const double fll = approx_metric_entry(6.0, m, d, r0 - 2 * h);
        const double frr = approx_metric_entry(6.0, m, d, r0 + 2 * h);
        const double jump0 = std::abs((fl + fr) / 2.0 - f0);
        const double slope_l = (3 * f0 - 4 * fl + fll) / (2 * h);
        const double slope_r = (-3 * f0 + 4 * fr - frr) / (2 * h);
        worst = std::max({worst, jump0, std::abs(slope_l - slope_r) * h});
      }
    }
    // One-sided second-order slopes agree to O(h); scaled by h the jump is at the O(h^2) level.
    return Outcome{worst < 1e-9, "max scaled jump " + fmt(worst)};
  });
  run.add("glue", "sup collar error decreasing", [threads] {
    ErrorDecayOptions o;
    o.threads = threads;
    for (const auto& [m, d] : kRayCases) {
      const auto f = error_decay_fit(m, d, desk_ladder(), o);
      for (std::size_t i = 1; i < f.sup_error.size(); ++i) {
        if (!(f.sup_error[i] < f.sup_error[i - 1])) return Outcome{false, "(m,d)=(" + std::to_string(m) + "," + std::to_string(d) + ")"};
      }
    }
    return Outcome{true, "t = 2..12"};
  });
  run.add("glue", "chi = 1 reproduces the model residual", [] {
    const auto grid = painleve::RadialGrid::log_spaced(0.05, 0.5, 120);
    double worst = 0.0;
    for (const auto& [m, d] : kRayCases) {
      for (double t : {2.0, 8.0}) {
        const auto f = error_density_profile(t, m, d, grid);
        const auto h = model::hitchin_residual_radial(t, m, d, grid);
        for (std::size_t i = 0; i < f.values.size(); ++i) worst = std::max(worst, std::abs(f.values[i] - h.values[i]));
      }
    }
    return Outcome{worst < 1e-10, "max pointwise difference " + fmt(worst)};
  });
}

// ---------------------------------------------------------------- periods

void period_checks(Runner& run, std::uint64_t seed) {
  using namespace periods;
  const PolyQuadDiff q({-1.0, 0.0, 1.0});  // z^2 - 1
  auto circle = [](cplx c, double r) {
    PathSpec p;
    p.segments = {Segment::circle(c, r)};
    return p;
  };

  run.add("periods", "reversal negates", [&] {
    PathSpec open;
    open.segments = {Segment::arc(0.0, 2.0, 0.3, 2.5), Segment::line(2.0 * std::polar(1.0, 2.5), cplx(-0.4, -1.5))};
    const cplx fwd = sqrtq_integrate(q, open);
    // The reversed path must start on the branch the forward path ends on.
    const auto end = tracked_integrate(q, q.zeros(), open, 1, [](cplx, cplx w, cplx* out) { out[0] = w; });
    PathSpec back = open.reversed();
    const cplx principal = std::sqrt(q(back.segments.front().start()));
    back.initial_sign = std::real(end.end_branch / principal) > 0.0 ? 1 : -1;
    const cplx bwd = sqrtq_integrate(q, back);
    const double err = std::abs(fwd + bwd);
    return Outcome{err < 1e-10, "|I + I_rev| " + fmt(err)};
  });
  run.add("periods", "concatenation is additive", [&] {
    PathSpec first, second, whole;
    first.segments = {Segment::arc(0.0, 2.0, 0.0, 2.0)};
    second.segments = {Segment::arc(0.0, 2.0, 2.0, 5.0)};
    whole.segments = {first.segments[0], second.segments[0]};
    auto g = [](cplx, cplx w, cplx* out) { out[0] = w; };
    const auto a = tracked_integrate(q, q.zeros(), first, 1, g);
    const cplx principal = std::sqrt(q(second.segments.front().start()));
    second.initial_sign = std::real(a.end_branch / principal) > 0.0 ? 1 : -1;
    const auto b = tracked_integrate(q, q.zeros(), second, 1, g);
    const cplx w = sqrtq_integrate(q, whole);
    const double err = std::abs(a.values[0] + b.values[0] - w);
    return Outcome{err < 1e-10, "|I1 + I2 - I12| " + fmt(err)};
  });
  run.add("periods", "contractible loop integrates to 0", [&] {
    double worst = 0.0;
    for (auto [c, r] : std::vector<std::pair<cplx, double>>{{3.0, 0.5}, {cplx(0, 2), 1.0}, {cplx(-1.5, 0.7), 0.4}}) {
      worst = std::max(worst, std::abs(sqrtq_integrate(q, circle(c, r))));
    }
    return Outcome{worst < 1e-9, "max |I| " + fmt(worst)};
  });
  run.add("periods", "sk_energy rotation invariant", [] {
    const std::vector<cplx> qc = {cplx(0.0, 0.06), cplx(-0.3, 0.2), 1.0};  // (z - 0.3)(z + 0.2i)
    const std::vector<cplx> dc = {1.0, 1.0};
    const Disk disk{cplx(0.2, 0.1), 0.9};
    const double base = sk_energy(PolyQuadDiff(qc), PolyQuadDiff(dc), disk);
    double worst = 0.0;
    for (double theta : {0.7, 2.1, 4.0}) {
      auto rotate = [theta](std::vector<cplx> c) {
        for (std::size_t j = 0; j < c.size(); ++j) c[j] *= std::polar(1.0, -theta * static_cast<double>(j));
        return c;
      };
      const Disk rd{disk.center * std::polar(1.0, theta), disk.radius};
      worst = std::max(worst, std::abs(sk_energy(PolyQuadDiff(rotate(qc)), PolyQuadDiff(rotate(dc)), rd) - base) / base);
    }
    return Outcome{worst < 1e-8, "max relative change " + fmt(worst)};
  });
  run.add("periods", "sk_energy scales as |lambda|^2 / |mu|", [] {
    const std::vector<cplx> qc = {cplx(0.0, 0.06), cplx(-0.3, 0.2), 1.0};
    const std::vector<cplx> dc = {1.0, 1.0};
    const Disk disk{cplx(0.2, 0.1), 0.9};
    const double base = sk_energy(PolyQuadDiff(qc), PolyQuadDiff(dc), disk);
    const cplx lambda(1.5, -0.5), mu(-0.3, 2.0);
    auto scale = [](std::vector<cplx> c, cplx s) {
      for (auto& x : c) x *= s;
      return c;
    };
    const double scaled = sk_energy(PolyQuadDiff(scale(qc, mu)), PolyQuadDiff(scale(dc, lambda)), disk);
    const double expect = base * std::norm(lambda) / std::abs(mu);
    const double err = std::abs(scaled - expect) / expect;
    return Outcome{err < 1e-10, "relative error " + fmt(err)};
  });
  run.add("periods", "sk quadrature refinement < 1e-5", [] {
    double worst = 0.0;
    const std::vector<std::pair<std::vector<cplx>, std::vector<cplx>>> cases = {
        {{0.0, 1.0}, {1.0}}, {{1.0}, {1.0}}, {{0.0, 0.0, 1.0}, {0.0, 1.0}}, {{cplx(0.0, 0.06), cplx(-0.3, 0.2), 1.0}, {1.0, 1.0}}};
    for (const auto& [qc, dc] : cases) {
      worst = std::max(worst, sk_energy_report(PolyQuadDiff(qc), PolyQuadDiff(dc), Disk{}).refinement_change);
    }
    return Outcome{worst < 1e-5, "max relative change " + fmt(worst)};
  });

  struct Curve {
    std::string name;
    std::vector<cplx> poly;
    std::vector<PathSpec> cycles;
  };
  auto curves = [] {
    return std::vector<Curve>{
        {"x^3-x", {0.0, -1.0, 0.0, 1.0}, standard_cycles({0.0, -1.0, 0.0, 1.0}, {-1.0, 0.0, 1.0})},
        {"x^3-1", {-1.0, 0.0, 0.0, 1.0}, cubic_unity_cycles()},
        {"x^5-5x^3+4x", {0.0, 4.0, 0.0, -5.0, 0.0, 1.0},
         standard_cycles({0.0, 4.0, 0.0, -5.0, 0.0, 1.0}, {-2.0, -1.0, 0.0, 1.0, 2.0})},
    };
  };
  run.add("periods", "Riemann relations", [&] {
    std::string detail;
    for (const auto& c : curves()) {
      const auto pm = period_matrix(c.poly, c.cycles, 1e-8);
      if (!(pm.symmetry_defect < 1e-8 && pm.min_imag_eigenvalue > 0.0)) return Outcome{false, c.name};
      detail += c.name + " " + fmt(pm.symmetry_defect) + "; ";
    }
    return Outcome{true, "symmetry defects " + detail};
  });
  run.add("periods", "vertical(F(c)) = horizontal(c)", [&, seed] {
    std::mt19937_64 rng(seed + 5);
    double worst = 0.0;
    for (const auto& c : curves()) {
      const auto pm = period_matrix(c.poly, c.cycles, 1e-8);
      for (int k = 0; k < 100; ++k) {
        Eigen::VectorXcd v(pm.genus);
        for (int j = 0; j < pm.genus; ++j) v(j) = random_complex(rng, 2.0);
        for (double kappa : {1.0, 0.37}) worst = std::max(worst, hodge_duality_check(v, pm, kappa));
      }
    }
    return Outcome{worst < 1e-8, "100 inputs per curve, max relative gap " + fmt(worst)};
  });
}

}  // namespace

std::vector<CheckResult> run_check_suite(const SuiteOptions& opts) {
  Runner run;
  strata_checks(run);
  hecke_checks(run, opts.seed);
  painleve_checks(run, opts.rhs_scale);
  model_checks(run, opts.threads);
  glue_checks(run, opts.threads);
  period_checks(run, opts.seed);
  return run.results;
}

bool print_report(std::ostream& os, const std::vector<CheckResult>& results) {
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.module.size() + r.name.size() + 2);
  bool all = true;
  double total = 0.0;
  for (const auto& r : results) {
    all = all && r.passed;
    total += r.seconds;
    os << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width))
       << (r.module + ": " + r.name) << std::right << std::fixed << std::setprecision(3) << std::setw(9) << r.seconds
       << " s  " << r.detail << '\n';
    os.unsetf(std::ios::fixed);
  }
  const auto failed = std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return !r.passed; });
  os << results.size() << " checks, " << failed << " failed, " << std::fixed << std::setprecision(2) << total
     << " s total\n";
  os.unsetf(std::ios::fixed);
  return all;
}

}  // namespace hitchin::checks
