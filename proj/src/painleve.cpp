#include "hitchin/painleve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hitchin/error.hpp"

namespace hitchin::painleve {

RadialGrid::RadialGrid(double first, double log_step, int count) : log_step_(log_step) {
  if (!(first > 0.0)) throw Error(ErrorCode::ConfigError, "radial grid must start at a positive value");
  if (count < 1 || (count > 1 && !(log_step > 0.0))) {
    throw Error(ErrorCode::ConfigError, "radial grid needs count >= 1 and a positive log step");
  }
  nodes_.reserve(static_cast<std::size_t>(count));
  const double l0 = std::log(first);
  nodes_.push_back(first);
  for (int i = 1; i < count; ++i) nodes_.push_back(std::exp(l0 + i * log_step));
}

RadialGrid RadialGrid::log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw Error(ErrorCode::ConfigError, "log_spaced needs 0 < lo < hi and count >= 2");
  }
  RadialGrid g(lo, std::log(hi / lo) / (count - 1), count);
  g.nodes_.back() = hi;
  return g;
}

std::optional<int> RadialGrid::node_index(double x) const {
  if (nodes_.empty() || !(x > 0.0)) return std::nullopt;
  const double pos = nodes_.size() == 1 ? 0.0 : std::log(x / nodes_.front()) / log_step_;
  const long i = std::lround(pos);
  if (i < 0 || i >= static_cast<long>(nodes_.size())) return std::nullopt;
  const double node = nodes_[static_cast<std::size_t>(i)];
  if (std::abs(node - x) > 1e-12 * std::abs(x)) return std::nullopt;
  return static_cast<int>(i);
}

namespace {

struct Bracket {
  int i;       // left node
  double th;   // position in [0, 1]
  double h;    // log step
};

Bracket locate(const Profile& p, double x) {
  const RadialGrid& g = p.grid;
  if (g.size() < 2 || x < g.front() * (1 - 1e-13) || x > g.back() * (1 + 1e-13)) {
    throw Error(ErrorCode::ConfigError, "evaluation point outside the profile grid");
  }
  const double h = g.log_step();
  const double pos = std::clamp(std::log(x / g.front()) / h, 0.0, static_cast<double>(g.size() - 1));
  const int i = std::min(static_cast<int>(pos), g.size() - 2);
  return {i, pos - i, h};
}

}  // namespace

double Profile::value_at(double x) const {
  if (auto i = grid.node_index(x)) return values[static_cast<std::size_t>(*i)];
  const auto [i, th, h] = locate(*this, x);
  const auto k = static_cast<std::size_t>(i);
  // Hermite basis in log x; slopes are x * d1.
  const double y0 = values[k], y1 = values[k + 1];
  const double m0 = grid[i] * d1[k] * h, m1 = grid[i + 1] * d1[k + 1] * h;
  const double t2 = th * th, t3 = t2 * th;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + th) * m0 + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1;
}

double Profile::derivative_at(double x) const {
  if (auto i = grid.node_index(x)) return d1[static_cast<std::size_t>(*i)];
  const auto [i, th, h] = locate(*this, x);
  const auto k = static_cast<std::size_t>(i);
  const double y0 = values[k], y1 = values[k + 1];
  const double m0 = grid[i] * d1[k] * h, m1 = grid[i + 1] * d1[k + 1] * h;
  const double t2 = th * th;
  const double dth = (6 * t2 - 6 * th) * y0 + (3 * t2 - 4 * th + 1) * m0 + (-6 * t2 + 6 * th) * y1 + (3 * t2 - 2 * th) * m1;
  return dth / (h * x);
}

double Profile::second_derivative_at(double x) const {
  if (auto i = grid.node_index(x)) return d2[static_cast<std::size_t>(*i)];
  const auto [i, th, h] = locate(*this, x);
  const auto k = static_cast<std::size_t>(i);
  return (1 - th) * d2[k] + th * d2[k + 1];
}

double rho_of(double t, double r, int m) {
  const double c = 1.0 + 0.5 * m;
  return 4.0 * t * std::pow(r, c) / c;
}

double boundary_coefficient(int m, int d) {
  if (m < 1 || d < 0 || 2 * d > m) {
    throw Error(ErrorCode::ConfigError, "need m >= 1 and 0 <= 2d <= m");
  }
  return static_cast<double>(m - 2 * d) / (m + 2);
}

namespace {

// Residual of the scheme in s = log rho: psi_ss - (scale/2) e^{2s} sinh(2 psi).
// Unknowns psi_0..psi_{N-2}; psi_{N-1} = 0. Node 0 uses the ghost value
// psi_{-1} = psi_1 + 2 h a from the central Robin condition.
void residual(const std::vector<double>& psi, const std::vector<double>& e2s, double a, double h, double scale,
              std::vector<double>& out) {
  const std::size_t n = psi.size();
  const double ih2 = 1.0 / (h * h);
  out.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double left = i == 0 ? psi[1] + 2.0 * h * a : psi[i - 1];
    out[i] = (psi[i + 1] - 2.0 * psi[i] + left) * ih2 - 0.5 * scale * e2s[i] * std::sinh(2.0 * psi[i]);
  }
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) return INFINITY;
    m = std::max(m, std::abs(x));
  }
  return m;
}

double l2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::isfinite(s) ? std::sqrt(s) : INFINITY;
}

}  // namespace

PsiSolution solve_psi_on_grid(double a, const RadialGrid& grid, double tol, const PsiOptions& opts) {
  if (!(a >= 0.0 && a < 1.0)) throw Error(ErrorCode::ConfigError, "boundary coefficient a must lie in [0, 1)");
  if (grid.size() < 5) throw Error(ErrorCode::ConfigError, "psi grid needs at least 5 nodes");
  if (!(tol > 0.0)) throw Error(ErrorCode::ConfigError, "tolerance must be positive");

  const int n = grid.size();
  const double h = grid.log_step();
  const double scale = opts.rhs_scale;
  std::vector<double> e2s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) e2s[static_cast<std::size_t>(i)] = grid[i] * grid[i];

  const double rho_max = grid.back();
  std::vector<double> psi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) psi[static_cast<std::size_t>(i)] = std::max(0.0, -a * std::log(grid[i] / rho_max));
  psi.back() = 0.0;

  PsiSolution sol;
  std::vector<double> res, trial, trial_res;
  residual(psi, e2s, a, h, scale, res);
  double res_max = max_abs(res);
  double merit = l2(res);

  std::vector<double> sub(static_cast<std::size_t>(n)), diag(static_cast<std::size_t>(n)),
      sup(static_cast<std::size_t>(n)), rhs(static_cast<std::size_t>(n));
  const double ih2 = 1.0 / (h * h);
  int it = 0;
  while (res_max >= tol) {
    if (++it > opts.max_iterations) break;
    const std::size_t m = static_cast<std::size_t>(n - 1);  // unknowns
    for (std::size_t i = 0; i < m; ++i) {
      sub[i] = i == 0 ? 0.0 : ih2;
      sup[i] = i == 0 ? 2.0 * ih2 : ih2;
      diag[i] = -2.0 * ih2 - scale * e2s[i] * std::cosh(2.0 * psi[i]);
      rhs[i] = -res[i];
    }
    // Thomas algorithm; the matrix is strictly diagonally dominant off row 0 and
    // negative definite after symmetrization, so no pivoting is needed.
    for (std::size_t i = 1; i < m; ++i) {
      const double w = sub[i] / diag[i - 1];
      diag[i] -= w * sup[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    std::vector<double> delta(m);
    delta[m - 1] = rhs[m - 1] / diag[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) delta[i] = (rhs[i] - sup[i] * delta[i + 1]) / diag[i];

    double lambda = 1.0;
    bool accepted = false;
    while (lambda >= 1e-8) {
      trial = psi;
      for (std::size_t i = 0; i < m; ++i) trial[i] += lambda * delta[i];
      residual(trial, e2s, a, h, scale, trial_res);
      const double trial_merit = l2(trial_res);
      if (trial_merit < (1.0 - 1e-4 * lambda) * merit) {
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      sol.trace.push_back({it, res_max, 0.0});
      break;
    }
    psi.swap(trial);
    res.swap(trial_res);
    merit = l2(res);
    res_max = max_abs(res);
    sol.trace.push_back({it, res_max, lambda});
  }
  if (!(res_max < tol)) {
    std::ostringstream os;
    os << "Newton did not reach tol " << tol << " (a = " << a << ", " << n << " nodes); trace:";
    for (const auto& s : sol.trace) os << " [" << s.iteration << ": " << s.residual << ", damping " << s.damping << "]";
    throw Error(ErrorCode::NewtonDivergence, os.str());
  }
  sol.iterations = it;
  sol.residual = res_max;

  // Nodal log-derivatives.
  const auto N = static_cast<std::size_t>(n);
  sol.psi_s.assign(N, 0.0);
  sol.psi_ss.assign(N, 0.0);
  sol.psi_s[0] = -a;
  sol.psi_ss[0] = (2.0 * psi[1] - 2.0 * psi[0] + 2.0 * h * a) * ih2;
  for (std::size_t i = 1; i + 1 < N; ++i) {
    sol.psi_s[i] = (psi[i + 1] - psi[i - 1]) / (2.0 * h);
    sol.psi_ss[i] = (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) * ih2;
  }
  sol.psi_s[N - 1] = (3.0 * psi[N - 1] - 4.0 * psi[N - 2] + psi[N - 3]) / (2.0 * h);
  sol.psi_ss[N - 1] = (2.0 * psi[N - 1] - 5.0 * psi[N - 2] + 4.0 * psi[N - 3] - psi[N - 4]) * ih2;

  Profile& p = sol.psi;
  p.grid = grid;
  p.a = a;
  p.values = psi;
  p.d1.resize(N);
  p.d2.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double rho = grid[static_cast<int>(i)];
    p.d1[i] = sol.psi_s[i] / rho;
    p.d2[i] = (sol.psi_ss[i] - sol.psi_s[i]) / (rho * rho);
  }

  if (opts.check_monotone && a > 0.0) {
    // Newton corrections cancel the O(1) initial guess, so nodal values carry an
    // absolute error ~ eps * max psi. Deep in the tail psi falls below that floor
    // and only weak monotonicity is meaningful there.
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, psi[0]);
    for (std::size_t i = 1; i + 1 < N; ++i) {
      const bool resolved = psi[i] > floor;
      const bool ok = resolved ? (psi[i] > 0.0 && sol.psi_s[i] < 0.0)
                               : (psi[i] > -floor && sol.psi_s[i] < floor / h);
      if (!ok) {
        std::ostringstream os;
        os << "psi not positive and decreasing at rho = " << grid[static_cast<int>(i)] << " (psi = " << psi[i]
           << ", rho psi' = " << sol.psi_s[i] << ")";
        throw Error(ErrorCode::NonMonotoneOutput, os.str());
      }
    }
  }
  return sol;
}

PsiSolution solve_psi(double a, double rho_min, double rho_max, double tol, const PsiOptions& opts) {
  if (!(rho_min > 0.0) || rho_min > 1e-3) throw Error(ErrorCode::ConfigError, "rho_min must lie in (0, 1e-3]");
  if (!(rho_max >= 15.0)) throw Error(ErrorCode::ConfigError, "rho_max must be at least 15");
  return solve_psi_on_grid(a, RadialGrid::log_spaced(rho_min, rho_max, opts.nodes), tol, opts);
}

double ode_residual(const Profile& psi) {
  double worst = 0.0;
  const int n = psi.grid.size();
  for (int i = 0; i + 1 < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double rho = psi.grid[i];
    const double r = rho * rho * psi.d2[k] + rho * psi.d1[k] - 0.5 * rho * rho * std::sinh(2.0 * psi.values[k]);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

VProfile v_profile(double t, int m, int d, const RadialGrid& r_grid, const VProfileOptions& opts) {
  if (!(t > 0.0)) throw Error(ErrorCode::ConfigError, "t must be positive");
  const double a = boundary_coefficient(m, d);
  if (r_grid.size() < 1) throw Error(ErrorCode::ConfigError, "empty r grid");
  const double c = 1.0 + 0.5 * m;
  const double rho_far = rho_of(t, r_grid.back(), m);
  if (opts.rho_max_limit && rho_far >= *opts.rho_max_limit) {
    std::ostringstream os;
    os << "rho_of(t = " << t << ", r = " << r_grid.back() << ") = " << rho_far << " exceeds rho_max limit "
       << *opts.rho_max_limit;
    throw Error(ErrorCode::NumericalFailure, os.str());
  }
  // Truncating psi to 0 at rho_max perturbs psi(rho) by ~ e^{-2 (rho_max - rho)}.
  double rho_max = std::max(opts.rho_max, rho_far + 12.0);
  if (opts.rho_max_limit) rho_max = std::min(rho_max, *opts.rho_max_limit);

  const double h_r = r_grid.size() > 1 ? r_grid.log_step() : opts.target_log_step / c;
  const double h_s = c * h_r;
  const int refine = std::max(1, static_cast<int>(std::ceil(h_s / opts.target_log_step - 1e-9)));
  const double h = h_s / refine;

  const double s_first = std::log(rho_of(t, r_grid.front(), m));
  const double s_last = s_first + (r_grid.size() - 1) * h_s;
  const int left = std::max(1, static_cast<int>(std::ceil((s_first - std::log(opts.rho_min)) / h)));
  const int right = std::max(2, static_cast<int>(std::ceil((std::log(rho_max) - s_last) / h)));
  const int count = left + (r_grid.size() - 1) * refine + 1 + right;

  VProfile out;
  out.refine = refine;
  out.offset = left;
  PsiOptions po;
  po.rhs_scale = opts.rhs_scale;
  po.check_monotone = opts.rhs_scale == 1.0;
  out.psi = solve_psi_on_grid(a, RadialGrid(std::exp(s_first - left * h), h, count), opts.tol, po);

  Profile& v = out.v;
  v.grid = r_grid;
  v.a = a;
  const auto n = static_cast<std::size_t>(r_grid.size());
  v.values.resize(n);
  v.d1.resize(n);
  v.d2.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto k = static_cast<std::size_t>(left) + j * static_cast<std::size_t>(refine);
    const double r = r_grid[static_cast<int>(j)];
    const double v_tau = c * out.psi.psi_s[k];
    const double v_tautau = c * c * out.psi.psi_ss[k];
    v.values[j] = out.psi.psi.values[k];
    v.d1[j] = v_tau / r;
    v.d2[j] = (v_tautau - v_tau) / (r * r);
  }
  return out;
}

UProfiles u_profiles(double t, int m, int d, const RadialGrid& r_grid, const VProfileOptions& opts) {
  const VProfile vp = v_profile(t, m, d, r_grid, opts);
  const double k = 0.5 * (m - 2 * d);
  UProfiles u;
  u.u_inf.grid = r_grid;
  u.u_inf.a = vp.v.a;
  u.u_t = u.u_inf;
  for (int j = 0; j < r_grid.size(); ++j) {
    const double r = r_grid[j];
    const auto i = static_cast<std::size_t>(j);
    u.u_inf.values.push_back(k * std::log(r));
    u.u_inf.d1.push_back(k / r);
    u.u_inf.d2.push_back(-k / (r * r));
    u.u_t.values.push_back(u.u_inf.values[i] + vp.v.values[i]);
    u.u_t.d1.push_back(u.u_inf.d1[i] + vp.v.d1[i]);
    u.u_t.d2.push_back(u.u_inf.d2[i] + vp.v.d2[i]);
  }
  return u;
}

double tail_amplitude(const Profile& psi, double lo, double hi) {
  std::vector<double> ratios;
  for (int i = 0; i < psi.grid.size(); ++i) {
    const double rho = psi.grid[i];
    if (rho >= lo && rho <= hi) ratios.push_back(psi.values[static_cast<std::size_t>(i)] / k0(rho));
  }
  if (ratios.empty()) throw Error(ErrorCode::ConfigError, "no grid nodes in the amplitude window");
  std::nth_element(ratios.begin(), ratios.begin() + static_cast<long>(ratios.size() / 2), ratios.end());
  return ratios[ratios.size() / 2];
}

}  // namespace hitchin::painleve
