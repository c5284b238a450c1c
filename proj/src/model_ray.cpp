#include "hitchin/model_ray.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hitchin/error.hpp"
#include "hitchin/parallel.hpp"

namespace hitchin::model {

using painleve::Profile;
using painleve::RadialGrid;

RadialGrid AnnulusSpec::radial_grid() const {
  if (!(r_min > 0.0)) throw Error(ErrorCode::GridTouchesOrigin, "annulus must avoid r = 0");
  if (!(r_max > r_min) || radial_samples < 2) throw Error(ErrorCode::ConfigError, "need r_min < r_max and >= 2 samples");
  return RadialGrid::log_spaced(r_min, r_max, radial_samples);
}

namespace {

UnitaryPair assemble(int m, int d, double t, const RadialGrid& grid, std::vector<double> v, const std::vector<double>& v1) {
  UnitaryPair p;
  p.m = m;
  p.d = d;
  p.t = t;
  p.grid = grid;
  p.v = std::move(v);
  p.dv = v1;
  const double k = 0.5 * (m - 2 * d);
  const auto n = static_cast<std::size_t>(grid.size());
  p.a.resize(n);
  p.e_plus.resize(n);
  p.e_minus.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid[static_cast<int>(i)];
    p.a[i] = (m - 2 * d) / 8.0 + 0.25 * r * v1[i];
    p.e_plus[i] = std::pow(r, k) * std::exp(p.v[i]);
    p.e_minus[i] = std::pow(r, -k) * std::exp(-p.v[i]);
  }
  return p;
}

}  // namespace

UnitaryPair model_pair(double t, int m, int d, const RadialGrid& grid, const painleve::VProfileOptions& opts) {
  const auto vp = painleve::v_profile(t, m, d, grid, opts);
  return assemble(m, d, t, grid, vp.v.values, vp.v.d1);
}

UnitaryPair limiting_pair(int m, int d, const RadialGrid& grid) {
  painleve::boundary_coefficient(m, d);  // validates (m, d)
  const std::vector<double> zero(static_cast<std::size_t>(grid.size()), 0.0);
  return assemble(m, d, std::numeric_limits<double>::infinity(), grid, zero, zero);
}

int determinant_exponent(const UnitaryPair& p) {
  // phases z^d and z^{m-d}; radial powers +-(m - 2d)/2 and log factors +-v cancel.
  const int radial = p.twice_power() + (-p.twice_power());
  if (radial != 0) throw Error(ErrorCode::ConstraintViolated, "radial exponents do not cancel");
  return p.d + (p.m - p.d);
}

double c0_distance(const UnitaryPair& p1, const UnitaryPair& p2, const AnnulusSpec& k) {
  if (p1.m != p2.m || p1.d != p2.d) throw Error(ErrorCode::StratumMismatch, "pairs live on different strata");
  if (p1.grid.nodes() != p2.grid.nodes()) throw Error(ErrorCode::ConfigError, "pairs sampled on different grids");
  double sup = 0.0;
  for (int i = 0; i < p1.grid.size(); ++i) {
    const double r = p1.grid[i];
    if (r < k.r_min * (1 - 1e-12) || r > k.r_max * (1 + 1e-12)) continue;
    const auto j = static_cast<std::size_t>(i);
    const double k = 0.5 * (p1.m - 2 * p1.d);
    const double dv = p1.v[j] - p2.v[j];
    const double da = std::abs(0.25 * r * (p1.dv[j] - p2.dv[j])) * 2.0 / r;
    const double dp = std::pow(r, k) * std::exp(p2.v[j]) * std::abs(std::expm1(dv)) * std::pow(r, p1.d);
    const double dm = std::pow(r, -k) * std::exp(-p2.v[j]) * std::abs(std::expm1(-dv)) * std::pow(r, p1.m - p1.d);
    sup = std::max(sup, da + dp + dm);
  }
  return sup;
}

Profile radial_residual(const Profile& v, double t, int m) {
  Profile f;
  f.grid = v.grid;
  f.a = v.a;
  const auto n = static_cast<std::size_t>(v.grid.size());
  f.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = v.grid[static_cast<int>(i)];
    f.values[i] = 0.25 * (v.d2[i] + v.d1[i] / r) - 2.0 * t * t * std::pow(r, m) * std::sinh(2.0 * v.values[i]);
  }
  // Nodal derivatives by central differences in log r (one-sided at the ends).
  f.d1.assign(n, 0.0);
  f.d2.assign(n, 0.0);
  if (n >= 3) {
    const double h = v.grid.log_step();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = std::clamp<std::size_t>(i, 1, n - 2);
      const double r = v.grid[static_cast<int>(i)];
      const double ft = (f.values[c + 1] - f.values[c - 1]) / (2 * h);
      const double ftt = (f.values[c + 1] - 2 * f.values[c] + f.values[c - 1]) / (h * h);
      f.d1[i] = ft / r;
      f.d2[i] = (ftt - ft) / (r * r);
    }
  }
  return f;
}

Profile hitchin_residual_radial(double t, int m, int d, const RadialGrid& grid, const painleve::VProfileOptions& opts) {
  return radial_residual(painleve::v_profile(t, m, d, grid, opts).v, t, m);
}

ExponentialFit fit_exponential(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size() || t.size() < 2) throw Error(ErrorCode::ConfigError, "fit needs >= 2 matched points");
  const double n = static_cast<double>(t.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(y[i] > 0.0)) throw Error(ErrorCode::NonPositiveRate, "non-positive sample in exponential fit");
    const double ly = std::log(y[i]);
    st += t[i];
    sy += ly;
    stt += t[i] * t[i];
    sty += t[i] * ly;
  }
  const double slope = (n * sty - st * sy) / (n * stt - st * st);
  const double icpt = (sy - slope * st) / n;
  ExponentialFit fit{std::exp(icpt), -slope, 0.0};
  double ss = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double e = std::log(y[i]) - (icpt + slope * t[i]);
    ss += e * e;
  }
  fit.rms_log_residual = std::sqrt(ss / n);
  return fit;
}

void check_t_ladder(const std::vector<double>& t) {
  if (t.size() < 5) throw Error(ErrorCode::ConfigError, "t ladder needs at least 5 points");
  const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
  if (!(*lo > 0.0) || *hi < 3.0 * *lo) throw Error(ErrorCode::ConfigError, "t ladder must be positive and span a factor >= 3");
}

double predicted_rate(int m, double r) {
  const double c = 1.0 + 0.5 * m;
  return 4.0 * std::pow(r, c) / c;
}

DecayFit decay_fit(int m, int d, const AnnulusSpec& k, const std::vector<double>& t_list, const DecayFitOptions& opts) {
  check_t_ladder(t_list);
  const RadialGrid grid = k.radial_grid();
  const UnitaryPair limit = limiting_pair(m, d, grid);
  DecayFit out;
  out.t = t_list;
  out.distance.assign(t_list.size(), 0.0);
  out.predicted_rate = predicted_rate(m, k.r_min);
  parallel_for(static_cast<int>(t_list.size()), opts.threads, [&](int i) {
    const auto j = static_cast<std::size_t>(i);
    out.distance[j] = c0_distance(model_pair(t_list[j], m, d, grid, opts.profile), limit, k);
  });
  if (std::all_of(out.distance.begin(), out.distance.end(), [](double x) { return x == 0.0; })) {
    if (!opts.allow_degenerate) {
      throw Error(ErrorCode::NonPositiveRate, "all distances vanish (m = 2d): no decay to fit");
    }
    out.degenerate = true;
    out.fit.rate = std::numeric_limits<double>::quiet_NaN();
    out.fit.amplitude = 0.0;
    out.relative_gap = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.fit = fit_exponential(out.t, out.distance);
  if (!(out.fit.rate > 0.0)) {
    std::ostringstream os;
    os << "fitted rate " << out.fit.rate << " is not positive";
    throw Error(ErrorCode::NonPositiveRate, os.str());
  }
  out.relative_gap = std::abs(out.fit.rate - out.predicted_rate) / out.predicted_rate;
  return out;
}

}  // namespace hitchin::model
