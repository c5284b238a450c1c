#include "hitchin/glue.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hitchin/error.hpp"
#include "hitchin/parallel.hpp"

namespace hitchin::glue {

using painleve::Profile;
using painleve::RadialGrid;

namespace {

double collar_coordinate(double r) { return std::clamp(2.0 * (1.0 - r), 0.0, 1.0); }
bool in_collar(double r) { return r > 0.5 && r < 1.0; }

}  // namespace

double cutoff(double r) {
  const double s = collar_coordinate(r);
  return s * s * s * (s * (6.0 * s - 15.0) + 10.0);
}

double cutoff_d1(double r) {
  if (!in_collar(r)) return 0.0;
  const double s = collar_coordinate(r);
  return -2.0 * 30.0 * s * s * (s - 1.0) * (s - 1.0);
}

double cutoff_d2(double r) {
  if (!in_collar(r)) return 0.0;
  const double s = collar_coordinate(r);
  return 4.0 * 60.0 * s * (s - 1.0) * (2.0 * s - 1.0);
}

double approx_metric_entry(double t, int m, int d, double r, const painleve::VProfileOptions& opts) {
  if (!(r > 0.0)) throw Error(ErrorCode::OriginEvaluation, "metric entry needs r > 0");
  const double base = std::pow(r, 0.5 * (m - 2 * d));
  if (r >= 1.0) {
    painleve::boundary_coefficient(m, d);
    return base;
  }
  const auto vp = painleve::v_profile(t, m, d, RadialGrid(r, 0.0, 1), opts);
  return base * std::exp(cutoff(r) * vp.v.values[0]);
}

Profile error_density_profile(double t, int m, int d, const RadialGrid& grid, const painleve::VProfileOptions& opts) {
  painleve::boundary_coefficient(m, d);
  Profile f;
  f.grid = grid;
  f.a = painleve::boundary_coefficient(m, d);
  const auto n = static_cast<std::size_t>(grid.size());
  f.values.assign(n, 0.0);
  f.d1.assign(n, 0.0);
  f.d2.assign(n, 0.0);

  int inner = 0;
  while (inner < grid.size() && grid[inner] < 1.0) ++inner;
  if (inner == 0) return f;

  const RadialGrid sub(grid.front(), grid.log_step(), inner);
  const auto vp = painleve::v_profile(t, m, d, sub, opts);
  const double c = 1.0 + 0.5 * m;
  for (int j = 0; j < inner; ++j) {
    const auto k = static_cast<std::size_t>(vp.offset + j * vp.refine);
    const double r = grid[j];
    const double v = vp.psi.psi.values[k];
    const double v_tau = c * vp.psi.psi_s[k];
    const double v_tautau = c * c * vp.psi.psi_ss[k];
    const double chi = cutoff(r);
    const double chi_tau = r * cutoff_d1(r);
    const double chi_tautau = r * r * cutoff_d2(r) + chi_tau;
    const double w_tautau = chi_tautau * v + 2.0 * chi_tau * v_tau + chi * v_tautau;
    f.values[static_cast<std::size_t>(j)] =
        0.25 * w_tautau / (r * r) - 2.0 * t * t * std::pow(r, m) * std::sinh(2.0 * chi * v);
  }
  return f;
}

double error_density(double t, int m, int d, double r, const painleve::VProfileOptions& opts) {
  if (!(r > 0.0)) throw Error(ErrorCode::OriginEvaluation, "error density needs r > 0");
  return error_density_profile(t, m, d, RadialGrid(r, 0.0, 1), opts).values[0];
}

double sup_collar_error(double t, int m, int d, int samples, const painleve::VProfileOptions& opts) {
  const Profile f = error_density_profile(t, m, d, RadialGrid::log_spaced(0.5, 1.0, samples), opts);
  double sup = 0.0;
  for (double x : f.values) sup = std::max(sup, std::abs(x));
  return sup;
}

double collar_predicted_rate(int m) { return model::predicted_rate(m, 0.5); }

ErrorDecayFit error_decay_fit(int m, int d, const std::vector<double>& t_list, const ErrorDecayOptions& opts) {
  model::check_t_ladder(t_list);
  ErrorDecayFit out;
  out.t = t_list;
  out.sup_error.assign(t_list.size(), 0.0);
  out.predicted_rate = collar_predicted_rate(m);
  std::vector<double> outside(t_list.size(), 0.0);
  const RadialGrid far = RadialGrid::log_spaced(1.01, 2.0, 64);
  parallel_for(static_cast<int>(t_list.size()), opts.threads, [&](int i) {
    const auto j = static_cast<std::size_t>(i);
    out.sup_error[j] = sup_collar_error(t_list[j], m, d, opts.collar_samples, opts.profile);
    for (double x : error_density_profile(t_list[j], m, d, far, opts.profile).values) {
      outside[j] = std::max(outside[j], std::abs(x));
    }
  });
  out.support_violation_max = *std::max_element(outside.begin(), outside.end());
  if (std::all_of(out.sup_error.begin(), out.sup_error.end(), [](double x) { return x == 0.0; })) {
    if (!opts.allow_degenerate) throw Error(ErrorCode::NonPositiveRate, "error density vanishes identically (m = 2d)");
    out.degenerate = true;
    out.fit.rate = std::numeric_limits<double>::quiet_NaN();
    out.relative_gap = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.fit = model::fit_exponential(out.t, out.sup_error);
  if (!(out.fit.rate > 0.0)) {
    std::ostringstream os;
    os << "fitted collar rate " << out.fit.rate << " is not positive";
    throw Error(ErrorCode::NonPositiveRate, os.str());
  }
  out.relative_gap = std::abs(out.fit.rate - out.predicted_rate) / out.predicted_rate;
  return out;
}

}  // namespace hitchin::glue
