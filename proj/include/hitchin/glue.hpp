#pragma once

// Cutoff-glued approximate metric on the unit-disk chart,
//
//   H_t^app = diag(r^{(m-2d)/2} e^{chi v_t}, r^{-(m-2d)/2} e^{-chi v_t}),
//
// and its error density f_t = (1/4)(d_r^2 + d_r / r)(chi v_t) - t^2 r^m (e^{2 chi v_t} - e^{-2 chi v_t}).

#include <vector>

#include "hitchin/model_ray.hpp"
#include "hitchin/painleve.hpp"

namespace hitchin::glue {

/// Quintic smoothstep in s = 2(1 - r) clamped to [0, 1]: 1 on r <= 1/2, 0 on r >= 1.
double cutoff(double r);
double cutoff_d1(double r);
double cutoff_d2(double r);

/// Diagonal entries of H_t^app at r; the second is the reciprocal of the first.
double approx_metric_entry(double t, int m, int d, double r, const painleve::VProfileOptions& opts = {});

/// f_t on a radial grid. Nodes with r >= 1 are exactly zero without touching the profile.
painleve::Profile error_density_profile(double t, int m, int d, const painleve::RadialGrid& grid,
                                        const painleve::VProfileOptions& opts = {});

/// f_t at a single radius.
double error_density(double t, int m, int d, double r, const painleve::VProfileOptions& opts = {});

/// sup_{r in [1/2, 1]} |f_t| sampled on `samples` log-spaced nodes.
double sup_collar_error(double t, int m, int d, int samples = 401, const painleve::VProfileOptions& opts = {});

/// 4 (1/2)^{1+m/2} / (1 + m/2).
double collar_predicted_rate(int m);

struct ErrorDecayFit {
  std::vector<double> t;
  std::vector<double> sup_error;
  model::ExponentialFit fit;
  double predicted_rate = 0.0;
  double relative_gap = 0.0;
  double support_violation_max = 0.0;  // max |f_t| over r in [1.01, 2], all t
  bool degenerate = false;
};

struct ErrorDecayOptions {
  int collar_samples = 401;
  bool allow_degenerate = false;
  int threads = 0;
  painleve::VProfileOptions profile;
};

ErrorDecayFit error_decay_fit(int m, int d, const std::vector<double>& t_list, const ErrorDecayOptions& opts = {});

}  // namespace hitchin::glue
