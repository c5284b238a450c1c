#pragma once

// Rotationally symmetric model pairs in the unitary gauge on a disk around a
// zero of order m with Higgs-divisor value d:
//
//   A_t   = a(r) diag(1, -1) (dz/z - dzbar/zbar),  a(r) = (m - 2d)/8 + r v_t'(r)/4
//   phi_t = [[0, e_+(r) z^d], [e_-(r) z^{m-d}, 0]] dz,
//   e_+ = r^{m/2-d} e^{v_t},  e_- = r^{-(m/2-d)} e^{-v_t},
//
// their t = infinity limit (v = 0), and the convergence rate of the former to the latter.

#include <limits>
#include <vector>

#include "hitchin/painleve.hpp"

namespace hitchin::model {

struct AnnulusSpec {
  double r_min = 0.5;
  double r_max = 1.0;
  int radial_samples = 201;
  int angular_samples = 8;  // radial data; kept for the 2-D sampling convention

  painleve::RadialGrid radial_grid() const;
};

struct UnitaryPair {
  int m = 1;
  int d = 0;
  double t = std::numeric_limits<double>::infinity();
  painleve::RadialGrid grid;
  std::vector<double> v;   // log factor: e_+ = r^{m/2-d} e^{v}, e_- = r^{-(m/2-d)} e^{-v}
  std::vector<double> dv;  // v'(r)
  std::vector<double> a;
  std::vector<double> e_plus;
  std::vector<double> e_minus;

  /// Twice the radial exponent of e_+; e_- carries its negative.
  int twice_power() const noexcept { return m - 2 * d; }
};

UnitaryPair model_pair(double t, int m, int d, const painleve::RadialGrid& grid,
                       const painleve::VProfileOptions& opts = {});
UnitaryPair limiting_pair(int m, int d, const painleve::RadialGrid& grid);

/// Exponent of z in det(phi) = -e_+ e_- z^m dz^2, tracked symbolically: the radial powers
/// (m/2 - d) and -(m/2 - d) and the log factors v and -v cancel by construction, leaving z^m.
int determinant_exponent(const UnitaryPair& p);

/// sup over grid nodes inside K of |a1 - a2| (2/r) + |e+1 - e+2| r^d + |e-1 - e-2| r^{m-d}.
/// Differences are formed from v and v' directly (expm1), so tiny distances keep full
/// relative precision instead of cancelling against the limiting values.
double c0_distance(const UnitaryPair& p1, const UnitaryPair& p2, const AnnulusSpec& k);

/// f(r) = (v'' + v'/r)/4 - 2 t^2 r^m sinh(2v) for an arbitrary radial profile v.
painleve::Profile radial_residual(const painleve::Profile& v, double t, int m);

painleve::Profile hitchin_residual_radial(double t, int m, int d, const painleve::RadialGrid& grid,
                                          const painleve::VProfileOptions& opts = {});

struct ExponentialFit {
  double amplitude = 0.0;  // C in y ~ C e^{-c t}
  double rate = 0.0;       // c
  double rms_log_residual = 0.0;
};

/// Least-squares fit of log y against t. Requires y > 0.
ExponentialFit fit_exponential(const std::vector<double>& t, const std::vector<double>& y);

/// Throws ConfigError unless there are >= 5 points whose max/min ratio is >= 3.
void check_t_ladder(const std::vector<double>& t);

struct DecayFitOptions {
  bool allow_degenerate = false;  // return a flagged result instead of throwing when all distances vanish
  int threads = 0;                // 0 = hardware concurrency
  painleve::VProfileOptions profile;
};

struct DecayFit {
  std::vector<double> t;
  std::vector<double> distance;
  ExponentialFit fit;
  double predicted_rate = 0.0;
  double relative_gap = 0.0;  // |fit - predicted| / predicted
  bool degenerate = false;    // distances identically zero (m = 2d)
};

/// 4 r^{1+m/2} / (1 + m/2): the exponent of e^{-rho} at radius r, per unit t.
double predicted_rate(int m, double r);

DecayFit decay_fit(int m, int d, const AnnulusSpec& k, const std::vector<double>& t_list,
                   const DecayFitOptions& opts = {});

}  // namespace hitchin::model
