#pragma once

// The radial Painleve-III-type boundary value problem
//
//   psi'' + psi'/rho = sinh(2 psi) / 2,   rho psi'(rho_min) = -a,   psi(rho_max) = 0,
//
// solved by second-order finite differences on a log-uniform grid, plus the
// substitution rho = 4 t r^{1+m/2} / (1 + m/2) producing the model profiles v_t(r).

#include <optional>
#include <string>
#include <vector>

namespace hitchin::painleve {

/// Macdonald function K_0(x), x > 0.
double k0(double x);

/// Log-uniform grid x_i = first * exp(i * log_step), i = 0..count-1.
class RadialGrid {
 public:
  RadialGrid() = default;
  RadialGrid(double first, double log_step, int count);

  static RadialGrid log_spaced(double lo, double hi, int count);

  double front() const noexcept { return nodes_.front(); }
  double back() const noexcept { return nodes_.back(); }
  double log_step() const noexcept { return log_step_; }
  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  double operator[](int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }

  /// Index of the node equal to x (relative tolerance 1e-12), or nullopt.
  std::optional<int> node_index(double x) const;

 private:
  double log_step_ = 0.0;
  std::vector<double> nodes_;
};

/// Sampled function with first and second derivatives (w.r.t. x) at grid nodes.
struct Profile {
  RadialGrid grid;
  std::vector<double> values;
  std::vector<double> d1;
  std::vector<double> d2;
  double a = 0.0;  // boundary log-slope coefficient

  /// Cubic Hermite interpolation in log x.
  double value_at(double x) const;
  double derivative_at(double x) const;
  /// Linear interpolation of nodal second derivatives.
  double second_derivative_at(double x) const;
};

struct PsiOptions {
  int nodes = 2000;
  int max_iterations = 200;
  /// Multiplies the sinh right-hand side; 1 except for fault injection.
  double rhs_scale = 1.0;
  bool check_monotone = true;
};

struct NewtonStep {
  int iteration;
  double residual;
  double damping;
};

struct PsiSolution {
  Profile psi;  // psi(rho) on the rho grid
  std::vector<double> psi_s;   // d psi / d log rho at nodes
  std::vector<double> psi_ss;  // d^2 psi / d (log rho)^2 at nodes
  int iterations = 0;
  double residual = 0.0;  // max_i |psi_ss - rho^2 sinh(2 psi)/2| of the scheme
  std::vector<NewtonStep> trace;
};

double rho_of(double t, double r, int m);

/// Boundary coefficient a = (m - 2d)/(m + 2) for the zero data (m, d).
double boundary_coefficient(int m, int d);

PsiSolution solve_psi(double a, double rho_min, double rho_max, double tol, const PsiOptions& opts = {});

/// Solves on a prescribed log-uniform rho grid (the BC nodes are its ends).
PsiSolution solve_psi_on_grid(double a, const RadialGrid& rho_grid, double tol, const PsiOptions& opts = {});

/// max_i |rho^2 (psi'' + psi'/rho - sinh(2 psi)/2)| over interior and left nodes, using the
/// profile's own derivative data and the unperturbed right-hand side.
double ode_residual(const Profile& psi);

struct VProfileOptions {
  double rho_min = 1e-4;
  double rho_max = 20.0;
  /// Hard cap on rho_max; the solve fails if rho_of(t, r_max) exceeds it.
  std::optional<double> rho_max_limit;
  /// Target log-step of the psi grid; the r grid is refined by an integer factor to reach it.
  double target_log_step = 0.004;
  double tol = 1e-8;
  double rhs_scale = 1.0;
};

struct VProfile {
  Profile v;        // v_t(r) on the caller's r grid
  PsiSolution psi;  // the underlying rho solve
  int refine = 1;   // psi nodes per r-grid interval
  int offset = 0;   // psi index of r-grid node 0
};

VProfile v_profile(double t, int m, int d, const RadialGrid& r_grid, const VProfileOptions& opts = {});

struct UProfiles {
  Profile u_t;
  Profile u_inf;
};

UProfiles u_profiles(double t, int m, int d, const RadialGrid& r_grid, const VProfileOptions& opts = {});

/// Estimates A in psi ~ A K_0(rho) by the median of psi/K_0 over [lo, hi].
double tail_amplitude(const Profile& psi, double lo, double hi);

}  // namespace hitchin::painleve
