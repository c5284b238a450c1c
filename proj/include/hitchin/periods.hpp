#pragma once

// Period integrals of sqrt(q) with continuous branch tracking, the special
// Kahler energy (kappa/4) int |qdot|^2/|q| dA on a disk, its pullback to the
// spectral double cover, hyperelliptic period matrices, and the semi-flat
// horizontal/vertical norms.
//
// Star convention: *dz = -i dz, *dzbar = i dzbar; |alpha|^2 = int alpha ^ *conj(alpha).

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

namespace hitchin::periods {

using cplx = std::complex<double>;

struct Zero {
  cplx location;
  int order;
};

/// q(z) dz^2 on a plane chart: coeffs[j] multiplies z^j.
class PolyQuadDiff {
 public:
  PolyQuadDiff() = default;
  /// Zeros found from the companion matrix, with nearby roots merged into multiple zeros.
  explicit PolyQuadDiff(std::vector<cplx> coeffs);
  /// Trusts the stated zeros after checking them against the coefficients (1e-10 relative).
  PolyQuadDiff(std::vector<cplx> coeffs, std::vector<Zero> zeros);
  static PolyQuadDiff from_zeros(cplx leading, const std::vector<Zero>& zeros);

  cplx operator()(cplx z) const;
  const std::vector<cplx>& coeffs() const noexcept { return c_; }
  const std::vector<Zero>& zeros() const noexcept { return zeros_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  /// Vanishing order at p (0 when q(p) != 0), judged against the known zeros.
  int order_at(cplx p, double tol = 1e-8) const;

 private:
  std::vector<cplx> c_;
  std::vector<Zero> zeros_;
};

struct Segment {
  enum class Kind { Line, Arc } kind = Kind::Line;
  cplx from{}, to{};         // line endpoints
  cplx center{};             // arc center
  double radius = 0.0;       // arc radius
  double theta0 = 0.0;       // arc start angle
  double theta1 = 0.0;       // arc end angle; |theta1 - theta0| may exceed 2 pi
  int subdivisions = 4;      // initial panels

  static Segment line(cplx a, cplx b, int subdivisions = 4);
  static Segment arc(cplx center, double radius, double theta0, double theta1, int subdivisions = 8);
  static Segment circle(cplx center, double radius, int turns = 1, int subdivisions = 8);

  cplx point(double s) const;     // s in [0, 1]
  cplx tangent(double s) const;   // dz/ds
  cplx start() const { return point(0.0); }
  cplx end() const { return point(1.0); }
  double distance_to(cplx p) const;
  Segment reversed() const;
};

struct PathSpec {
  std::vector<Segment> segments;
  int initial_sign = 1;     // sqrt(q) at the start point is initial_sign * principal root
  double clearance = 1e-6;  // minimal distance to any zero

  PathSpec reversed() const;
  int winding_count() const;  // total arc angle in units of 2 pi, rounded
};

struct QuadratureOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_depth = 40;
};

struct TrackedIntegral {
  std::vector<cplx> values;  // one entry per integrand
  cplx start_branch;         // tracked root at the start point
  cplx end_branch;           // tracked root at the end point
  int panels = 0;
};

/// Integrates g(z, w) dz along the path, where w is the root of p(z) continued
/// from initial_sign * principal_sqrt(p(start)). Each panel carries an anchor root
/// and splits whenever arg(p(z)/p(anchor)) leaves (-pi/2, pi/2).
TrackedIntegral tracked_integrate(const std::function<cplx(cplx)>& p, const std::vector<Zero>& zeros,
                                  const PathSpec& path, int n_integrands,
                                  const std::function<void(cplx z, cplx w, cplx* out)>& g,
                                  const QuadratureOptions& opts = {});

cplx sqrtq_integrate(const PolyQuadDiff& q, const PathSpec& path, const QuadratureOptions& opts = {});

struct Disk {
  cplx center{};
  double radius = 1.0;
};

struct AreaQuadrature {
  int angular = 256;       // trapezoid nodes in angle
  int radial_panels = 12;  // Gauss-Legendre panels along each ray
  int partition_power = 4; // partition of unity weights ~ prod |z - p_j|^{2 * power}

  AreaQuadrature doubled() const { return {2 * angular, 2 * radial_panels, partition_power}; }
};

struct SkEnergy {
  double value = 0.0;
  double refined = 0.0;           // same integral with doubled angular and radial resolution
  double refinement_change = 0.0; // |refined - value| / |refined|
};

/// (kappa/4) int_disk |qdot|^2 / |q| dA.
double sk_energy(const PolyQuadDiff& q, const PolyQuadDiff& qdot, const Disk& disk, double kappa = 1.0,
                 const AreaQuadrature& quad = {});
SkEnergy sk_energy_report(const PolyQuadDiff& q, const PolyQuadDiff& qdot, const Disk& disk, double kappa = 1.0,
                          const AreaQuadrature& quad = {});

struct PullbackCheck {
  double sk_value = 0.0;
  double pullback_value = 0.0;  // (kappa/2) sum over sheets int |tau(qdot)|^2
  double discrepancy = 0.0;
  bool ramified = false;   // true on the w^2 = z - p chart; false for the two-sheet picture
};

struct PullbackOptions {
  bool allow_two_sheets = true;  // an even zero falls back to two disjoint sheets instead of EvenZeroChart
  AreaQuadrature quad{};
};

PullbackCheck pullback_identity_check(const PolyQuadDiff& q, const PolyQuadDiff& qdot, const Disk& disk,
                                      double kappa = 1.0, const PullbackOptions& opts = {});

struct PeriodMatrix {
  int genus = 0;
  Eigen::MatrixXcd a_periods;  // A(j, l) = int_{a_l} x^j dx / y
  Eigen::MatrixXcd b_periods;
  Eigen::MatrixXcd tau;        // A^{-1} B
  double symmetry_defect = 0.0;
  double min_imag_eigenvalue = 0.0;
};

/// Period matrix of y^2 = P(x) on the basis x^j dx/y. cycles = (a_1..a_g, b_1..b_g).
PeriodMatrix period_matrix(const std::vector<cplx>& poly, const std::vector<PathSpec>& cycles,
                           double riemann_tol = 1e-6, const QuadratureOptions& opts = {});

/// Circles around {e_{2i-1}, e_{2i}} (a_i) and {e_{2i}, ..., e_{2g+1}} (b_i) for real, sorted
/// branch points; b-cycles are reversed if needed so that Im tau > 0.
std::vector<PathSpec> standard_cycles(const std::vector<cplx>& poly, const std::vector<double>& branch_points);

/// Circles around {1, omega} (a) and {omega, omega^2} (b) for y^2 = x^3 - 1.
std::vector<PathSpec> cubic_unity_cycles();

/// Moves tau (upper half plane) into |Re tau| <= 1/2, |tau| >= 1.
cplx reduce_to_fundamental_domain(cplx tau);

/// Flat torus C / (Z + tau Z) with basis dz.
PeriodMatrix flat_torus(cplx tau);

/// G(j, k) = i int omega_j ^ conj(omega_k) via the Riemann bilinear relations.
Eigen::MatrixXcd gram_form(const PeriodMatrix& pm);

double horizontal_norm(const Eigen::VectorXcd& coeffs, const PeriodMatrix& pm, double kappa = 1.0);
double vertical_norm(const Eigen::VectorXcd& conj_coeffs, const PeriodMatrix& pm, double kappa = 1.0);
/// F(tau_dot) = -(kappa/2) * (conj tau_dot): coefficients -(kappa/2) i conj(c) on the conj(omega) basis.
Eigen::VectorXcd duality_map(const Eigen::VectorXcd& coeffs, double kappa = 1.0);
double hodge_duality_check(const Eigen::VectorXcd& coeffs, const PeriodMatrix& pm, double kappa = 1.0);

}  // namespace hitchin::periods
