#include "hitchin/periods.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hitchin/error.hpp"
#include "hitchin/parallel.hpp"

namespace hitchin::periods {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

cplx horner(const std::vector<cplx>& c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<cplx> trimmed(std::vector<cplx> c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.empty()) throw Error(ErrorCode::ConfigError, "the zero polynomial is not a quadratic differential");
  return c;
}

std::vector<cplx> expand(cplx leading, const std::vector<Zero>& zeros) {
  std::vector<cplx> c{leading};
  for (const auto& z : zeros) {
    if (z.order < 1) throw Error(ErrorCode::ConfigError, "zero orders must be positive");
    for (int k = 0; k < z.order; ++k) {
      std::vector<cplx> next(c.size() + 1, 0.0);
      for (std::size_t j = 0; j < c.size(); ++j) {
        next[j + 1] += c[j];
        next[j] -= z.location * c[j];
      }
      c = std::move(next);
    }
  }
  return c;
}

std::vector<Zero> find_zeros(const std::vector<cplx>& c) {
  std::vector<Zero> zeros;
  std::size_t low = 0;
  while (low < c.size() && c[low] == 0.0) ++low;
  if (low > 0) zeros.push_back({0.0, static_cast<int>(low)});
  const int n = static_cast<int>(c.size() - low) - 1;
  if (n < 1) return zeros;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[low + static_cast<std::size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<cplx> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  double scale = 1.0;
  for (auto r : roots) scale = std::max(scale, std::abs(r));
  // Multiple roots split into clusters of radius ~ eps^{1/m}; their centroid is well conditioned.
  std::vector<std::vector<cplx>> clusters;
  for (auto r : roots) {
    bool placed = false;
    for (auto& cl : clusters) {
      cplx centroid = 0.0;
      for (auto x : cl) centroid += x;
      centroid /= static_cast<double>(cl.size());
      if (std::abs(centroid - r) < 1e-3 * scale) {
        cl.push_back(r);
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({r});
  }
  for (const auto& cl : clusters) {
    cplx centroid = 0.0;
    for (auto x : cl) centroid += x;
    zeros.push_back({centroid / static_cast<double>(cl.size()), static_cast<int>(cl.size())});
  }
  return zeros;
}

void verify_zeros(const std::vector<cplx>& c, const std::vector<Zero>& zeros) {
  int total = 0;
  double reach = 1.0;
  for (const auto& z : zeros) {
    total += z.order;
    reach = std::max(reach, std::abs(z.location));
  }
  if (total != static_cast<int>(c.size()) - 1) {
    throw Error(ErrorCode::ConfigError, "stated zero orders do not add up to the degree");
  }
  const auto rebuilt = expand(c.back(), zeros);
  for (int k = 0; k < 16; ++k) {
    const cplx z = std::polar(1.5 * reach, 2.0 * kPi * (k + 0.37) / 16.0);
    const cplx a = horner(c, z), b = horner(rebuilt, z);
    if (std::abs(a - b) > 1e-10 * std::max(std::abs(a), 1e-300)) {
      throw Error(ErrorCode::ConfigError, "stated zeros do not reproduce q");
    }
  }
}

double wrap_angle(double x) {
  x = std::fmod(x, 2.0 * kPi);
  return x < 0 ? x + 2.0 * kPi : x;
}

}  // namespace

PolyQuadDiff::PolyQuadDiff(std::vector<cplx> coeffs) : c_(trimmed(std::move(coeffs))), zeros_(find_zeros(c_)) {}

PolyQuadDiff::PolyQuadDiff(std::vector<cplx> coeffs, std::vector<Zero> zeros)
    : c_(trimmed(std::move(coeffs))), zeros_(std::move(zeros)) {
  verify_zeros(c_, zeros_);
}

PolyQuadDiff PolyQuadDiff::from_zeros(cplx leading, const std::vector<Zero>& zeros) {
  if (leading == 0.0) throw Error(ErrorCode::ConfigError, "leading coefficient must be nonzero");
  return PolyQuadDiff(expand(leading, zeros), zeros);
}

cplx PolyQuadDiff::operator()(cplx z) const { return horner(c_, z); }

int PolyQuadDiff::order_at(cplx p, double tol) const {
  int order = 0;
  for (const auto& z : zeros_) {
    if (std::abs(z.location - p) <= tol * std::max(1.0, std::abs(p))) order += z.order;
  }
  return order;
}

Segment Segment::line(cplx a, cplx b, int subdivisions) {
  Segment s;
  s.kind = Kind::Line;
  s.from = a;
  s.to = b;
  s.subdivisions = subdivisions;
  return s;
}

Segment Segment::arc(cplx center, double radius, double theta0, double theta1, int subdivisions) {
  if (!(radius > 0.0)) throw Error(ErrorCode::ConfigError, "arc radius must be positive");
  Segment s;
  s.kind = Kind::Arc;
  s.center = center;
  s.radius = radius;
  s.theta0 = theta0;
  s.theta1 = theta1;
  s.subdivisions = subdivisions;
  return s;
}

Segment Segment::circle(cplx center, double radius, int turns, int subdivisions) {
  return arc(center, radius, 0.0, 2.0 * kPi * turns, subdivisions * std::max(1, std::abs(turns)));
}

cplx Segment::point(double s) const {
  if (kind == Kind::Line) return from + s * (to - from);
  return center + std::polar(radius, theta0 + s * (theta1 - theta0));
}

cplx Segment::tangent(double s) const {
  if (kind == Kind::Line) return to - from;
  return kI * (theta1 - theta0) * std::polar(radius, theta0 + s * (theta1 - theta0));
}

double Segment::distance_to(cplx p) const {
  if (kind == Kind::Line) {
    const cplx d = to - from;
    const double len2 = std::norm(d);
    const double s = len2 == 0.0 ? 0.0 : std::clamp(std::real((p - from) * std::conj(d)) / len2, 0.0, 1.0);
    return std::abs(p - point(s));
  }
  const double span = std::abs(theta1 - theta0);
  const double to_circle = std::abs(std::abs(p - center) - radius);
  if (span >= 2.0 * kPi || p == center) return p == center ? radius : to_circle;
  const double lo = std::min(theta0, theta1);
  const double phi = wrap_angle(std::arg(p - center) - lo);
  if (phi <= span) return to_circle;
  return std::min(std::abs(p - start()), std::abs(p - end()));
}

Segment Segment::reversed() const {
  Segment s = *this;
  if (kind == Kind::Line) {
    std::swap(s.from, s.to);
  } else {
    std::swap(s.theta0, s.theta1);
  }
  return s;
}

PathSpec PathSpec::reversed() const {
  PathSpec p = *this;
  p.segments.clear();
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) p.segments.push_back(it->reversed());
  return p;
}

int PathSpec::winding_count() const {
  double total = 0.0;
  for (const auto& s : segments) {
    if (s.kind == Segment::Kind::Arc) total += s.theta1 - s.theta0;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

namespace {

struct Tracker {
  const std::function<cplx(cplx)>& p;
  const std::function<void(cplx, cplx, cplx*)>& g;
  int k;  // integrand count
  const QuadratureOptions& opts;
  int panels = 0;

  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  using G7 = boost::math::quadrature::gauss<double, 7>;

  // Integrates over [sa, sb] of one segment given the tracked root wa at sa; returns the root at sb.
  cplx run(const Segment& seg, double sa, double sb, cplx wa, std::vector<cplx>& acc, int depth) {
    const auto& x = GK::abscissa();
    const auto& wk = GK::weights();
    const auto& wg = G7::weights();
    const double half = 0.5 * (sb - sa), mid = 0.5 * (sa + sb);
    const cplx pa = p(seg.point(sa));
    const cplx pb = p(seg.point(sb));

    auto root_at = [&](cplx pz, bool& ok) {
      const cplx ratio = pz / pa;
      if (std::abs(std::arg(ratio)) > 0.5 * kPi) ok = false;
      return wa * std::sqrt(ratio);
    };
    bool ok = true;
    const cplx wb = root_at(pb, ok);

    std::vector<cplx> kron(static_cast<std::size_t>(k), 0.0), gauss(static_cast<std::size_t>(k), 0.0);
    std::vector<cplx> vals(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < x.size() && ok; ++i) {
      for (int sign : {1, -1}) {
        if (i == 0 && sign == -1) continue;
        const double s = mid + sign * half * x[i];
        const cplx z = seg.point(s);
        const cplx w = root_at(p(z), ok);
        g(z, w, vals.data());
        const cplx dz = seg.tangent(s);
        for (int j = 0; j < k; ++j) {
          const cplx f = vals[static_cast<std::size_t>(j)] * dz;
          kron[static_cast<std::size_t>(j)] += wk[i] * f;
          if (i % 2 == 0) gauss[static_cast<std::size_t>(j)] += wg[i / 2] * f;
        }
      }
    }
    double err = 0.0, mag = 0.0;
    if (ok) {
      for (int j = 0; j < k; ++j) {
        err = std::max(err, std::abs(half * (kron[static_cast<std::size_t>(j)] - gauss[static_cast<std::size_t>(j)])));
        mag = std::max(mag, std::abs(half * kron[static_cast<std::size_t>(j)]));
      }
    }
    if (ok && err <= std::max(opts.abs_tol, opts.rel_tol * mag)) {
      for (int j = 0; j < k; ++j) acc[static_cast<std::size_t>(j)] += half * kron[static_cast<std::size_t>(j)];
      ++panels;
      return wb;
    }
    if (depth >= opts.max_depth) {
      if (!ok) throw Error(ErrorCode::BranchAmbiguity, "argument of q varies by more than pi/2 on an unsplittable panel");
      std::ostringstream os;
      os << "quadrature did not converge (error estimate " << err << ")";
      throw Error(ErrorCode::NumericalFailure, os.str());
    }
    const cplx wm = run(seg, sa, mid, wa, acc, depth + 1);
    return run(seg, mid, sb, wm, acc, depth + 1);
  }
};

}  // namespace

TrackedIntegral tracked_integrate(const std::function<cplx(cplx)>& p, const std::vector<Zero>& zeros,
                                  const PathSpec& path, int n_integrands,
                                  const std::function<void(cplx, cplx, cplx*)>& g, const QuadratureOptions& opts) {
  if (path.segments.empty()) throw Error(ErrorCode::ConfigError, "empty path");
  if (!(path.clearance > 0.0)) throw Error(ErrorCode::ConfigError, "clearance must be positive");
  if (path.initial_sign != 1 && path.initial_sign != -1) throw Error(ErrorCode::ConfigError, "initial_sign must be +-1");
  for (std::size_t i = 0; i < path.segments.size(); ++i) {
    const auto& seg = path.segments[i];
    if (seg.subdivisions < 1) throw Error(ErrorCode::ConfigError, "segment subdivisions must be >= 1");
    for (const auto& z : zeros) {
      const double dist = seg.distance_to(z.location);
      if (dist < path.clearance) {
        std::ostringstream os;
        os << "segment " << i << " passes within " << dist << " of the zero " << z.location;
        throw Error(ErrorCode::PathHitsZero, os.str());
      }
    }
    if (i > 0) {
      const cplx gap = seg.start() - path.segments[i - 1].end();
      if (std::abs(gap) > 1e-9 * (1.0 + std::abs(seg.start()))) {
        throw Error(ErrorCode::ConfigError, "path segments are not contiguous");
      }
    }
  }

  TrackedIntegral out;
  out.values.assign(static_cast<std::size_t>(n_integrands), 0.0);
  cplx p0 = p(path.segments.front().start());
  if (p0 == 0.0) throw Error(ErrorCode::PathHitsZero, "path starts at a zero");
  // On the negative real axis the principal root is +i sqrt|p|, whatever the sign of
  // a roundoff-level imaginary part.
  if (p0.real() < 0.0 && std::abs(p0.imag()) <= 1e-12 * std::abs(p0)) p0 = cplx(p0.real(), 0.0);
  out.start_branch = static_cast<double>(path.initial_sign) * std::sqrt(p0);
  Tracker tr{p, g, n_integrands, opts};
  cplx w = out.start_branch;
  for (const auto& seg : path.segments) {
    for (int k = 0; k < seg.subdivisions; ++k) {
      w = tr.run(seg, static_cast<double>(k) / seg.subdivisions, static_cast<double>(k + 1) / seg.subdivisions, w,
                 out.values, 0);
    }
  }
  out.end_branch = w;
  out.panels = tr.panels;
  return out;
}

cplx sqrtq_integrate(const PolyQuadDiff& q, const PathSpec& path, const QuadratureOptions& opts) {
  auto res = tracked_integrate([&q](cplx z) { return q(z); }, q.zeros(), path, 1,
                               [](cplx, cplx w, cplx* out) { out[0] = w; }, opts);
  return res.values[0];
}

// ---------------------------------------------------------------------------
// Area integrals.

namespace {

struct GaussRule {
  std::vector<double> x;  // on [0, 1]
  std::vector<double> w;
};

const GaussRule& gauss20() {
  static const GaussRule rule = [] {
    using G = boost::math::quadrature::gauss<double, 20>;
    GaussRule r;
    for (std::size_t i = 0; i < G::abscissa().size(); ++i) {
      for (int sign : {-1, 1}) {
        r.x.push_back(0.5 + 0.5 * sign * G::abscissa()[i]);
        r.w.push_back(0.5 * G::weights()[i]);
      }
    }
    return r;
  }();
  return rule;
}

// Distance from p (inside the disk) to the boundary along direction theta.
double ray_length(const Disk& d, cplx p, double theta) {
  const cplx u = std::polar(1.0, theta);
  const cplx rel = p - d.center;
  const double b = std::real(rel * std::conj(u));
  const double c = std::norm(rel) - d.radius * d.radius;
  return -b + std::sqrt(b * b - c);
}

// sum over theta nodes and Gauss panels of f(rho, theta) on rho in [0, L(theta)].
template <class F>
double polar_integral(int angular, int panels, F&& f, const std::function<double(double)>& length) {
  const auto& rule = gauss20();
  double total = 0.0;
  for (int j = 0; j < angular; ++j) {
    const double theta = 2.0 * kPi * (j + 0.5) / angular;
    const double len = length(theta);
    double ray = 0.0;
    for (int pnl = 0; pnl < panels; ++pnl) {
      const double a = len * pnl / panels, h = len / panels;
      for (std::size_t i = 0; i < rule.x.size(); ++i) ray += h * rule.w[i] * f(a + h * rule.x[i], theta);
    }
    total += ray;
  }
  return total * 2.0 * kPi / angular;
}

struct InsideZeros {
  std::vector<Zero> zeros;
};

InsideZeros classify(const PolyQuadDiff& q, const PolyQuadDiff& qdot, const Disk& disk) {
  if (!(disk.radius > 0.0)) throw Error(ErrorCode::ConfigError, "disk radius must be positive");
  InsideZeros in;
  for (const auto& z : q.zeros()) {
    const double dist = std::abs(z.location - disk.center);
    if (std::abs(dist - disk.radius) < 1e-9 * std::max(1.0, disk.radius)) {
      std::ostringstream os;
      os << "zero " << z.location << " lies on the boundary circle";
      throw Error(ErrorCode::ZeroOnBoundary, os.str());
    }
    if (dist > disk.radius) continue;
    const int k = qdot.order_at(z.location);
    if (2 * k - z.order <= -2) {
      std::ostringstream os;
      os << "|qdot|^2/|q| ~ |z - p|^" << 2 * k - z.order << " is not integrable at " << z.location;
      throw Error(ErrorCode::NonIntegrableSingularity, os.str());
    }
    in.zeros.push_back(z);
  }
  return in;
}

}  // namespace

double sk_energy(const PolyQuadDiff& q, const PolyQuadDiff& qdot, const Disk& disk, double kappa,
                 const AreaQuadrature& quad) {
  if (!(kappa > 0.0)) throw Error(ErrorCode::ConfigError, "kappa must be positive");
  if (quad.angular < 4 || quad.radial_panels < 1) throw Error(ErrorCode::ConfigError, "quadrature too coarse");
  const auto in = classify(q, qdot, disk);
  auto density = [&](cplx z) { return std::norm(qdot(z)) / std::abs(q(z)); };

  std::vector<cplx> centers;
  for (const auto& z : in.zeros) centers.push_back(z.location);
  if (centers.empty()) centers.push_back(disk.center);

  // Smooth partition of unity; w_i vanishes to order 2*power at every other zero,
  // so each polar integral sees a single singular point at its origin.
  const int power = quad.partition_power;
  auto weight = [&](std::size_t i, cplx z) {
    if (centers.size() == 1) return 1.0;
    std::vector<double> prod(centers.size(), 1.0);
    for (std::size_t a = 0; a < centers.size(); ++a) {
      for (std::size_t b = 0; b < centers.size(); ++b) {
        if (a != b) prod[a] *= std::pow(std::norm(z - centers[b]), power);
      }
    }
    double sum = 0.0;
    for (double x : prod) sum += x;
    return prod[i] / sum;
  };

  std::vector<double> parts(centers.size(), 0.0);
  parallel_for(static_cast<int>(centers.size()), 0, [&](int ii) {
    const auto i = static_cast<std::size_t>(ii);
    const cplx p = centers[i];
    parts[i] = polar_integral(
        quad.angular, quad.radial_panels,
        [&](double rho, double theta) {
          const cplx z = p + std::polar(rho, theta);
          return weight(i, z) * density(z) * rho;
        },
        [&](double theta) { return ray_length(disk, p, theta); });
  });
  double total = 0.0;
  for (double x : parts) total += x;
  return 0.25 * kappa * total;
}

SkEnergy sk_energy_report(const PolyQuadDiff& q, const PolyQuadDiff& qdot, const Disk& disk, double kappa,
                          const AreaQuadrature& quad) {
  SkEnergy r;
  r.value = sk_energy(q, qdot, disk, kappa, quad);
  r.refined = sk_energy(q, qdot, disk, kappa, quad.doubled());
  r.refinement_change = r.refined == 0.0 ? 0.0 : std::abs(r.refined - r.value) / std::abs(r.refined);
  return r;
}

PullbackCheck pullback_identity_check(const PolyQuadDiff& q, const PolyQuadDiff& qdot, const Disk& disk, double kappa,
                                      const PullbackOptions& opts) {
  const auto in = classify(q, qdot, disk);
  if (in.zeros.size() > 1) throw Error(ErrorCode::ConfigError, "the disk must contain at most one zero of q");
  PullbackCheck out;
  out.sk_value = sk_energy(q, qdot, disk, kappa, opts.quad);
  const auto& quad = opts.quad;

  if (in.zeros.size() == 1 && in.zeros.front().order % 2 == 1) {
    // w-chart z = p + w^2: |tau(qdot)|^2 = |qdot|^2 |w|^2 / |q| dA_w over the full preimage.
    out.ramified = true;
    const cplx p = in.zeros.front().location;
    const double integral = polar_integral(
        quad.angular, quad.radial_panels,
        [&](double rho, double phi) {
          const cplx w = std::polar(rho, phi);
          const cplx z = p + w * w;
          return std::norm(qdot(z)) * rho * rho / std::abs(q(z)) * rho;
        },
        [&](double phi) { return std::sqrt(ray_length(disk, p, 2.0 * phi)); });
    out.pullback_value = 0.5 * kappa * integral;
  } else {
    if (!in.zeros.empty() && !opts.allow_two_sheets) {
      throw Error(ErrorCode::EvenZeroChart, "even zero: the spectral cover is unramified here");
    }
    // Two sheets, each carrying |tau|^2 = |qdot|^2 / (4 |q|) dA_z.
    const cplx p = in.zeros.empty() ? disk.center : in.zeros.front().location;
    const double sheet = polar_integral(
        quad.angular, quad.radial_panels,
        [&](double rho, double theta) {
          const cplx z = p + std::polar(rho, theta);
          return 0.25 * std::norm(qdot(z)) / std::abs(q(z)) * rho;
        },
        [&](double theta) { return ray_length(disk, p, theta); });
    out.pullback_value = 0.5 * kappa * 2.0 * sheet;
  }
  out.discrepancy = out.sk_value == 0.0 ? std::abs(out.pullback_value)
                                        : std::abs(out.pullback_value - out.sk_value) / std::abs(out.sk_value);
  return out;
}

// ---------------------------------------------------------------------------
// Period matrices.

namespace {

PeriodMatrix raw_period_matrix(const std::vector<cplx>& poly, const std::vector<PathSpec>& cycles,
                               const QuadratureOptions& opts) {
  const PolyQuadDiff P(poly);
  const int deg = P.degree();
  if (deg < 3) throw Error(ErrorCode::ConfigError, "need deg P >= 3 for positive genus");
  for (const auto& z : P.zeros()) {
    if (z.order != 1) throw Error(ErrorCode::ConfigError, "P must be square-free");
  }
  const int g = (deg - 1) / 2;
  if (static_cast<int>(cycles.size()) != 2 * g) {
    std::ostringstream os;
    os << "genus " << g << " needs " << 2 * g << " cycles, got " << cycles.size();
    throw Error(ErrorCode::CycleCountMismatch, os.str());
  }
  PeriodMatrix pm;
  pm.genus = g;
  pm.a_periods.resize(g, g);
  pm.b_periods.resize(g, g);
  std::vector<std::vector<cplx>> results(cycles.size());
  parallel_for(static_cast<int>(cycles.size()), 0, [&](int c) {
    results[static_cast<std::size_t>(c)] =
        tracked_integrate([&P](cplx z) { return P(z); }, P.zeros(), cycles[static_cast<std::size_t>(c)], g,
                          [g](cplx z, cplx w, cplx* out) {
                            cplx zj = 1.0;
                            for (int j = 0; j < g; ++j) {
                              out[j] = zj / w;
                              zj *= z;
                            }
                          },
                          opts)
            .values;
  });
  for (int l = 0; l < g; ++l) {
    for (int j = 0; j < g; ++j) {
      pm.a_periods(j, l) = results[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
      pm.b_periods(j, l) = results[static_cast<std::size_t>(g + l)][static_cast<std::size_t>(j)];
    }
  }
  pm.tau = pm.a_periods.fullPivLu().solve(pm.b_periods);
  const double scale = std::max(1.0, pm.tau.cwiseAbs().maxCoeff());
  pm.symmetry_defect = (pm.tau - pm.tau.transpose()).cwiseAbs().maxCoeff() / scale;
  const Eigen::MatrixXd im = (0.5 * (pm.tau + pm.tau.transpose())).imag();
  pm.min_imag_eigenvalue = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(im).eigenvalues().minCoeff();
  return pm;
}

// Each lifted cycle's sign depends on the sheet it starts on, so a_i . b_i = +-1
// independently per i. Choose per-cycle signs of the b_i making tau symmetric with
// Im tau > 0; the a-periods are left alone.
std::vector<PathSpec> orient(const std::vector<cplx>& poly, std::vector<PathSpec> cycles) {
  const auto pm = raw_period_matrix(poly, cycles, {});
  const int g = pm.genus;
  const auto lu = pm.a_periods.fullPivLu();
  unsigned best = 0;
  double best_defect = INFINITY;
  for (unsigned mask = 0; mask < (1U << g); ++mask) {
    Eigen::MatrixXcd b = pm.b_periods;
    for (int l = 0; l < g; ++l) {
      if (mask & (1U << l)) b.col(l) *= -1.0;
    }
    const Eigen::MatrixXcd tau = lu.solve(b);
    const double defect = (tau - tau.transpose()).cwiseAbs().maxCoeff();
    const Eigen::MatrixXd im = (0.5 * (tau + tau.transpose())).imag();
    if (Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(im).eigenvalues().minCoeff() > 0.0 && defect < best_defect) {
      best = mask;
      best_defect = defect;
    }
  }
  for (int l = 0; l < g; ++l) {
    if (best & (1U << l)) {
      auto& c = cycles[static_cast<std::size_t>(g + l)];
      c = c.reversed();
    }
  }
  return cycles;
}

PathSpec circle_path(cplx center, double radius) {
  PathSpec p;
  p.segments.push_back(Segment::circle(center, radius, 1, 16));
  return p;
}

}  // namespace

PeriodMatrix period_matrix(const std::vector<cplx>& poly, const std::vector<PathSpec>& cycles, double riemann_tol,
                           const QuadratureOptions& opts) {
  PeriodMatrix pm = raw_period_matrix(poly, cycles, opts);
  if (pm.symmetry_defect > riemann_tol || !(pm.min_imag_eigenvalue > 0.0)) {
    std::ostringstream os;
    os << "tau symmetry defect " << pm.symmetry_defect << ", min eigenvalue of Im tau " << pm.min_imag_eigenvalue;
    throw Error(ErrorCode::RiemannRelationViolation, os.str());
  }
  return pm;
}

std::vector<PathSpec> standard_cycles(const std::vector<cplx>& poly, const std::vector<double>& e) {
  if (e.size() < 3) throw Error(ErrorCode::ConfigError, "need at least three branch points");
  if (!std::is_sorted(e.begin(), e.end())) throw Error(ErrorCode::ConfigError, "branch points must be sorted");
  double gap = INFINITY;
  for (std::size_t i = 1; i < e.size(); ++i) gap = std::min(gap, e[i] - e[i - 1]);
  if (!(gap > 0.0)) throw Error(ErrorCode::ConfigError, "branch points must be distinct");
  const double margin = 0.3 * gap;
  const int g = static_cast<int>(e.size() - 1) / 2;
  const std::size_t last = static_cast<std::size_t>(2 * g);  // e_{2g+1}, zero-based
  std::vector<PathSpec> cycles;
  for (int i = 1; i <= g; ++i) {
    const double lo = e[static_cast<std::size_t>(2 * i - 2)], hi = e[static_cast<std::size_t>(2 * i - 1)];
    cycles.push_back(circle_path(0.5 * (lo + hi), 0.5 * (hi - lo) + margin));
  }
  for (int i = 1; i <= g; ++i) {
    const double lo = e[static_cast<std::size_t>(2 * i - 1)], hi = e[last];
    cycles.push_back(circle_path(0.5 * (lo + hi), 0.5 * (hi - lo) + margin));
  }
  return orient(poly, std::move(cycles));
}

std::vector<PathSpec> cubic_unity_cycles() {
  const cplx w = std::polar(1.0, 2.0 * kPi / 3.0);
  const cplx w2 = w * w;
  const double margin = 0.2;
  std::vector<PathSpec> cycles{circle_path(0.5 * (1.0 + w), 0.5 * std::abs(1.0 - w) + margin),
                               circle_path(0.5 * (w + w2), 0.5 * std::abs(w - w2) + margin)};
  return orient({-1.0, 0.0, 0.0, 1.0}, std::move(cycles));
}

cplx reduce_to_fundamental_domain(cplx tau) {
  if (!(tau.imag() > 0.0)) throw Error(ErrorCode::ConfigError, "tau must lie in the upper half plane");
  for (int it = 0; it < 1000; ++it) {
    tau -= std::round(tau.real());
    if (std::norm(tau) >= 1.0 - 1e-15) break;
    tau = -1.0 / tau;
  }
  return tau;
}

PeriodMatrix flat_torus(cplx tau) {
  if (!(tau.imag() > 0.0)) throw Error(ErrorCode::ConfigError, "tau must lie in the upper half plane");
  PeriodMatrix pm;
  pm.genus = 1;
  pm.a_periods = Eigen::MatrixXcd::Constant(1, 1, 1.0);
  pm.b_periods = Eigen::MatrixXcd::Constant(1, 1, tau);
  pm.tau = pm.b_periods;
  pm.min_imag_eigenvalue = tau.imag();
  return pm;
}

Eigen::MatrixXcd gram_form(const PeriodMatrix& pm) {
  const Eigen::MatrixXcd& A = pm.a_periods;
  const Eigen::MatrixXcd& B = pm.b_periods;
  return kI * (A * B.adjoint() - B * A.adjoint());
}

namespace {

void check_dim(const Eigen::VectorXcd& c, const PeriodMatrix& pm) {
  if (c.size() != pm.genus) {
    std::ostringstream os;
    os << "coefficient vector has length " << c.size() << ", genus is " << pm.genus;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

}  // namespace

double horizontal_norm(const Eigen::VectorXcd& c, const PeriodMatrix& pm, double kappa) {
  check_dim(c, pm);
  // c^T G conj(c)
  return 0.5 * kappa * (c.transpose() * gram_form(pm) * c.conjugate())(0, 0).real();
}

double vertical_norm(const Eigen::VectorXcd& b, const PeriodMatrix& pm, double kappa) {
  check_dim(b, pm);
  // conj(b)^T G b
  return 2.0 / kappa * (b.adjoint() * gram_form(pm) * b)(0, 0).real();
}

Eigen::VectorXcd duality_map(const Eigen::VectorXcd& c, double kappa) { return (-0.5 * kappa * kI) * c.conjugate(); }

double hodge_duality_check(const Eigen::VectorXcd& c, const PeriodMatrix& pm, double kappa) {
  check_dim(c, pm);
  if (c.isZero(0.0)) throw Error(ErrorCode::ZeroInput, "duality check needs a nonzero tangent vector");
  const double h = horizontal_norm(c, pm, kappa);
  return std::abs(vertical_norm(duality_map(c, kappa), pm, kappa) - h) / h;
}

}  // namespace hitchin::periods
