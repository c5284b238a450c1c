#include "hitchin/hecke_local.hpp"

#include <cmath>
#include <regex>

namespace hitchin {

Rational parse_rational(const std::string& text) {
  static const std::regex fraction(R"(\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*)");
  static const std::regex decimal(R"(\s*([+-]?)(\d*)\.(\d+)\s*)");
  std::smatch m;
  if (std::regex_match(text, m, fraction)) {
    Rational num(boost::multiprecision::cpp_int(m[1].str()));
    if (m[2].matched) {
      boost::multiprecision::cpp_int den(m[2].str());
      if (den == 0) throw Error(ErrorCode::ConfigError, "zero denominator in '" + text + "'");
      return num / Rational(den);
    }
    return num;
  }
  if (std::regex_match(text, m, decimal)) {
    const std::string digits = m[2].str() + m[3].str();
    boost::multiprecision::cpp_int num(digits.empty() ? "0" : digits);
    boost::multiprecision::cpp_int den = boost::multiprecision::pow(boost::multiprecision::cpp_int(10),
                                                                     static_cast<unsigned>(m[3].length()));
    Rational r(num, den);
    return m[1].str() == "-" ? -r : r;
  }
  throw Error(ErrorCode::ConfigError, "not a rational literal: '" + text + "'");
}

}  // namespace hitchin

namespace hitchin::hecke {

namespace {

std::complex<double> ipow(std::complex<double> z, int k) {
  std::complex<double> acc = 1.0;
  std::complex<double> base = k < 0 ? 1.0 / z : z;
  for (unsigned e = static_cast<unsigned>(k < 0 ? -k : k); e; e >>= 1) {
    if (e & 1U) acc *= base;
    base *= base;
  }
  return acc;
}

}  // namespace

Hermitian2 limiting_metric(int n, int v, double g1, std::complex<double> g2, std::complex<double> z,
                           double constraint_tol) {
  if (n < 1 || v < 0 || v > n / 2) {
    throw Error(ErrorCode::IncompatibleModulus, "invalid (n, v)");
  }
  const double r = std::abs(z);
  if (r == 0.0) throw Error(ErrorCode::OriginEvaluation, "limiting metric is singular at z = 0");
  const int np = n - 2 * v;
  const double half = 0.5 * np;
  Hermitian2 h{};
  if (n % 2 == 1) {
    const double lhs = g1 * g1 - std::norm(g2) * r;
    if (std::abs(lhs - 1.0) > constraint_tol) {
      throw Error(ErrorCode::ConstraintViolated, "g1^2 - |g2|^2 |z| = " + std::to_string(lhs));
    }
    // z^{(1-np)/2} is an integer power since np is odd.
    const std::complex<double> off = g2 * ipow(z, (1 - np) / 2) * std::pow(r, half);
    h[0][0] = g1 * std::pow(r, half);
    h[0][1] = off;
    h[1][0] = std::conj(off);
    h[1][1] = g1 * std::pow(r, -half);
  } else {
    if (std::abs(g2.imag()) > constraint_tol) {
      throw Error(ErrorCode::ConstraintViolated, "g2 must be real at an even zero");
    }
    const double g2r = g2.real();
    const double lhs = g1 * g1 - g2r * g2r;
    if (std::abs(lhs - 1.0) > constraint_tol) {
      throw Error(ErrorCode::ConstraintViolated, "g1^2 - g2^2 = " + std::to_string(lhs));
    }
    const std::complex<double> off = g2r * ipow(z, -np / 2) * std::pow(r, half);
    h[0][0] = g1 * std::pow(r, half);
    h[0][1] = off;
    h[1][0] = std::conj(off);
    h[1][1] = g1 * std::pow(r, -half);
  }
  return h;
}

std::complex<double> det(const Hermitian2& h) { return h[0][0] * h[1][1] - h[0][1] * h[1][0]; }

std::vector<std::complex<double>> AnnulusGrid::points() const {
  std::vector<std::complex<double>> pts;
  pts.reserve(static_cast<std::size_t>(radial_samples * angular_samples));
  for (int i = 0; i < radial_samples; ++i) {
    const double r = radial_samples == 1 ? r_min : r_min + (r_max - r_min) * i / (radial_samples - 1);
    for (int j = 0; j < angular_samples; ++j) {
      const double theta = 2.0 * M_PI * (j + 0.5) / angular_samples;
      pts.push_back(std::polar(r, theta));
    }
  }
  return pts;
}

double fiducial_commutator_entry(int n, int v, std::complex<double> z) {
  const double r = std::abs(z);
  const int np = n - 2 * v;
  // |z^v|^2 h^2 - |z^{n-v}|^2 h^{-2} with h = r^{np/2}
  const double h2 = std::pow(r, np);
  return std::pow(r, 2 * v) * h2 - std::pow(r, 2 * (n - v)) / h2;
}

DecoupledResidual decoupled_residual(int n, int v, const AnnulusGrid& grid) {
  if (n < 1 || v < 0 || v > n / 2) throw Error(ErrorCode::IncompatibleModulus, "invalid (n, v)");
  if (grid.r_min <= 0.0 || grid.r_min - 2.0 * grid.step <= 0.0) {
    throw Error(ErrorCode::GridTouchesOrigin, "finite-difference stencil reaches z = 0");
  }
  const double half = 0.5 * (n - 2 * v);
  const double step = grid.step;
  auto log_h = [half](std::complex<double> z) { return half * std::log(std::abs(z)); };
  auto upper = [v](std::complex<double> z) { return ipow(z, v); };
  auto lower = [n, v](std::complex<double> z) { return ipow(z, n - v); };
  auto dbar = [step](auto&& f, std::complex<double> z) {
    const std::complex<double> dx = (f(z + step) - f(z - step)) / (2.0 * step);
    const std::complex<double> dy =
        (f(z + std::complex<double>(0, step)) - f(z - std::complex<double>(0, step))) / (2.0 * step);
    return 0.5 * (dx + std::complex<double>(0, 1) * dy);
  };

  DecoupledResidual res;
  for (const auto z : grid.points()) {
    const std::complex<double> ix(0, step);
    // F_A = dbar d log H = diag(1, -1) * (1/4) Laplacian(log h) dz^dzbar
    const double lap = (log_h(z + step) + log_h(z - step) + log_h(z + ix) + log_h(z - ix) - 4.0 * log_h(z)) /
                       (step * step);
    res.curvature = std::max(res.curvature, std::abs(0.25 * lap));
    res.commutator = std::max(res.commutator, std::abs(fiducial_commutator_entry(n, v, z)));
    res.holomorphicity = std::max({res.holomorphicity, std::abs(dbar(upper, z)), std::abs(dbar(lower, z))});
  }
  return res;
}

}  // namespace hitchin::hecke
