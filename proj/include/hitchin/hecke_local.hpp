#pragma once

// Local normal forms of a Higgs field near a zero of q = det(phi), in the
// Hecke u-coordinates, and the limiting-configuration metric at such a zero.

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "hitchin/truncated_poly.hpp"

namespace hitchin::hecke {

enum class EvenChart { Plus, Minus };

/// Zero of order n, Higgs-divisor value v, Hecke coordinate u in C[z]/z^{floor(n/2)-v}.
template <class T>
struct LocalHiggsModel {
  int n;
  int v;
  TruncatedPoly<T> u;
  EvenChart chart = EvenChart::Plus;

  LocalHiggsModel(int order, int divisor_value, TruncatedPoly<T> coord, EvenChart c = EvenChart::Plus)
      : n(order), v(divisor_value), u(std::move(coord)), chart(c) {
    if (n < 1 || v < 0 || v > n / 2) {
      throw Error(ErrorCode::IncompatibleModulus,
                  "invalid (n, v) = (" + std::to_string(n) + ", " + std::to_string(v) + ")");
    }
    if (u.modulus() != n / 2 - v) {
      throw Error(ErrorCode::IncompatibleModulus, "u has modulus " + std::to_string(u.modulus()) +
                                                      ", expected floor(n/2) - v = " +
                                                      std::to_string(n / 2 - v));
    }
  }

  /// Local exponent n - 2v of the limiting metric.
  int weight() const noexcept { return n - 2 * v; }

  /// At even zeros the chart frame descends only when u(0) != +-1.
  void check_frame_descent() const {
    if (n % 2 != 0 || u.modulus() == 0) return;
    const auto u0 = ScalarTraits<T>::to_complex(u[0]);
    if (u0 == std::complex<double>(1.0, 0.0) || u0 == std::complex<double>(-1.0, 0.0)) {
      throw Error(ErrorCode::ConstraintViolated, "u(0) = +-1: chart frame does not descend");
    }
  }
};

/// 2x2 matrix of polynomials in z, times a formal dz.
template <class T>
struct LocalMatrix {
  std::array<std::array<Poly<T>, 2>, 2> e;

  Poly<T> det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }
  Poly<T> trace() const { return e[0][0] + e[1][1]; }
};

template <class T>
LocalMatrix<T> local_higgs(const LocalHiggsModel<T>& model) {
  const int k = model.n / 2;
  const int m = k - model.v;
  const Poly<T> u = model.u.lift();
  const Poly<T> one = Poly<T>::monomial(T(1), 0);
  LocalMatrix<T> phi;
  if (model.n % 2 == 1) {
    // [[u z^{k+1}, z^{m+k+1}], [z^{k-m}(1 - u^2 z), -u z^{k+1}]]
    phi.e[0][0] = u.shifted(k + 1);
    phi.e[0][1] = Poly<T>::monomial(T(1), m + k + 1);
    phi.e[1][0] = (one - (u * u).shifted(1)).shifted(k - m);
    phi.e[1][1] = -phi.e[0][0];
  } else {
    // [[u z^k, z^{m+k}], [z^{k-m}(1 - u^2), -u z^k]]
    phi.e[0][0] = u.shifted(k);
    phi.e[0][1] = Poly<T>::monomial(T(1), m + k);
    phi.e[1][0] = (one - u * u).shifted(k - m);
    phi.e[1][1] = -phi.e[0][0];
  }
  return phi;
}

/// Largest coefficient mismatch between det(local_higgs(model)) and -z^n.
template <class T>
double determinant_defect(const LocalHiggsModel<T>& model) {
  const Poly<T> det = local_higgs(model).det();
  const Poly<T> expected = Poly<T>::monomial(T(-1), model.n);
  const int top = std::max(det.degree(), expected.degree());
  double worst = 0.0;
  for (int j = 0; j <= top; ++j) {
    worst = std::max(worst, std::abs(ScalarTraits<T>::to_complex(det.coeff(j) - expected.coeff(j))));
  }
  return worst;
}

template <class T>
bool determinant_identity_holds_exactly(const LocalHiggsModel<T>& model) {
  return local_higgs(model).det() == Poly<T>::monomial(T(-1), model.n);
}

template <class T>
bool is_locally_fiducial(const LocalHiggsModel<T>& model) {
  return model.u.is_zero();
}

using Hermitian2 = std::array<std::array<std::complex<double>, 2>, 2>;

/// Limiting-configuration metric in the canonical local frame at z. g1 is real
/// positive, g2 complex (real for even zeros); the caller supplies their values
/// at z, which must satisfy g1^2 - |g2|^2 |z| = 1 (odd n) or g1^2 - g2^2 = 1 (even n).
Hermitian2 limiting_metric(int n, int v, double g1, std::complex<double> g2, std::complex<double> z,
                           double constraint_tol = 1e-10);

template <class T>
Hermitian2 limiting_metric(const LocalHiggsModel<T>& model, double g1, std::complex<double> g2,
                           std::complex<double> z, double constraint_tol = 1e-10) {
  return limiting_metric(model.n, model.v, g1, g2, z, constraint_tol);
}

std::complex<double> det(const Hermitian2& h);

/// Sample points on an annulus for the decoupled-equation check.
struct AnnulusGrid {
  double r_min = 0.5;
  double r_max = 1.0;
  int radial_samples = 6;
  int angular_samples = 8;
  double step = 1e-3;  // finite-difference step

  std::vector<std::complex<double>> points() const;
};

struct DecoupledResidual {
  double curvature = 0.0;
  double commutator = 0.0;
  double holomorphicity = 0.0;

  double max() const { return std::max({curvature, commutator, holomorphicity}); }
};

/// Evaluates F_A, [phi, phi^dagger] and dbar_A phi for the fiducial pair
/// phi = [[0, z^v], [z^{n-v}, 0]] dz, H = diag(r^{(n-2v)/2}, r^{-(n-2v)/2}) by finite differences.
DecoupledResidual decoupled_residual(int n, int v, const AnnulusGrid& grid);

/// Pointwise diagonal entry of [phi, phi^dagger_H] for the fiducial pair.
double fiducial_commutator_entry(int n, int v, std::complex<double> z);

}  // namespace hitchin::hecke
