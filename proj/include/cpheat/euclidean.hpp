#pragma once

#include <array>
#include <functional>
#include <vector>

#include "cpheat/numkernel.hpp"
#include "cpheat/profile.hpp"

namespace cpheat {

using SpherePoint = std::array<double, 3>;

// p_t(x) = (4 pi t)^{-n/2} e^{-|x|^2/4t} as a function of r = |x|.
double gauss_heat(int n, double t, double r);
double log_gauss_heat(int n, double t, double r);
// r^m p_t(r) as a Gaussian(1/(4t)) profile.
RadialProfile gauss_heat_profile(int n, double t, int m = 0);

// Radial Fourier transform (2 pi)^{-n/2} int_{R^n} f(|x|) e^{-i x.y} dx at |y| = rho,
// computed as rho^{-(n-2)/2} int_0^inf f0(s) J_{(n-2)/2}(rho s) s^{n/2} ds.
double radial_fourier(int n, const RadialProfile& f0, double rho, const QuadratureSpec& spec = {});

// Surface area of S^{n-1}.
double sphere_area(int n);

// A real spherical harmonic of degree m on S^{n-1}, n in {2, 3}. Points of S^1 are (cos phi, sin phi, 0).
struct SphericalHarmonicSpec {
  int n = 3;
  int m = 0;
  std::function<double(const SpherePoint&)> evaluator;

  double operator()(const SpherePoint& x) const { return evaluator(x); }
  // L^2 normalization and harmonicity of the solid extension; throws InvalidArgument.
  void validate() const;

  // Orthonormal real harmonic of degree m and order k (|k| <= m; k < 0 selects sine
  // type). For n = 2 only k in {-m, m} (k = m for m = 0) is admitted.
  static SphericalHarmonicSpec standard(int n, int m, int k = 0);
};

// Product rule on S^{n-1}: `order` Gauss-Legendre nodes in cos(theta) times 2 * order
// trapezoid nodes in phi (n = 3), 2 * order trapezoid nodes (n = 2). Exact for
// polynomials of degree < 2 * order. Throws UnsupportedDimension for n outside {2, 3}.
struct SphereRule {
  std::vector<SpherePoint> points;
  std::vector<double> weights;
};
SphereRule sphere_rule(int n, int order);

// Integral over S^{n-1}; the default order integrates harmonics up to degree 20 exactly.
double sphere_quadrature(int n, const std::function<double(const SpherePoint&)>& g, int order = 12);

// f(x) = sum_j f_j(|x|) S_j(x/|x|)
struct HarmonicTerm {
  RadialProfile radial;
  SphericalHarmonicSpec harmonic;
};
struct SolidFunction {
  std::vector<HarmonicTerm> terms;

  int dimension() const;
  double operator()(const SpherePoint& x) const;
};

// F_m(lambda) = lambda^{-m} int_{S^{n-1}} fhat(lambda, omega) S_m(omega) domega, with fhat
// assembled from sphere quadrature in both the direction of x and of omega.
Complex fourier_coeff_Fm(const SolidFunction& f, const SphericalHarmonicSpec& Sm, double lambda);

// Radial transform in dimension n + 2m of r -> f_m(r) r^{-m}.
struct DimensionShift {
  Complex value;       // the (n+2m)-dimensional transform
  Complex constant;    // F_m = constant * value
};
// lambda = 0 gives the continuous extension of the value.
DimensionShift dimension_shift_Fm(const RadialProfile& f_m, int n, int m, double lambda,
                                  const QuadratureSpec& spec = {});

}  // namespace cpheat
