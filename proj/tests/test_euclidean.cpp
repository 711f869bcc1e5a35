#include <cmath>

#include "cpheat/cpverify.hpp"
#include "cpheat/euclidean.hpp"
#include "cpheat/specfun.hpp"
#include "doctest.h"

using namespace cpheat;

namespace {

QuadratureSpec tight() {
  QuadratureSpec q;
  q.abs_tol = 1e-15;
  q.rel_tol = 1e-12;
  return q;
}

}  // namespace

TEST_CASE("Gaussian heat kernel on R^n") {
  CHECK(gauss_heat(1, 0.25, 0.0) == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-15));
  const double mass = adaptive_quad([](double r) { return gauss_heat(3, 0.7, r) * 4.0 * M_PI * r * r; }, 0.0, 30.0,
                                    tight()).first;
  CHECK(std::abs(mass - 1.0) <= 1e-8);
  CHECK(log_gauss_heat(3, 0.5, 40.0) == doctest::Approx(-1.5 * std::log(2.0 * M_PI) - 800.0).epsilon(1e-14));
}

TEST_CASE("radial Fourier transform") {
  const double t = 0.5;
  CHECK(radial_fourier(2, gauss_heat_profile(2, t), 2.0, tight()) ==
        doctest::Approx(std::exp(-2.0) / (2.0 * M_PI)).epsilon(1e-9));
  for (int n : {2, 3, 4})
    for (double rho : {0.0, 0.7, 3.0})
      CHECK(std::abs(radial_fourier(n, gauss_heat_profile(n, t), rho, tight()) -
                     std::pow(2.0 * M_PI, -0.5 * n) * std::exp(-t * rho * rho)) <= 1e-7);
  CHECK(radial_fourier(3, RadialProfile::zero(), 1.0) == 0.0);

  const RadialProfile hat = RadialProfile::from_function([](double r) { return r <= 1.0 ? 1.0 : 0.0; },
                                                         DecayModel::compact(1.0));
  const double want = std::sqrt(2.0 / M_PI) / (M_PI * M_PI);  // (2/pi)^{1/2} rho^{-3} (sin rho - rho cos rho) at pi
  CHECK(std::abs(radial_fourier(3, hat, M_PI, tight()) - want) <= 1e-9);
}

TEST_CASE("sphere quadrature and harmonics") {
  CHECK(sphere_quadrature(3, [](const SpherePoint&) { return 1.0; }) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
  CHECK(sphere_quadrature(2, [](const SpherePoint&) { return 1.0; }) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * M_PI));
  for (int n : {2, 3})
    for (int m = 0; m <= 4; ++m) {
      const auto S = SphericalHarmonicSpec::standard(n, m, n == 2 ? m : 0);
      CHECK_NOTHROW(S.validate());
      CHECK(sphere_quadrature(n, [&](const SpherePoint& x) { return S(x) * S(x); }) == doctest::Approx(1.0).epsilon(1e-12));
    }
  const auto S1 = SphericalHarmonicSpec::standard(3, 1), S2 = SphericalHarmonicSpec::standard(3, 2);
  CHECK(std::abs(sphere_quadrature(3, [&](const SpherePoint& x) { return S1(x) * S2(x); })) <= 1e-10);
  CHECK_THROWS_AS(sphere_rule(4, 6), NumericError);
  CHECK_THROWS_AS(SphericalHarmonicSpec::standard(2, 2, 1), NumericError);
}

TEST_CASE("zonal identity in R^3 fixes the dimension-shift constant") {
  // int_{S^2} e^{-i lambda r x.omega} S_1(omega) domega = C J_{3/2}(lambda r) (lambda r)^{-1/2} S_1(x).
  const auto S = SphericalHarmonicSpec::standard(3, 1);
  const SpherePoint x{0.0, 0.0, 1.0};
  const double lr = 2.0;
  const double re = sphere_quadrature(3, [&](const SpherePoint& w) { return std::cos(lr * w[2]) * S(w); }, 20);
  const double im = -sphere_quadrature(3, [&](const SpherePoint& w) { return std::sin(lr * w[2]) * S(w); }, 20);
  CHECK(std::abs(re) <= 1e-12);
  const Complex C = Complex(re, im) / (bessel_j(1.5, lr) * std::pow(lr, -0.5) * S(x));
  // C_{3,1} = -i (2 pi)^{3/2}
  CHECK(std::abs(C - Complex(0.0, -std::pow(2.0 * M_PI, 1.5))) <= 1e-8);
  const DimensionShift d = dimension_shift_Fm(gauss_heat_profile(3, 0.5, 1), 3, 1, 1.0);
  CHECK(std::abs(d.constant - Complex(0.0, -1.0)) <= 1e-15);
}

TEST_CASE("F_m of r^m p_t S_m is a multiple of the Gaussian") {
  for (int n : {2, 3})
    for (int m = 0; m <= 3; ++m) {
      const double t = 0.6;
      const RadialProfile f = gauss_heat_profile(n, t, m);
      const double c = (dimension_shift_Fm(f, n, m, 0.1).value * std::exp(t * 0.01)).real();
      for (double l = 0.5; l <= 5.0; l += 0.5) {
        const Complex v = dimension_shift_Fm(f, n, m, l).value * std::exp(t * l * l);
        CHECK(std::abs(v / c - 1.0) <= 1e-6);
      }
    }
  CHECK(std::abs(dimension_shift_Fm(gauss_heat_profile(3, 0.5, 0), 3, 0, 1.2).value -
                 radial_fourier(3, gauss_heat_profile(3, 0.5, 0), 1.2)) == 0.0);
}

TEST_CASE("two routes to F_m agree after calibration") {
  auto check_routes = [](int n, int m, const RadialProfile& fm) {
    const auto S = SphericalHarmonicSpec::standard(n, m, n == 2 ? m : 0);
    const SolidFunction f{{HarmonicTerm{fm, S}}};
    auto shift = [&](double l) {
      const DimensionShift d = dimension_shift_Fm(fm, n, m, l);
      return d.constant * d.value;
    };
    const Complex c = fourier_coeff_Fm(f, S, 1.0) / shift(1.0);
    double worst = 0.0, sup = 0.0;
    for (double l : {0.3, 0.8, 1.7, 2.9, 4.0}) {
      const Complex a = fourier_coeff_Fm(f, S, l);
      sup = std::max(sup, std::abs(a));
      worst = std::max(worst, std::abs(a - c * shift(l)));
    }
    CHECK(worst / sup <= 1e-6);
    return c;
  };
  const Complex c21 = check_routes(2, 1, gauss_heat_profile(2, 0.4, 1));
  CHECK(std::abs(c21 - 1.0) <= 1e-6);
  const RadialProfile hat2 = RadialProfile::from_function([](double r) { return r <= 1.0 ? r * r : 0.0; },
                                                          DecayModel::compact(1.0));
  check_routes(2, 2, hat2);
}

TEST_CASE("dimension shift rejects bad input") {
  CHECK_THROWS_AS(dimension_shift_Fm(gauss_heat_profile(3, 0.5), 3, 0, -1.0), NumericError);
}
