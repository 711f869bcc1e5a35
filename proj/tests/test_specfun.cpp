#include <cmath>

#include "cpheat/numkernel.hpp"
#include "cpheat/specfun.hpp"
#include "doctest.h"

using namespace cpheat;

TEST_CASE("log_gamma") {
  CHECK(std::abs(log_gamma(1.0)) <= 1e-15);
  CHECK(log_gamma(0.5).real() == doctest::Approx(std::log(std::sqrt(M_PI))).epsilon(1e-14));
  // mpmath loggamma(3+4i), principal branch.
  const Complex want(-1.75662678460378411053060418162, 4.74266443803465792819488940755);
  CHECK(std::abs(log_gamma(Complex(3.0, 4.0)) - want) <= 1e-13);
  for (double x : {0.1, 1.7, 5.5, 30.0}) CHECK(log_gamma(x).real() == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
  CHECK(std::abs(std::exp(log_gamma(Complex(-2.5, 0.3))) - std::exp(log_gamma(Complex(-1.5, 0.3))) /
                                                             Complex(-2.5, 0.3)) <= 1e-13);
}

TEST_CASE("rgamma vanishes at the poles") {
  for (int n = 0; n <= 4; ++n) CHECK(std::abs(rgamma(Complex(-n, 0.0))) == 0.0);
  CHECK(std::abs(rgamma(4.0) - 1.0 / 6.0) <= 1e-15);
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer(Complex(0.3, -2.0), 0) == Complex(1.0));
  CHECK(pochhammer(1.0, 5).real() == doctest::Approx(120.0).epsilon(1e-15));
  // mpmath rf(0.5+0.5i, 3)
  CHECK(std::abs(pochhammer(Complex(0.5, 0.5), 3) - Complex(0.75, 2.75)) <= 1e-14);
  const Complex z(0.5, 0.5);
  CHECK(std::abs(pochhammer(z, 3) - std::exp(log_gamma(z + 3.0) - log_gamma(z))) <= 1e-13);
}

TEST_CASE("gauss_2f1") {
  CHECK(gauss_2f1(Complex(0.3, 1.0), 2.0, 1.5, 0.0) == Complex(1.0));
  CHECK(gauss_2f1(1.0, 1.0, 2.0, -1.0).real() == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  // mpmath hyp2f1(1/2+i, 1/2-i; 1; -sinh^2 2) at 30 digits.
  const double s2 = std::sinh(2.0);
  const Complex v = gauss_2f1(Complex(0.5, 1.0), Complex(0.5, -1.0), 1.0, -s2 * s2);
  CHECK(std::abs(v - Complex(-0.152747390237782295337071958551)) <= 1e-12);
  CHECK(std::abs(v.imag()) <= 1e-14);
  for (double z : {-0.3, -0.9, -4.0, -1e3})
    CHECK(std::abs(gauss_2f1(0.5, 1.0, 1.5, z).real() - std::atan(std::sqrt(-z)) / std::sqrt(-z)) <= 1e-13);
}

TEST_CASE("bessel_j") {
  CHECK(bessel_j(0.0, 0.0) == 1.0);
  CHECK(std::abs(bessel_j(0.5, M_PI)) <= 1e-12);
  CHECK(bessel_j(0.5, 2.0) == doctest::Approx(std::sqrt(2.0 / (M_PI * 2.0)) * std::sin(2.0)).epsilon(1e-13));
  // mpmath besselj(3, 7.5)
  const double want = -0.258060913193460311662659323233;
  CHECK(std::abs(bessel_j(3.0, 7.5) - want) <= 1e-13);
  QuadratureSpec q;
  q.abs_tol = 1e-14;
  q.rel_tol = 1e-12;
  const double integral = adaptive_quad([](double th) { return std::cos(3.0 * th - 7.5 * std::sin(th)); }, 0.0, M_PI, q).first / M_PI;
  CHECK(std::abs(bessel_j(3.0, 7.5) - integral) <= 1e-12);
  for (double x : {0.5, 3.0, 40.0, 200.0}) CHECK(bessel_j(2.0, x) == doctest::Approx(std::cyl_bessel_j(2.0, x)).epsilon(1e-10));
}

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli_number(1) == doctest::Approx(-0.5));
  CHECK(bernoulli_number(2) == doctest::Approx(1.0 / 6.0));
  CHECK(bernoulli_number(3) == 0.0);
  CHECK(bernoulli_poly(2, 0.5) == doctest::Approx(-1.0 / 12.0));
}
