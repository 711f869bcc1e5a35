#include <cmath>

#include "cpheat/numkernel.hpp"
#include "cpheat/profile.hpp"
#include "doctest.h"

using namespace cpheat;

namespace {

QuadratureSpec tight() {
  QuadratureSpec q;
  q.abs_tol = 1e-14;
  q.rel_tol = 1e-13;
  return q;
}

std::vector<std::pair<double, double>> dyadic(int count, const std::function<double(double)>& f) {
  std::vector<std::pair<double, double>> w;
  for (int i = 0; i < count; ++i) {
    const double lo = std::ldexp(1.0, i - 2);
    w.emplace_back(lo, integrate(f, lo, 2.0 * lo, tight()).value);
  }
  return w;
}

}  // namespace

TEST_CASE("adaptive_quad on elementary integrals") {
  CHECK(adaptive_quad([](double) { return 1.0; }, 0.0, 1.0, tight()).first == doctest::Approx(1.0).epsilon(1e-12));
  const auto [g, ge] = adaptive_quad([](double x) { return std::exp(-x * x); }, 0.0, 40.0, tight());
  CHECK(std::abs(g - 0.5 * std::sqrt(M_PI)) <= 1e-10);

  // Im of (e^{(-1+10i) 20} - 1) / (-1+10i), frozen at 30 digits.
  const double oscill = 0.0990099009084981532290825351129;
  const auto [v, e] = adaptive_quad([](double x) { return std::sin(10.0 * x) * std::exp(-x); }, 0.0, 20.0, tight());
  CHECK(std::abs(v - oscill) <= 1e-12);
  CHECK(e <= 1e-10);
}

TEST_CASE("adaptive_quad reports budget exhaustion") {
  QuadratureSpec q;
  q.max_subdivisions = 2;
  q.abs_tol = 1e-15;
  q.rel_tol = 1e-15;
  CHECK_THROWS_AS(adaptive_quad([](double x) { return std::sin(200.0 * x * x); }, 0.0, 10.0, q), NumericError);
  CHECK_THROWS_AS(adaptive_quad([](double x) { return x; }, 1.0, 0.0, q), NumericError);
}

TEST_CASE("semi-infinite Gaussian quadrature") {
  CHECK(semiinfinite_gaussian_quad([](double l) { return std::exp(-l * l); }, 0.0, 1.0, tight()).value ==
        doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(semiinfinite_gaussian_quad([](double l) { return l * l * std::exp(-l * l); }, 0.0, 1.0, tight()).value ==
        doctest::Approx(0.25 * std::sqrt(M_PI)).epsilon(1e-12));

  auto inv = [](double l) { return std::exp(-l * l / 4.0) * std::sin(2.0 * l) * l; };
  std::vector<double> pts;
  for (int i = 0; i <= 40; ++i) pts.push_back(i);
  QuadratureSpec q;
  q.abs_tol = 1e-13;
  q.rel_tol = 1e-11;
  const double direct = integrate(inv, pts, q).value;
  CHECK(std::abs(semiinfinite_gaussian_quad(inv, 0.0, 0.25, q).value - direct) <= 1e-9);
  CHECK_THROWS_AS(semiinfinite_gaussian_quad(inv, 0.0, 0.0, tight()), NumericError);
}

TEST_CASE("non-finite integrands are rejected") {
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / (x - 0.5); }, 0.0, 1.0, tight()), NumericError);
}

TEST_CASE("convolve_1d") {
  const RadialProfile g1 = RadialProfile::from_function([](double y) { return std::exp(-y * y); },
                                                        DecayModel::gaussian(1.0));
  const GaussianKernel k{[](double y) { return std::exp(-y * y); }, 1.0};
  CHECK(convolve_1d(g1, k, 0.0, tight()) == doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-10));
  for (double x : {0.3, 1.0, 2.5})
    CHECK(convolve_1d(g1, k, x, tight()) ==
          doctest::Approx(std::sqrt(M_PI / 2.0) * std::exp(-x * x / 2.0)).epsilon(1e-9));

  // Mollifier of unit mass and half width w tends to the identity.
  const double w = 1e-3;
  const double mass = w * 0.443993816168079437823048921170552;  // int_{-1}^{1} e^{-1/(1-u^2)} du
  const RadialProfile bump = RadialProfile::from_function(
      [w, mass](double r) { return r < w ? std::exp(-1.0 / (1.0 - (r / w) * (r / w))) / mass : 0.0; },
      DecayModel::compact(w));
  CHECK(std::abs(convolve_1d(bump, k, 0.0, tight()) - 1.0) <= 1e-4);

  const RadialProfile odd = RadialProfile::from_function([](double y) { return y * std::exp(-y * y); },
                                                         DecayModel::gaussian(1.0));
  CHECK(std::abs(convolve_1d(odd, k, 0.0, tight(), Parity::Odd)) <= 1e-14);
  CHECK(convolve_1d(odd, k, 1.0, tight(), Parity::Odd) ==
        doctest::Approx(0.5 * std::sqrt(M_PI / 2.0) * std::exp(-0.5)).epsilon(1e-9));
}

TEST_CASE("tail verdicts") {
  auto gauss = [](double r) { return std::exp(-r * r) * r * r; };
  auto harmonic = [](double r) { return 1.0 / (1.0 + r); };
  for (int n : {8, 16}) {
    CHECK(tail_verdict(dyadic(n, gauss)).kind == VerdictKind::Convergent);
    const IntegralVerdict h = tail_verdict(dyadic(n, harmonic));
    CHECK(h.kind == VerdictKind::Divergent);
  }
  // Gaussian exponent bookkeeping: e^{p r^2 (1/4s - 1/4t)} with s < t grows.
  const double s = 0.4, t = 0.5;
  auto log_grow = [&](double r) { return 2.0 * r * r * (0.25 / s - 0.25 / t) + 2.0 * std::log(r) - 5.0 * std::log1p(r); };
  std::vector<WindowSum> w;
  for (int i = 0; i < 8; ++i) {
    const double lo = std::ldexp(1.0, i - 2), hi = 2.0 * lo, top = log_grow(hi);
    const double rest = integrate([&](double x) { return std::exp(log_grow(x) - top); }, lo, hi, tight()).value;
    w.push_back({lo, hi, top + std::log(rest), 0.0});
  }
  CHECK(tail_verdict(w).kind == VerdictKind::Divergent);
  CHECK_THROWS_AS(tail_verdict(std::vector<std::pair<double, double>>{{1.0, -1.0}}), NumericError);
}

TEST_CASE("panel interpolant reproduces smooth functions") {
  const PanelInterpolant<double> p([](double x) { return std::sin(x); }, 0.0, 5.0, 0.5);
  for (double x = 0.0; x <= 5.0; x += 0.137) CHECK(std::abs(p(x) - std::sin(x)) <= 1e-13);
}
