#include <cmath>

#include "cpheat/heat.hpp"
#include "doctest.h"

using namespace cpheat;

namespace {

const char* kSpaces[] = {"H3", "Hn_real(4)", "Hn_complex(2)"};

}  // namespace

TEST_CASE("spectral fidelity") {
  for (const char* name : kSpaces)
    for (double t : {0.1, 0.5, 1.0}) {
      const JacobiParams J = preset(name).jacobi();
      const RadialProfile h = HeatKernel(J, t).profile();
      for (double l = 0.0; l <= 5.0; l += 0.5)
        CHECK(std::abs(jacobi_transform(h, J, l) - std::exp(-(l * l + J.rho() * J.rho()) * t)) <= 1e-6);
      CHECK(std::abs(jacobi_transform(h, J, Complex(0.0, J.rho())) - 1.0) <= 1e-6);
    }
}

TEST_CASE("H3 closed form") {
  const JacobiParams J{0.5, -0.5};
  for (double t : {0.25, 1.0})
    for (double r = 0.0; r <= 6.0; r += 0.1) CHECK(std::abs(heat_kernel(J, t, r) / heat_kernel_h3(t, r) - 1.0) <= 1e-7);
  // The closed form is normalized by J(h_t)(i rho) = 1.
  QuadratureSpec q;
  q.abs_tol = 1e-14;
  q.rel_tol = 1e-12;
  const double mass =
      adaptive_quad([](double r) { return heat_kernel_h3(0.5, r) * weight_delta({0.5, -0.5}, r); }, 0.0, 30.0, q).first;
  CHECK(std::abs(mass - 1.0) <= 1e-10);
  const double far = std::log(M_PI) - 1.5 * std::log(2.0 * M_PI) - 0.5 + std::log(200.0) - (200.0 - std::log(2.0)) -
                     200.0 * 200.0 / 2.0;
  CHECK(log_heat_kernel_h3(0.5, 200.0) == doctest::Approx(far).epsilon(1e-14));
}

TEST_CASE("heat kernel properties") {
  for (const char* name : kSpaces) {
    const JacobiParams J = preset(name).jacobi();
    const HeatKernel h(J, 0.5);
    for (double r = 0.0; r <= 30.0; r += 0.5) {
      CHECK(h(r) > 0.0);
      CHECK(std::abs(h.log_value(r) - log_heat_kernel(J, 0.5, r)) <= 1e-8);
    }
    QuadratureSpec q;
    q.abs_tol = 1e-14;
    q.rel_tol = 1e-11;
    std::vector<double> pts;
    for (int i = 0; i <= 20; ++i) pts.push_back(i);
    const double mass = integrate([&](double r) { return std::exp(h.log_value(r) + log_weight_delta(J, r)); }, pts, q).value;
    CHECK(std::abs(mass - 1.0) <= 1e-6);
  }
  // Semigroup: the inverse of e^{-(l^2+rho^2)(t+s)} is h_{t+s}.
  const JacobiParams J = preset("Hn_complex(2)").jacobi();
  const double t = 0.3, s = 0.45;
  const SpectralProfile prod = SpectralProfile::from_function(
      [&](double l) {
        return Complex(std::exp(-(l * l + 4.0) * t) * std::exp(-(l * l + 4.0) * s));
      },
      t + s);
  for (double r : {0.0, 1.0, 2.5})
    CHECK(std::abs(jacobi_inverse(prod, J, r).real() / heat_kernel(J, t + s, r) - 1.0) <= 1e-6);
  CHECK_THROWS_AS(HeatKernel(J, -1.0), NumericError);
}

TEST_CASE("two-sided envelope") {
  for (const char* name : kSpaces)
    for (double t : {0.1, 0.5, 1.0}) {
      const JacobiParams J = preset(name).jacobi();
      const RatioRange a = ady_ratio_scan(J, t, 12.0, 0.05);
      const RatioRange b = ady_ratio_scan(J, t, 12.0, 0.025);
      CHECK(a.min > 0.0);
      CHECK(a.spread() <= 50.0);
      CHECK(std::abs(b.spread() / a.spread() - 1.0) <= 0.05);
    }
  CHECK_THROWS_AS(log_ady_envelope({0.0, 0.3}, 0.5, 1.0), NumericError);
}

TEST_CASE("second envelope") {
  const RankOneSpace h3 = preset("H3");
  std::vector<double> g8, g16;
  for (double r = 0.0; r <= 8.0; r += 0.05) g8.push_back(r);
  for (double r = 0.0; r <= 16.0; r += 0.05) g16.push_back(r);
  const double a = anker_bound_check(h3, 0.5, g8), b = anker_bound_check(h3, 0.5, g16);
  CHECK(std::isfinite(a));
  CHECK(std::abs(b / a - 1.0) <= 5e-4);
  // Both envelopes majorize the same kernel, so their ratio stays bounded below.
  double lo = kInf;
  for (double r : g16)
    lo = std::min(lo, std::exp(log_anker_envelope(h3, 0.5, r) - log_ady_envelope(h3.jacobi(), 0.5, r)));
  CHECK(lo > 0.0);
}

TEST_CASE("heat solutions of K-type") {
  const RankOneSpace h3 = preset("H3");
  const double t = 0.5;
  for (double r : {0.0, 1.0, 3.0}) CHECK(heat_solution_delta(h3, {0, 0}, t, r) == doctest::Approx(heat_kernel(h3.jacobi(), t, r)).epsilon(1e-10));

  const JacobiParams shifted = h3.jacobi().shifted(2, 0);
  CHECK(shifted.rho() == 3.0);
  const RadialProfile h = HeatKernel(shifted, t).profile();
  for (double l = 0.0; l <= 5.0; l += 0.5)
    CHECK(std::abs(jacobi_transform(h, shifted, l) - std::exp(-(l * l + 9.0) * t)) <= 1e-6);

  // H^delta_t / ((1 + (1+r)/t)^{p} h_t) bounded on the scan grid; H^delta vanishes like
  // sinh^p r at the origin, so the scan starts at r = 1.
  double lo = kInf, hi = 0.0;
  for (double r = 1.0; r <= 12.0; r += 0.1) {
    const double v = std::exp(log_heat_solution_delta(h3, {2, 0}, t, r) - 2.0 * std::log1p((1.0 + r) / t) -
                              log_heat_kernel(h3.jacobi(), t, r));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo > 0.0);
  CHECK(hi / lo < 1e3);
}
