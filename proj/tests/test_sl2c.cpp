#include <cmath>

#include "cpheat/sl2c.hpp"
#include "doctest.h"

using namespace cpheat;

TEST_CASE("bump") {
  BumpSpec psi;
  CHECK_NOTHROW(psi.validate());
  CHECK(psi(0.0) == 1.0);
  CHECK(psi(0.2) == 0.0);
  CHECK(psi(-0.25) == 0.0);
  CHECK(psi.ell() == doctest::Approx(0.2));
  CHECK(psi.log_value(0.1) == doctest::Approx(std::log(psi(0.1))).epsilon(1e-14));
  const double h = 1e-4;
  for (int k = 0; k < 4; ++k)
    for (double x : {-0.15, -0.05, 0.0, 0.08, 0.17}) {
      const double fd = (-psi.derivative(k, x + 2 * h) + 8.0 * psi.derivative(k, x + h) - 8.0 * psi.derivative(k, x - h) +
                         psi.derivative(k, x - 2 * h)) /
                        (12.0 * h);
      CHECK(std::abs(psi.derivative(k + 1, x) - fd) <= 1e-6 * (1.0 + std::abs(fd)));
    }
  BumpSpec bad;
  bad.zeta = 0.25;
  CHECK_THROWS_AS(bad.validate(), NumericError);
  CounterexampleSpec odd;
  odd.P = {1.0, 0.5};
  CHECK_THROWS_AS(odd.validate(), NumericError);
}

TEST_CASE("psi_1 against derivatives and its transform") {
  CounterexampleSpec spec;
  const Counterexample one(spec);
  const double h = 1e-4;
  for (double x : {-0.15, -0.03, 0.05, 0.12}) {
    const BumpSpec& psi = spec.psi;
    const double fd = (-psi(x + 2 * h) + 8.0 * psi(x + h) - 8.0 * psi(x - h) + psi(x - 2 * h)) / (12.0 * h);
    CHECK(std::abs(one.psi1(x) - fd) <= 1e-6);
  }

  spec.P = {1.0, 0.0, 0.5};
  const Counterexample ce(spec);
  QuadratureSpec q;
  q.abs_tol = 1e-15;
  q.rel_tol = 1e-12;
  for (double mu : {0.5, 3.0, 9.0}) {
    const double s = integrate([&](double x) { return ce.psi1(x) * std::sin(mu * x); }, -0.2, 0.2, q).value;
    CHECK(std::abs(s + mu * spec.P_at(mu) * ce.psi_tilde(mu)) <= 1e-9);
  }
}

TEST_CASE("two construction routes") {
  CounterexampleSpec spec;
  const Counterexample ce(spec);
  CHECK(std::abs(ce.g_spectral(1.0) / ce.g_convolution(1.0) - 1.0) <= 1e-7);
  CHECK(std::abs(construct_g_spectral(spec, 1.0) - construct_g_convolution(spec, 1.0)) <=
        1e-7 * std::abs(construct_g_spectral(spec, 1.0)));
  CHECK(two_route_discrepancy(spec) <= 1e-7);
  spec.P = {0.3, 0.0, -1.0, 0.0, 0.2};
  spec.psi.zeta = 0.13;
  CHECK(two_route_discrepancy(spec) <= 1e-7);
  CHECK(std::abs(ce.g(0.01) - ce.g(0.001)) <= 1e-3 * std::abs(ce.g(0.0)));
  CHECK_THROWS_AS(ce.g_convolution(0.0), NumericError);
}

TEST_CASE("ghat and g are even") {
  CounterexampleSpec spec;
  spec.P = {1.0, 0.0, 2.0};
  const Counterexample ce(spec);
  for (double l : {0.3, 4.0, 11.0}) CHECK(ce.g_hat(l) == ce.g_hat(-l));
  for (double t : {0.02, 0.7, 2.0}) CHECK(std::abs(ce.g(t) - ce.g(-t)) <= 1e-10 * std::abs(ce.g(t)));
}

TEST_CASE("pointwise bounds") {
  CounterexampleSpec spec;
  spec.t_grid = CounterexampleSpec::uniform_grid();
  const SharpBoundFit sb = verify_sharp_bounds(spec, spec.t_grid);
  CHECK(sb.stable);
  CHECK(std::abs(sb.ratio_max_doubled / sb.ratio_max - 1.0) <= 0.05);
  const SpectralBoundFit ft = verify_sharpft(spec);
  CHECK(ft.N <= spec.degree() + 2);
  CHECK(std::isfinite(ft.ratio_max));
  const AltBounds alt = verify_alt_bounds(spec, spec.t_grid);
  CHECK(alt.space_bounded);
  CHECK(alt.spectral_bounded);
}

TEST_CASE("Cowling-Price integrals of g") {
  CounterexampleSpec spec;
  for (const auto& r : cp_integral_scenarios(spec)) {
    INFO(r.scenario);
    CHECK(to_string(r.verdict.kind) == r.expected);
  }
}

TEST_CASE("Gram rank") {
  const GramCheck g = gram_rank(default_gram_family());
  CHECK(g.rank == 4);
  CHECK(g.singular_values.back() / g.singular_values.front() > 1e-4);
  // Three polynomial degrees at one zeta and a fourth member differing only in zeta
  // are numerically dependent.
  auto family = default_gram_family();
  family.back().P = {1.0};
  CHECK(gram_rank(family).rank == 3);
}
