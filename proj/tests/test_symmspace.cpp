#include <cmath>

#include "cpheat/jacobi.hpp"
#include "cpheat/symmspace.hpp"
#include "doctest.h"

using namespace cpheat;

TEST_CASE("presets") {
  const RankOneSpace h3 = preset("Hn_real(3)");
  CHECK(h3.alpha == 0.5);
  CHECK(h3.beta == -0.5);
  CHECK(h3.rho0 == 1.0);
  CHECK(h3.V == 2);
  CHECK(preset("H3").name == h3.name);
  CHECK(preset("SL2C").name == h3.name);
  const RankOneSpace c2 = preset("Hn_complex(2)");
  CHECK(c2.alpha == 1.0);
  CHECK(c2.beta == 0.0);
  CHECK(c2.rho0 == c2.alpha + c2.beta + 1.0);
  CHECK(c2.dim_X == 4);
  CHECK_THROWS_AS(preset("unknown"), NumericError);
  CHECK_THROWS_AS(preset("Hn_real(1)"), NumericError);
  CHECK(make_space("X", 4, 3).alpha == 3.0);
  CHECK_THROWS_AS(make_space("bad", 0, 0).validate(), NumericError);

  for (const auto& s : catalog()) {
    CHECK(s.rho0 == s.alpha + s.beta + 1.0);
    CHECK(s.V == s.m_gamma + s.m_2gamma);
    CHECK(s.dim_X == s.m_gamma + s.m_2gamma + 1);
    // beta-flip identity before the entry is trusted
    const JacobiParams J = s.jacobi();
    const Complex a = jacobi_phi(J, 1.3, 0.8);
    const Complex b = std::pow(std::cosh(0.8), -2.0 * J.beta) * jacobi_phi({J.alpha, -J.beta}, 1.3, 0.8);
    CHECK(std::abs(a - b) <= 1e-10);
  }
  CHECK(std::string(preset_catalog_text()).find("H3_real") != std::string::npos);
}

TEST_CASE("K-types") {
  for (const auto& s : catalog()) CHECK(ktypes_below(s, 1.0) == std::vector<KType>{{0, 0}});
  CHECK(ktypes_below(preset("Hn_real(3)"), 3.0) == std::vector<KType>{{0, 0}, {2, 0}});
  const std::vector<KType> want{{0, 0}, {1, -1}, {1, 1}, {2, -2}, {2, 0}, {2, 2}};
  CHECK(ktypes_below(preset("Hn_complex(2)"), 2.5) == want);
  CHECK((tilde_delta({2, -2}) == KType{2, 2}));
  CHECK_FALSE(KType{2, 1}.valid());
}

TEST_CASE("Kostant polynomial") {
  const RankOneSpace h3 = preset("H3");
  for (double l : {0.0, 3.0}) CHECK(kostant_q(h3, {0, 0}, l) == Complex(1.0));
  // ((1+i)/2) ((2+i)/2)
  CHECK(std::abs(kostant_q(h3, {2, 0}, 1.0) - Complex(0.25, 0.75)) <= 1e-15);
  const RankOneSpace c2 = preset("Hn_complex(2)");
  for (KType d : {KType{2, 0}, KType{4, 0}, KType{2, 2}}) {
    const double l = 1e4, h = 10.0;
    const double slope = (std::log(std::abs(kostant_q(c2, d, l + h))) - std::log(std::abs(kostant_q(c2, d, l)))) /
                         (std::log(l + h) - std::log(l));
    CHECK(std::abs(slope - d.p) <= 1e-3);
  }
  CHECK_THROWS_AS(kostant_q(h3, {2, 1}, 1.0), NumericError);
}

TEST_CASE("generalized spherical functions") {
  const RankOneSpace h3 = preset("H3");
  for (double r : {0.3, 2.0}) CHECK(eisenstein_phi1(h3, {0, 0}, 1.7, r) == jacobi_phi(h3.jacobi(), 1.7, r));
  // ((1+3i)/4) (15/4)^{-1} sinh^2(1) phi_1^{(5/2,-1/2)}(1), mpmath.
  const Complex want(0.0460341299136050282356872655286, 0.138102389740815084707061796586);
  CHECK(std::abs(eisenstein_phi1(h3, {2, 0}, 1.0, 1.0) - want) <= 1e-12);

  const RankOneSpace c2 = preset("Hn_complex(2)");
  for (KType d : ktypes_below(c2, 3.0)) {
    const KType td = tilde_delta(d);
    for (double lam : {0.5, 2.0})
      for (double r = 0.1; r <= 6.0; r += 0.9) {
        auto f = [&](double x) { return eisenstein_phi1(c2, td, lam, x); };
        const Complex res = jacobi_operator_fd(c2.jacobi(), td.p, td.q, f, r, 2.5e-4) +
                            (lam * lam + c2.rho0 * c2.rho0) * f(r);
        CHECK(std::abs(res) <= 1e-5 * (1.0 + lam * lam) * std::max(1.0, std::abs(f(r))));
      }
  }

  // Poisson-integral oracle on H3: the degree-2 boundary integral is a lambda-dependent multiple
  // of the (2,0) function.
  for (double lam : {0.7, 1.0}) {
    const Complex c = h3_poisson_integral(2, lam, 1.0) / eisenstein_phi1(h3, {2, 0}, lam, 1.0);
    for (double r : {0.3, 2.0, 4.0})
      CHECK(std::abs(h3_poisson_integral(2, lam, r) - c * eisenstein_phi1(h3, {2, 0}, lam, r)) <=
            1e-9 * std::abs(h3_poisson_integral(2, lam, r)));
  }
}

TEST_CASE("Harish-Chandra Xi function") {
  const RankOneSpace h3 = preset("H3");
  for (const auto& s : catalog()) CHECK(xi_function(s, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(xi_function(h3, 2.0) - 0.551441129543566415516702964326) <= 1e-13);
  for (const char* name : {"H3", "Hn_real(4)", "Hn_complex(2)"}) {
    const RankOneSpace s = preset(name);
    double lo = kInf, hi = 0.0;
    for (double r = 0.0; r <= 25.0; r += 0.25) {
      const double v = std::exp(log_xi_function(s, r) + s.rho0 * r) / (1.0 + r);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      CHECK(log_xi_function(s, r) >= -s.rho0 * r - 1e-12);
    }
    CHECK(lo > 0.0);
    CHECK(hi / lo < 10.0);
  }
}
