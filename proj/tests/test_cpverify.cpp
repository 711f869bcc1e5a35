#include <cmath>

#include "cpheat/cpverify.hpp"
#include "doctest.h"

using namespace cpheat;

namespace {

SpectralProfile poly_gaussian(std::vector<double> c, double b) {
  return SpectralProfile::from_function(
      [c, b](double l) {
        double acc = 0.0;
        for (std::size_t j = c.size(); j-- > 0;) acc = acc * l + c[j];
        return Complex(acc * std::exp(-b * l * l));
      },
      b);
}

SpectralProfile gaussian_power(double t, int power) {
  return SpectralProfile::from_function(
      [t, power](double l) { return Complex(std::pow(l, power) * std::exp(-t * l * l)); }, t,
      [power](double l) { return power == 0 ? 0.0 : power * std::log(l); });
}

}  // namespace

TEST_CASE("condition specs") {
  CHECK_NOTHROW(CPConditionSpec::space(2.0, 1.0, 0.0).validate());
  CHECK_THROWS_AS(CPConditionSpec::space(0.5, 1.0, 1.0).validate(), NumericError);
  CHECK_THROWS_AS(CPConditionSpec::spectral(2.0, 1.0, -1.0).validate(), NumericError);
  CHECK(CPConditionSpec::space(2.0, 1.0, 1.0).xi_exponent() == 0.0);
  CHECK(CPConditionSpec::space(1.0, 1.0, 1.0).xi_exponent() == 1.0);
}

TEST_CASE("windowed verdicts") {
  WindowPlan plan;
  CHECK(windowed_verdict([](double r) { return -r * r; }, plan).kind == VerdictKind::Convergent);
  CHECK(windowed_verdict([](double r) { return -std::log1p(r); }, plan).kind == VerdictKind::Divergent);
  CHECK(windowed_verdict([](double r) { return 1e-3 * r * r; }, plan).kind == VerdictKind::Divergent);
  const IntegralVerdict v = windowed_verdict([](double r) { return -2.0 * std::log1p(r); }, plan);
  CHECK(v.kind == VerdictKind::Convergent);
  CHECK(v.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("space conditions") {
  const RankOneSpace h3 = preset("H3");
  const double t = 0.5, p = 2.0;
  const RadialProfile h = HeatKernel(h3.jacobi(), t).profile();
  const double k = (h3.dim_X - 1) * p + 2.0 + 1.0 + 0.5;
  CHECK(evaluate_cp_space(h3, h, CPConditionSpec::space(p, 1.0 / (4.0 * t), k)).kind == VerdictKind::Convergent);
  CHECK(evaluate_cp_space(h3, h, CPConditionSpec::space(p, 1.01 / (4.0 * t), k)).kind == VerdictKind::Divergent);
  const IntegralVerdict z = evaluate_cp_space(h3, RadialProfile::zero(), CPConditionSpec::space(p, 1.0, k));
  CHECK(z.kind == VerdictKind::Convergent);
  CHECK(z.value == 0.0);
  CHECK_THROWS_AS(evaluate_cp_space(h3, h, CPConditionSpec::spectral(2.0, t, 3.0)), NumericError);
}

TEST_CASE("spectral conditions") {
  const RankOneSpace h3 = preset("H3");
  const double t = 0.5, q = 2.0, l = q + h3.V + 1.0;
  CHECK(evaluate_cp_spectral(h3, gaussian_power(t, 0), CPConditionSpec::spectral(q, t, l)).kind == VerdictKind::Convergent);
  CHECK(evaluate_cp_spectral(h3, gaussian_power(t, 2), CPConditionSpec::spectral(q, t, l)).kind == VerdictKind::Divergent);
  CHECK(evaluate_cp_spectral(h3, gaussian_power(t, 0), CPConditionSpec::spectral(q, t + 0.1, l)).kind ==
        VerdictKind::Divergent);
}

TEST_CASE("Gaussian-polynomial fit") {
  const double b = 0.5;
  const GaussianPolyFit g0 = fit_gaussian_poly(poly_gaussian({1.0}, b), b);
  CHECK(g0.gaussian_poly);
  CHECK(g0.degree == 0);
  CHECK(g0.coefficients.at(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g0.residual <= 1e-9);

  const GaussianPolyFit g2 = fit_gaussian_poly(poly_gaussian({1.0, 0.0, 1.0}, b), b);
  CHECK(g2.degree == 2);
  CHECK(std::abs(g2.coefficients.at(0) - 1.0) <= 1e-8);
  CHECK(std::abs(g2.coefficients.at(1)) <= 1e-8);
  CHECK(std::abs(g2.coefficients.at(2) - 1.0) <= 1e-8);

  const SpectralProfile slow = poly_gaussian({1.0}, 0.8 * b);
  CHECK_FALSE(fit_gaussian_poly(slow, b).gaussian_poly);
  FitOptions narrow, wide;
  narrow.lambda_max = 4.0 / std::sqrt(b);
  wide.lambda_max = 8.0 / std::sqrt(b);
  narrow.max_degree = wide.max_degree = 4;
  // The misfit of F e^{b lambda^2} = e^{0.2 b lambda^2} by the fitted polynomial grows with the range.
  auto weighted_misfit = [&](const FitOptions& opt) {
    const GaussianPolyFit f = fit_gaussian_poly(slow, b, opt);
    double worst = 0.0;
    for (double x = 0.0; x <= opt.lambda_max; x += 0.01 * opt.lambda_max) {
      double acc = 0.0;
      for (std::size_t j = f.coefficients.size(); j-- > 0;) acc = acc * x + f.coefficients[j];
      worst = std::max(worst, std::abs(std::exp(0.2 * b * x * x) - acc));
    }
    return worst;
  };
  CHECK(weighted_misfit(wide) > 100.0 * weighted_misfit(narrow));
  FitOptions short_range;
  short_range.lambda_max = 1.0;
  CHECK_THROWS_AS(fit_gaussian_poly(slow, b, short_range), NumericError);

  for (int deg = 0; deg <= 6; ++deg) {
    std::vector<double> c(deg + 1, 0.0);
    for (int j = 0; j <= deg; ++j) c[j] = 1.0 + 0.1 * j;
    const GaussianPolyFit f = fit_gaussian_poly(poly_gaussian(c, b), b);
    CHECK(f.degree == deg);
    CHECK(f.residual <= 1e-8);
  }
}

TEST_CASE("degree bound") {
  const int V = 2;
  const DegreeBound a = degree_bound(2, 2, 4, V + 3, V, 1, 1);
  CHECK(a.value == 1.0);
  CHECK(a.constant_forced);
  CHECK(degree_bound(1, 2, 4, V + 41, V, 1, 1).value == 5.0);
  CHECK(degree_bound(2, 2, 4, V + 1, V, 1, 1).value == 0.0);
  CHECK_FALSE(degree_bound(2, 2, 4, V + 4, V, 1, 1).constant_forced);
}

TEST_CASE("heat-kernel characterization") {
  const RankOneSpace h3 = preset("H3");
  const double t = 0.5, p = 2.0, q = 2.0, k = (h3.dim_X - 1) * p + 4.0, l = q + h3.V + 1.0;
  const RadialProfile h = HeatKernel(h3.jacobi(), t).profile();
  const auto c = characterize_heat(h3, h, t, p, q, k, l);
  CHECK(c.is_heat_kernel);
  CHECK(std::abs(c.scale - 1.0) <= 1e-5);
  CHECK(c.failed_stage.empty());

  const auto twice = characterize_heat(h3, h.scaled(2.0), t, p, q, k, l);
  CHECK_FALSE(twice.is_heat_kernel);
  CHECK(twice.failed_stage == "normalization");
  CharacterizeOptions ungated;
  ungated.normalization_gate = false;
  const auto scaled = characterize_heat(h3, h.scaled(0.3), t, p, q, k, l, ungated);
  CHECK(scaled.is_heat_kernel);
  CHECK(std::abs(scaled.scale - 0.3) <= 0.3e-5);

  const auto later = characterize_heat(h3, HeatKernel(h3.jacobi(), 2.0 * t).profile(), t, p, q, k, l);
  CHECK(later.failed_stage == "space-verdict");
  CHECK_THROWS_AS(characterize_heat(h3, h, t, p, q, 3.0, l), NumericError);
  CHECK_THROWS_AS(characterize_heat(h3, h, t, p, q, k, h3.V + 1.0), NumericError);
}

TEST_CASE("K-type filter") {
  const RankOneSpace h3 = preset("H3");
  const double t = 0.5;
  std::vector<std::pair<KType, RadialProfile>> comps;
  for (const KType& d : ktypes_below(h3, 5.0)) comps.emplace_back(d, heat_solution_profile(h3, d, t));
  const KTypeFilter a = ktype_cutoff_filter(h3, comps, 2.0, 3.0, t);
  CHECK(a.survivors == std::vector<KType>{{0, 0}});
  CHECK(a.consistent);
  const KTypeFilter b = ktype_cutoff_filter(h3, comps, 2.0, 7.0, t);
  CHECK(b.survivors == std::vector<KType>{{0, 0}, {2, 0}});
  for (const auto& [d, v] : b.rejected) CHECK(v.kind == VerdictKind::Divergent);
  CHECK(ktype_cutoff_filter(h3, {}, 2.0, 7.0, t).survivors.empty());
}
