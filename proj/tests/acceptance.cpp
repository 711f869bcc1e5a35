// Acceptance checks. Prints one PASS/FAIL line per criterion and exits non-zero if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cpheat/cpverify.hpp"
#include "cpheat/euclidean.hpp"
#include "cpheat/heat.hpp"
#include "cpheat/jacobi.hpp"
#include "cpheat/scenarios.hpp"
#include "cpheat/symmspace.hpp"

#ifndef CPHEAT_CLI_PATH
#error "CPHEAT_CLI_PATH must name the cpheat executable"
#endif

using namespace cpheat;

namespace {

const char* kSpaces[] = {"H3", "Hn_real(4)", "Hn_complex(2)"};
const double kTimes[] = {0.1, 0.5, 1.0};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome spectral_fidelity() {
  double worst = 0.0;
  for (const char* name : kSpaces)
    for (double t : kTimes) {
      const JacobiParams J = preset(name).jacobi();
      const RadialProfile h = HeatKernel(J, t).profile();
      for (int i = 0; i <= 100; ++i) {
        const double l = 0.05 * i;
        worst = std::max(worst, std::abs(jacobi_transform(h, J, l) - std::exp(-(l * l + J.rho() * J.rho()) * t)));
      }
    }
  return {worst <= 1e-6, fmt("sup error %.3g (tol 1e-6)", worst)};
}

Outcome h3_closed_form() {
  const JacobiParams J{0.5, -0.5};
  double worst = 0.0;
  for (double t : {0.25, 1.0})
    for (int i = 0; i <= 120; ++i) {
      const double r = 0.05 * i;
      worst = std::max(worst, std::abs(heat_kernel(J, t, r) / heat_kernel_h3(t, r) - 1.0));
    }
  return {worst <= 1e-7, fmt("max relative error %.3g (tol 1e-7)", worst)};
}

Outcome ady_estimate() {
  double spread = 0.0, drift = 0.0;
  for (const char* name : kSpaces)
    for (double t : kTimes) {
      const JacobiParams J = preset(name).jacobi();
      const RatioRange a = ady_ratio_scan(J, t, 12.0, 0.05);
      const RatioRange b = ady_ratio_scan(J, t, 12.0, 0.025);
      spread = std::max(spread, a.spread());
      drift = std::max({drift, std::abs(b.min / a.min - 1.0), std::abs(b.max / a.max - 1.0)});
    }
  return {spread <= 50.0 && drift <= 0.05,
          fmt("max C/c %.4g (tol 50), ", spread) + fmt("refinement drift %.3g (tol 0.05)", drift)};
}

Outcome ode_residuals() {
  double worst = 0.0, flip = 0.0;
  const std::pair<int, int> orders[] = {{0, 0}, {2, 0}, {2, 2}, {4, 0}};
  for (const char* name : kSpaces) {
    const JacobiParams J = preset(name).jacobi();
    for (double lam : {0.5, 1.0, 3.0})
      for (const auto& [p, q] : orders)
        for (int i = 0; i <= 9900; ++i) {
          const double r = 0.1 + 1e-3 * i;
          auto f = [&, p = p, q = q](double x) { return jacobi_assoc_phi(J, p, q, lam, x); };
          const Complex res = jacobi_operator_fd(J, p, q, f, r, 2.5e-4) + (lam * lam + J.rho() * J.rho()) * f(r);
          worst = std::max(worst, std::abs(res) / (1.0 + lam * lam));
        }
    for (double lam : {0.0, 1.0, 4.0})
      for (double r : {0.0, 0.5, 2.0, 6.0}) {
        const Complex a = jacobi_phi(J, lam, r);
        const Complex b = std::pow(std::cosh(r), -2.0 * J.beta) * jacobi_phi({J.alpha, -J.beta}, lam, r);
        flip = std::max(flip, std::abs(a - b) / std::abs(a));
      }
  }
  return {worst <= 1e-5 && flip <= 1e-9,
          fmt("max residual/(1+lambda^2) %.3g (tol 1e-5), ", worst) + fmt("beta-flip %.3g (tol 1e-9)", flip)};
}

Outcome dimension_shift() {
  double worst = 0.0;
  for (int n : {2, 3})
    for (int m = 0; m <= 4; ++m) {
      const RadialProfile fm = RadialProfile::linear_combination(
          {{1.0, gauss_heat_profile(n, 0.4, m)}, {0.5, gauss_heat_profile(n, 1.0, m)}});
      const auto S = SphericalHarmonicSpec::standard(n, m, n == 2 ? m : 0);
      const SolidFunction f{{HarmonicTerm{fm, S}}};
      auto shift = [&](double l) {
        const DimensionShift d = dimension_shift_Fm(fm, n, m, l);
        return d.constant * d.value;
      };
      const Complex c = fourier_coeff_Fm(f, S, 1.0) / shift(1.0);
      double sup = 0.0, err = 0.0;
      for (double l = 0.25; l <= 4.0; l += 0.25) {
        const Complex a = fourier_coeff_Fm(f, S, l);
        sup = std::max(sup, std::abs(a));
        err = std::max(err, std::abs(a - c * shift(l)));
      }
      worst = std::max(worst, err / sup);
    }
  return {worst <= 1e-6, fmt("max relative route difference %.3g (tol 1e-6)", worst)};
}

int count_rows(const std::vector<ScenarioRow>& rows, const std::function<bool(const ScenarioRow&)>& pred) {
  int n = 0;
  for (const auto& r : rows)
    if (pred(r)) ++n;
  return n;
}

Outcome trichotomy() {
  const auto rows = run_scenario("thm3.3-trichotomy");
  const int divergent = count_rows(rows, [](const ScenarioRow& r) {
    return r.stage.rfind("s<t/", 0) == 0 && r.verdict == "Divergent";
  });
  const int gaussian = count_rows(rows, [](const ScenarioRow& r) { return r.stage == "s=t/m=0" && r.matched; });
  const int rejected = count_rows(rows, [](const ScenarioRow& r) {
    return (r.stage == "s=t/m=1" || r.stage == "s=t/m=2") && r.verdict.rfind("NotHeatKernel", 0) == 0;
  });
  const int passing = count_rows(rows, [](const ScenarioRow& r) {
    return r.stage.rfind("s>t/", 0) == 0 && r.verdict == "Convergent";
  });
  const bool ok = all_matched(rows) && divergent == 3 && gaussian == 1 && rejected == 2 && passing >= 6;
  return {ok, "s<t divergent " + std::to_string(divergent) + "/3, s=t degree-0 Gaussian " + std::to_string(gaussian) +
                  ", m>0 rejected " + std::to_string(rejected) + "/2, s>t verdicts passed " + std::to_string(passing) +
                  "/6"};
}

Outcome characterization() {
  const auto heat = run_scenario("thm4.3-heat");
  const auto cont = run_scenario("thm4.3-contamination");
  const int named = count_rows(cont, [](const ScenarioRow& r) {
    return r.expected.rfind("NotHeatKernel(", 0) == 0 && r.matched;
  });
  const bool ok = all_matched(heat) && all_matched(cont) && named == 6;
  return {ok, std::string("h_t ") + (all_matched(heat) ? "IsHeatKernel(1+-1e-5)" : "not recognized") +
                  ", contaminations rejected at the named stage " + std::to_string(named) + "/6"};
}

Outcome sl2c_example() {
  const auto rows = run_scenario("sl2c-example");
  const int bad = count_rows(rows, [](const ScenarioRow& r) { return !r.matched; });
  std::string route;
  for (const auto& r : rows)
    if (r.stage == "two-route") route = fmt("two-route %.3g (tol 1e-7)", r.value);
  return {bad == 0, route + ", " + std::to_string(rows.size() - bad) + "/" + std::to_string(rows.size()) + " stages matched"};
}

Outcome ktype_filter() {
  const auto rows = run_scenario("thm5.3-ktype", {"H3", 0.5});
  const int bad = count_rows(rows, [](const ScenarioRow& r) { return !r.matched; });
  std::string shape;
  for (const auto& r : rows)
    if (r.stage == "(2,0)-shape") shape = fmt("(2,0) shape error %.3g (tol 1e-6)", r.value);
  return {bad == 0 && !shape.empty(), shape + ", " + std::to_string(rows.size() - bad) + "/" +
                                          std::to_string(rows.size()) + " stages matched"};
}

std::string capture(const std::string& args, int& status) {
  const std::string cmd = std::string(CPHEAT_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int st = pclose(p);
  status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

Outcome determinism() {
  int s1 = -1, s2 = -1;
  const std::string a = capture("selftest --seed 7", s1);
  const std::string b = capture("selftest --seed 7", s2);
  const bool same = !a.empty() && a == b;
  return {same && s1 == 0 && s2 == 0, std::string(same ? "byte-identical" : "outputs differ") + ", exit codes " +
                                          std::to_string(s1) + " " + std::to_string(s2) + ", " +
                                          std::to_string(a.size()) + " bytes"};
}

struct Criterion {
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"Jacobi/heat spectral fidelity", 120.0, spectral_fidelity},
      {"H3 closed-form agreement", 30.0, h3_closed_form},
      {"two-sided heat kernel envelope", 120.0, ady_estimate},
      {"ODE residuals and beta-flip", 60.0, ode_residuals},
      {"dimension-shift routes", 120.0, dimension_shift},
      {"Euclidean trichotomy scenarios", 180.0, trichotomy},
      {"heat-kernel characterization", 180.0, characterization},
      {"SL(2,C) example end to end", 180.0, sl2c_example},
      {"K-type filter", 120.0, ktype_filter},
      {"selftest determinism", 900.0, determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && secs <= c.budget_s;
    if (!pass) ++failed;
    std::printf("criterion %2zu %-34s %s  %s; %.1f s (budget %.0f s)\n", i + 1, c.name, pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
