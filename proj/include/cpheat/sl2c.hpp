#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cpheat/numkernel.hpp"
#include "cpheat/profile.hpp"

namespace cpheat {

// psi(x) = exp(s/zeta^2 - s/(zeta^2 - x^2)) on (-zeta, zeta), 0 outside; psi(0) = 1.
struct BumpSpec {
  double zeta = 0.2;
  int smoothness = 1;       // s
  double grid_step = 1e-3;  // spacing of the x grid used for support checks

  double ell() const { return 1.0 - 4.0 * zeta; }
  // zeta in (0, 1/4), smoothness >= 1, grid_step in (0, zeta); throws InvalidArgument.
  void validate() const;

  double operator()(double x) const;
  double log_value(double x) const;
  // k-th derivative, k <= 12.
  double derivative(int k, double x) const;
};

struct CounterexampleSpec {
  BumpSpec psi;
  std::vector<double> P{1.0};  // power basis; odd entries must vanish
  std::vector<double> t_grid;

  void validate() const;
  int degree() const;
  double P_at(double x) const;

  // t = step, 2 step, ..., t_max
  static std::vector<double> uniform_grid(double t_max = 5.0, double step = 0.05);
};

// The bi-invariant function g on SL(2,C)/SU(2) with spherical transform
// ghat(lambda) = psi~(2 lambda) e^{-lambda^2/4} P(2 lambda), in the coordinate t of a_t
// (sigma(a_t) = 2|t|, which is r = 2t for the H3 Jacobi parameters).
class Counterexample {
 public:
  explicit Counterexample(CounterexampleSpec spec);

  const CounterexampleSpec& spec() const { return spec_; }

  // psi~(mu) = int psi(x) e^{-i mu x} dx, tabulated for |mu| <= mu_max.
  double psi_tilde(double mu) const;
  double mu_max() const { return mu_max_; }
  double g_hat(double lambda) const;

  // (2 pi sinh 2t)^{-1} int_0^inf ghat(lambda) sin(2 lambda t) lambda dlambda
  double g_spectral(double t) const;
  // -(psi_1 * h)(t) / (4 sqrt(pi) sinh 2t) with h(u) = e^{-4u^2}
  double g_convolution(double t) const;
  // log|g(a_t)|: convolution route in log form for |t| >= 0.05, spectral route below.
  double log_abs_g(double t) const;
  double g(double t) const;

  // psi_1 = sum_k c_{2k} (-1)^k psi^{(2k+1)}, the real odd function with transform i mu P(mu) psi~(mu).
  double psi1(double x) const;

  // g as a profile in r = 2t, Gaussian rate 1.
  RadialProfile radial_profile() const;
  // ghat, Gaussian rate 1/4, trusted for lambda <= mu_max / 2.
  SpectralProfile spectral_profile() const;

 private:
  CounterexampleSpec spec_;
  double mu_max_ = 40.0;
  std::shared_ptr<const PanelInterpolant<double>> psi_tilde_;
};

double construct_g_spectral(const CounterexampleSpec& spec, double t);
double construct_g_convolution(const CounterexampleSpec& spec, double t);

// max |g_spectral - g_convolution| / max |g| over t = t_lo, t_lo + step, ..., t_hi.
double two_route_discrepancy(const CounterexampleSpec& spec, double t_lo = 0.05, double t_hi = 5.0,
                             double step = 0.05);

// Bounded means the maximum of the log series over the upper half of the grid does not
// exceed its maximum over the lower half.
bool log_series_bounded(const std::vector<double>& log_values);

struct SharpBoundFit {
  int M = 0;
  double ratio_max = 0.0;          // max of |g| e^{sigma^2} Xi^{-ell} (1+sigma)^{-M}
  double ratio_max_doubled = 0.0;  // the same on the grid extended to twice t_max (capped at 10)
  bool stable = false;             // same M and ratio_max within 5% after doubling
};

// Throws HypothesisViolated when ell <= 0, UnboundedRatio if no M <= 20 works.
SharpBoundFit verify_sharp_bounds(const CounterexampleSpec& spec, const std::vector<double>& t_grid);

struct SpectralBoundFit {
  int N = 0;
  double ratio_max = 0.0;  // max of |ghat| e^{lambda^2/4} (1+lambda)^{-N}
};
SpectralBoundFit verify_sharpft(const CounterexampleSpec& spec, double lambda_max = 20.0, double step = 0.05);

struct AltBounds {
  double space_ratio_max = 0.0;     // |g| e^{sigma^2/2} / Xi
  double spectral_ratio_max = 0.0;  // |ghat| e^{lambda^2/5}
  bool space_bounded = false;
  bool spectral_bounded = false;
};
AltBounds verify_alt_bounds(const CounterexampleSpec& spec, const std::vector<double>& t_grid,
                            double lambda_max = 20.0, double step = 0.05);

struct CPScenarioResult {
  std::string scenario;
  IntegralVerdict verdict;
  std::string expected;
};
std::vector<CPScenarioResult> cp_integral_scenarios(const CounterexampleSpec& spec);

struct GramCheck {
  std::vector<double> singular_values;  // descending
  int rank = 0;                          // singular values above 1e-8 of the largest
};
// L^2 Gram matrix of the normalized g's over t in [0, t_max] with weight sinh^2(2t).
GramCheck gram_rank(const std::vector<CounterexampleSpec>& family, double t_max = 3.0, double step = 0.01);

// P = 1, lambda^2, lambda^4 at zeta = 0.2, and lambda^6 at zeta = 0.1.
std::vector<CounterexampleSpec> default_gram_family();

}  // namespace cpheat
