#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpheat/euclidean.hpp"
#include "cpheat/heat.hpp"
#include "cpheat/numkernel.hpp"
#include "cpheat/profile.hpp"
#include "cpheat/symmspace.hpp"

namespace cpheat {

enum class Side { Space, Spectral };

// One Cowling-Price integral condition.
//   Space:    int |f Xi^w e^{a r^2}|^p (1+r)^{-k} dx
//   Spectral: int |F|^q e^{q b lambda^2} (1+lambda)^{-l} mu(lambda) dlambda
// With heat_time set, the space integrand becomes |f / h_t|^p Xi^2 (1+r)^{-k}.
struct CPConditionSpec {
  Side side = Side::Space;
  double p_or_q = 2.0;
  double a_or_b = 1.0;
  double poly_power = 1.0;
  std::optional<double> weight_exponent;
  std::optional<double> heat_time;

  static CPConditionSpec space(double p, double a, double k);
  static CPConditionSpec spectral(double q, double b, double l);
  static CPConditionSpec heat_ratio(double p, double t, double k);

  double xi_exponent() const { return weight_exponent ? *weight_exponent : 2.0 / p_or_q - 1.0; }
  // Throws InvalidArgument.
  void validate() const;
};

// Where dyadic windows start, from which radius a verdict may be returned, and
// the largest radius examined.
struct WindowPlan {
  double start = 0.25;
  double decide_from = 64.0;
  double cap = 0x1p40;
  int min_windows = 8;
  VerdictTolerance tol;
};

// Verdict on int_0^inf exp(log_integrand(x)) dx. Each window is integrated after
// subtracting its maximum log value, so integrands far outside the double range are fine.
IntegralVerdict windowed_verdict(const std::function<double(double)>& log_integrand, const WindowPlan& plan);

IntegralVerdict evaluate_cp_space(const RankOneSpace& space, const RadialProfile& f, const CPConditionSpec& cond);
IntegralVerdict evaluate_cp_spectral(const RankOneSpace& space, const SpectralProfile& F,
                                     const CPConditionSpec& cond);

// R^n versions: int |f_m(r) S(omega)|^p e^{p a r^2} (1+r)^{-k} dx for one harmonic term,
// and int |F|^q e^{q b lambda^2} (1+lambda)^{-l} dlambda.
IntegralVerdict evaluate_cp_space_euclidean(const HarmonicTerm& term, const CPConditionSpec& cond);
IntegralVerdict evaluate_cp_spectral_euclidean(const SpectralProfile& F, const CPConditionSpec& cond);

// lambda -> J(f)(lambda) tabulated on [0, Lambda], Lambda being where |J(f)| first drops below
// 1e-10 of int |f| Xi Delta (at least min_lambda_max, at most 40). Gaussian rate 1/(4 rate_f).
SpectralProfile spherical_transform_profile(const JacobiParams& p, const RadialProfile& f,
                                            double min_lambda_max = 0.0);
// lambda -> i^m F_m(lambda) for f = f_m(r) S_m, which is real; same range rule as above.
SpectralProfile euclidean_Fm_profile(int n, int m, const RadialProfile& f_m, double min_lambda_max = 0.0);

struct GaussianPolyFit {
  double b = 0.0;
  std::vector<double> coefficients;  // power basis in lambda
  double residual = 0.0;             // max |F - P e^{-b lambda^2}| / max |F| on the sample grid
  int degree = 0;
  double lambda_max = 0.0;
  bool gaussian_poly = false;        // false: no elbow before max_degree (NotGaussianPoly)
};

struct FitOptions {
  double lambda_max = 0.0;  // 0: reliable_max of F, or 6/sqrt(b) when unbounded
  int samples = 241;
  int max_degree = 12;
  double residual_floor = 1e-10;
};

// Least-squares fit of F(lambda) e^{b lambda^2} by a polynomial; degree chosen at the residual
// elbow. Throws InvalidArgument when lambda_max < 4/sqrt(b), IllConditioned when the degree
// the elbow asks for has a design condition number above 1e12.
GaussianPolyFit fit_gaussian_poly(const SpectralProfile& F, double b, const FitOptions& opt = {});

struct DegreeBound {
  double value = 0.0;
  bool constant_forced = false;
};

// min{2 card / p' + k/p + 1, (l - V - n)/q}; the first term is k + 1 when p = 1.
DegreeBound degree_bound(double p, double q, double k, double l, int V, int n, int card_sigma0);

// One stage of a staged check.
struct StageRecord {
  std::string stage;
  std::string verdict;
  double value = 0.0;
  double error = 0.0;
  long work = 0;  // integrand evaluations
};

struct HeatCharacterization {
  bool is_heat_kernel = false;
  double scale = 0.0;
  std::string failed_stage;  // empty when is_heat_kernel
  std::vector<StageRecord> stages;
};

struct CharacterizeOptions {
  bool normalization_gate = true;
  // Space condition with the heat-ratio weight |f/h_t|^p Xi^2 (1+r)^{-k}; admits k <= p + 1.
  bool heat_ratio_weight = false;
};

// Stages: space-verdict, spectral-verdict, spectral-fit, constant, normalization.
// Throws HypothesisViolated when (p, q, k, l) lie outside the admissible ranges.
HeatCharacterization characterize_heat(const RankOneSpace& space, const RadialProfile& f, double t, double p,
                                       double q, double k, double l, const CharacterizeOptions& opt = {});

// The same pipeline on R^n against p_t, one harmonic term at a time. A term of degree
// m > 0 that passes is reported as a failure at "harmonic-degree".
HeatCharacterization characterize_gaussian(const SolidFunction& f, double t, double p, double q, double k,
                                           double l);

struct KTypeFilter {
  std::vector<KType> survivors;
  std::vector<std::pair<KType, IntegralVerdict>> rejected;
  bool consistent = true;  // every rejected component was Divergent
};

// Survivors are the components with p_delta < (k-1)/p. Every other component is checked
// under the heat-ratio space condition at time t and must be Divergent.
KTypeFilter ktype_cutoff_filter(const RankOneSpace& space,
                                const std::vector<std::pair<KType, RadialProfile>>& components, double p,
                                double k, double t);

}  // namespace cpheat
