#include "cpheat/heat.hpp"

#include <algorithm>
#include <cmath>

#include "cpheat/specfun.hpp"

namespace cpheat {

namespace {

constexpr double kLogPi = 1.1447298858494002;

double log_sinh(double r) {
  if (r == 0.0) return kNegInf;
  return r < 1.0 ? std::log(std::sinh(r)) : r + std::log1p(-std::exp(-2.0 * r)) - std::log(2.0);
}

double log_delta_prefactor(KType d, double r) {
  double acc = 0.0;
  if (d.p > 0) acc += d.p * log_sinh(r);
  if (d.q > 0) acc += d.q * (log_two_cosh(r) - std::log(2.0));
  return acc;
}

bool half_integer(double x) { return std::abs(2.0 * x - std::round(2.0 * x)) < 1e-12; }

// Radius beyond which the contour route is used.
double contour_radius(double t) { return t >= 0.05 ? kPfaffRadius : 0.45; }

double log_heat_real_axis(const JacobiParams& p, double t, double r) {
  auto integrand = [&](double lam) {
    const double phi = r == 0.0 ? 1.0 : jacobi_phi(p, lam, r).real();
    return std::exp(-lam * lam * t) * phi * plancherel_density(p, lam);
  };
  const auto res = semiinfinite_gaussian_quad(integrand, 0.0, t, heat_quadrature());
  if (!(res.value > 0.0)) fail(ErrorCode::NonFinite, "heat kernel inversion lost positivity");
  return std::log(res.value) - std::log(2.0 * M_PI) - p.rho() * p.rho() * t;
}

double log_heat_contour(const JacobiParams& p, double t, double r) {
  const double rho = p.rho();
  const double L = log_two_cosh(r);
  const double v = L / (2.0 * t);
  // e^{-(lambda^2+rho^2)t} (2 cosh r)^{i lambda - rho} = e^{-u^2 t + base} on Im lambda = v
  const double base = -L * L / (4.0 * t) - rho * rho * t - rho * L;
  const double ref = log_inv_c(p, Complex(0.0, -v)).real();
  auto integrand = [&](double u) {
    const Complex lam(u, v);
    const ScaledComplex Phi = harish_chandra_Phi(p, lam, r);
    const Complex F = Phi.mantissa * std::exp(Complex(0.0, -u * L));
    return (F * std::exp(log_inv_c(p, -lam) - ref - u * u * t)).real();
  };
  const auto res = semiinfinite_gaussian_quad(integrand, 0.0, t, heat_quadrature());
  if (!(res.value > 0.0)) fail(ErrorCode::NonFinite, "heat kernel contour integral lost positivity");
  return std::log(res.value) - kLogPi + base + ref;
}

}  // namespace

void HeatSpec::validate() const {
  params.validate();
  if (!(t > 0.0) || !(t0 > 0.0) || t > t0) fail(ErrorCode::InvalidArgument, "heat time must lie in (0, t0]");
  if (!(r_max >= 10.0)) fail(ErrorCode::InvalidArgument, "r_max must be at least 10");
  if (!(r_step > 0.0) || r_step > 0.01) fail(ErrorCode::InvalidArgument, "r_step must lie in (0, 0.01]");
}

QuadratureSpec heat_quadrature() {
  QuadratureSpec s;
  s.abs_tol = 1e-300;
  s.rel_tol = 1e-12;
  s.max_subdivisions = 4000;
  s.tail_cutoff_sigma = 9.0;
  return s;
}

double log_heat_kernel(const JacobiParams& p, double t, double r) {
  p.validate();
  if (!(t > 0.0)) fail(ErrorCode::InvalidArgument, "heat time must be positive");
  if (!(r >= 0.0)) fail(ErrorCode::InvalidArgument, "heat kernel needs r >= 0");
  if (r <= contour_radius(t)) return log_heat_real_axis(p, t, r);
  return log_heat_contour(p, t, r);
}

double heat_kernel(const JacobiParams& p, double t, double r) { return std::exp(log_heat_kernel(p, t, r)); }

HeatKernel::HeatKernel(const JacobiParams& p, double t) : p_(p), t_(t) {
  p_.validate();
  if (!(t > 0.0)) fail(ErrorCode::InvalidArgument, "heat time must be positive");
  r_tab_ = 2.0 * p.rho() * t + std::sqrt(200.0 * t) + 2.0;
  const JacobiParams params = p_;
  table_ = std::make_shared<PanelInterpolant<double>>(
      [params, t](double r) { return log_heat_kernel(params, t, r); }, 0.0, r_tab_, 0.5);
}

double HeatKernel::log_value(double r) const {
  if (r <= r_tab_) return (*table_)(r);
  return log_heat_kernel(p_, t_, r);
}

RadialProfile HeatKernel::profile() const {
  const HeatKernel self = *this;
  const double rate = 1.0 / (4.0 * t_);
  return RadialProfile::from_function([self](double r) { return self(r); }, DecayModel::gaussian(rate),
                                      [self, rate](double r) { return self.log_value(r) + rate * r * r; });
}

double log_heat_kernel_h3(double t, double r) {
  if (!(t > 0.0) || !(r >= 0.0)) fail(ErrorCode::InvalidArgument, "bad heat kernel arguments");
  // log(r / sinh r)
  double shape = 0.0;
  if (r > 0.0) {
    shape = r < 1.0 ? std::log(r / std::sinh(r)) : std::log(2.0 * r) - r - std::log1p(-std::exp(-2.0 * r));
  }
  return kLogPi - 1.5 * std::log(4.0 * M_PI * t) - t + shape - r * r / (4.0 * t);
}

double heat_kernel_h3(double t, double r) { return std::exp(log_heat_kernel_h3(t, r)); }

double log_ady_envelope(const JacobiParams& p, double t, double r) {
  const bool ok = p.alpha >= p.beta && p.beta >= -0.5 && half_integer(p.alpha) && half_integer(p.beta);
  if (!ok) fail(ErrorCode::HypothesisViolated, "envelope needs alpha >= beta >= -1/2 in the half-integer family");
  if (!(t > 0.0) || !(r >= 0.0)) fail(ErrorCode::InvalidArgument, "bad envelope arguments");
  const double rho = p.rho();
  return -1.5 * std::log(t) - rho * rho * t + std::log1p(r) + (p.alpha - 0.5) * std::log1p((1.0 + r) / t) -
         rho * r - r * r / (4.0 * t);
}

double ady_envelope(const JacobiParams& p, double t, double r) { return std::exp(log_ady_envelope(p, t, r)); }

RatioRange ady_ratio_scan(const JacobiParams& p, double t, double r_max, double r_step) {
  const HeatKernel h(p, t);
  RatioRange out;
  out.min = kInf;
  out.max = 0.0;
  const int n = static_cast<int>(std::floor(r_max / r_step + 1e-9));
  for (int i = 0; i <= n; ++i) {
    const double r = i * r_step;
    const double ratio = std::exp(h.log_value(r) - log_ady_envelope(p, t, r));
    if (ratio < out.min) {
      out.min = ratio;
      out.r_at_min = r;
    }
    if (ratio > out.max) {
      out.max = ratio;
      out.r_at_max = r;
    }
  }
  return out;
}

double log_heat_solution_delta(const RankOneSpace& space, KType delta, double t, double r) {
  if (!delta.valid()) fail(ErrorCode::InvalidArgument, "invalid K-type");
  const KType d = tilde_delta(delta);
  const JacobiParams shifted = space.jacobi().shifted(d.p, d.q);
  return log_delta_prefactor(d, r) + log_heat_kernel(shifted, t, r);
}

double heat_solution_delta(const RankOneSpace& space, KType delta, double t, double r) {
  return std::exp(log_heat_solution_delta(space, delta, t, r));
}

RadialProfile heat_solution_profile(const RankOneSpace& space, KType delta, double t) {
  if (!delta.valid()) fail(ErrorCode::InvalidArgument, "invalid K-type");
  const KType d = tilde_delta(delta);
  const HeatKernel h(space.jacobi().shifted(d.p, d.q), t);
  const double rate = 1.0 / (4.0 * t);
  auto lr = [h, d, rate](double r) { return log_delta_prefactor(d, r) + h.log_value(r) + rate * r * r; };
  return RadialProfile::from_function([lr, rate](double r) { return std::exp(lr(r) - rate * r * r); },
                                      DecayModel::gaussian(rate), lr);
}

double log_anker_envelope(const RankOneSpace& space, double t, double r) {
  const double rho = space.rho0;
  return -0.5 * std::log(t) - rho * rho * t - rho * r - r * r / (4.0 * t) +
         0.5 * (space.dim_X - 1) * std::log1p(r * r);
}

double anker_bound_check(const RankOneSpace& space, double t, const std::vector<double>& r_grid) {
  const HeatKernel h(space.jacobi(), t);
  double worst = 0.0;
  for (double r : r_grid) worst = std::max(worst, std::exp(h.log_value(r) - log_anker_envelope(space, t, r)));
  return worst;
}

}  // namespace cpheat
