#pragma once

#include <vector>

#include "cpheat/jacobi.hpp"
#include "cpheat/profile.hpp"
#include "cpheat/symmspace.hpp"

namespace cpheat {

struct HeatSpec {
  JacobiParams params;
  double t = 0.5;
  double t0 = 1.0;
  double r_max = 12.0;
  double r_step = 0.01;

  void validate() const;
};

// Quadrature settings used for heat-kernel inversion integrals.
QuadratureSpec heat_quadrature();

// h_t^{(alpha,beta)}(r) = (2 pi)^{-1} int_0^inf e^{-(lambda^2+rho^2)t} phi_lambda(r) |c(lambda)|^{-2} dlambda.
// Small r integrates along the real axis; larger r along Im lambda = log(2 cosh r)/(2t).
double log_heat_kernel(const JacobiParams& p, double t, double r);
double heat_kernel(const JacobiParams& p, double t, double r);

// Heat kernel with log h tabulated on Chebyshev panels; direct evaluation beyond the table.
class HeatKernel {
 public:
  HeatKernel(const JacobiParams& p, double t);

  double operator()(double r) const { return std::exp(log_value(r)); }
  double log_value(double r) const;
  // Gaussian(1/(4t)) profile with a cancellation-free reduced log.
  RadialProfile profile() const;

  const JacobiParams& params() const { return p_; }
  double t() const { return t_; }
  double table_radius() const { return r_tab_; }

 private:
  JacobiParams p_;
  double t_;
  double r_tab_;
  std::shared_ptr<const PanelInterpolant<double>> table_;
};

// Closed form for alpha = 1/2, beta = -1/2: pi (4 pi t)^{-3/2} e^{-t} (r / sinh r) e^{-r^2/4t}.
double log_heat_kernel_h3(double t, double r);
double heat_kernel_h3(double t, double r);

// t^{-3/2} e^{-rho^2 t} (1+r) (1 + (1+r)/t)^{alpha-1/2} e^{-rho r} e^{-r^2/4t}.
// Throws HypothesisViolated unless alpha >= beta >= -1/2 with 2 alpha, 2 beta integers.
double log_ady_envelope(const JacobiParams& p, double t, double r);
double ady_envelope(const JacobiParams& p, double t, double r);

struct RatioRange {
  double min = 0.0;
  double max = 0.0;
  double r_at_min = 0.0;
  double r_at_max = 0.0;
  double spread() const { return max / min; }
};

// Range of h_t / envelope over r in [0, r_max] with the given step.
RatioRange ady_ratio_scan(const JacobiParams& p, double t, double r_max, double r_step);

// (sinh r)^p (cosh r)^{|q|} h_t^{(alpha+p, beta+|q|)}(r)
double log_heat_solution_delta(const RankOneSpace& space, KType delta, double t, double r);
double heat_solution_delta(const RankOneSpace& space, KType delta, double t, double r);
RadialProfile heat_solution_profile(const RankOneSpace& space, KType delta, double t);

// t^{-1/2} e^{-rho0^2 t - rho0 r - r^2/4t} (1 + r^2)^{(d_X - 1)/2}
double log_anker_envelope(const RankOneSpace& space, double t, double r);
// max over the grid of h_t / log_anker_envelope
double anker_bound_check(const RankOneSpace& space, double t, const std::vector<double>& r_grid);

}  // namespace cpheat
