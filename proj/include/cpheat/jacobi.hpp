#pragma once

#include <map>
#include <vector>

#include "cpheat/numkernel.hpp"
#include "cpheat/profile.hpp"

namespace cpheat {

struct JacobiParams {
  double alpha = 0.5;
  double beta = -0.5;

  double rho() const { return alpha + beta + 1.0; }
  // alpha > -1 and alpha +- beta >= -1; throws InvalidArgument otherwise.
  void validate() const;
  JacobiParams shifted(int p, int q) const { return {alpha + p, beta + q}; }
};

// Radius below which phi is summed from the Pfaff-transformed series (tanh^2 r <= 1/2);
// for |lambda| <= 2 the series is used up to tanh^2 r = 3/4.
inline constexpr double kPfaffRadius = 0.881373587019543;

// Value m * e^{log_scale}.
struct ScaledComplex {
  Complex mantissa;
  double log_scale = 0.0;
  Complex value() const { return mantissa * std::exp(log_scale); }
};

// log(2 cosh r), stable for all r >= 0.
double log_two_cosh(double r);

double weight_delta(const JacobiParams& p, double r);
double log_weight_delta(const JacobiParams& p, double r);

// Harish-Chandra c-function c_{alpha,beta}(lambda). Throws PoleAtZero at lambda = 0.
Complex jacobi_c(const JacobiParams& p, Complex lambda);
// log(1/c(lambda)); finite wherever c has no zero.
Complex log_inv_c(const JacobiParams& p, Complex lambda);
// |c(lambda)|^{-2} for real lambda, extended continuously to lambda = 0.
double plancherel_density(const JacobiParams& p, double lambda);

// Phi_lambda(r) = (2 cosh r)^{i lambda - rho} 2F1((rho - i lambda)/2, (alpha - beta + 1 - i lambda)/2; 1 - i lambda; cosh^{-2} r),
// returned with the factor (2 cosh r)^{-rho} split off as a log scale.
ScaledComplex harish_chandra_Phi(const JacobiParams& p, Complex lambda, double r);

// Jacobi function phi_lambda^{(alpha,beta)}(r) bound to (params, lambda). Caches the
// c-function values and Cauchy-circle data it needs.
class JacobiPhi {
 public:
  JacobiPhi(const JacobiParams& p, Complex lambda);

  Complex operator()(double r) const { return scaled(r).value(); }
  ScaledComplex scaled(double r) const;

 private:
  ScaledComplex expansion(double r) const;
  ScaledComplex circle(double r, double radius) const;

  JacobiParams p_;
  Complex lambda_;
  bool real_case_;
  Complex c_plus_, c_minus_;
  Complex center_;
  double lattice_dist_;
  struct CircleNode {
    Complex zeta, c_plus, c_minus, weight;
  };
  mutable std::map<int, std::vector<CircleNode>> circles_;
};

Complex jacobi_phi(const JacobiParams& p, Complex lambda, double r);
ScaledComplex jacobi_phi_scaled(const JacobiParams& p, Complex lambda, double r);

// (sinh r)^p (cosh r)^q phi_lambda^{(alpha+p, beta+q)}(r)
Complex jacobi_assoc_phi(const JacobiParams& params, int p, int q, Complex lambda, double r);

// Second-order operator L_{alpha,beta,p,q} applied by central differences with step h.
Complex jacobi_operator_fd(const JacobiParams& params, int p, int q,
                           const std::function<Complex(double)>& f, double r, double h);

// int_0^inf f(r) phi_lambda(r) Delta(r) dr
Complex jacobi_transform(const RadialProfile& f, const JacobiParams& p, Complex lambda,
                         const QuadratureSpec& spec = {});
// (2 pi)^{-1} int_0^inf F(lambda) phi_lambda(r) |c(lambda)|^{-2} dlambda
Complex jacobi_inverse(const SpectralProfile& F, const JacobiParams& p, double r,
                       const QuadratureSpec& spec = {});

// max over the grid of |phi_lambda(r)| / ((1+r) e^{r(|Im lambda| - rho)})
double phi_growth_check(const JacobiParams& p, Complex lambda, const std::vector<double>& r_grid);

}  // namespace cpheat
