#include "cpheat/jacobi.hpp"

#include <algorithm>
#include <cmath>

#include "cpheat/specfun.hpp"

namespace cpheat {

namespace {

constexpr double kLog2 = 0.69314718055994531;
constexpr double kHalfLogPi = 0.57236494292470008;
constexpr int kCircleNodes = 64;
const Complex I(0.0, 1.0);

// log of 2^{rho-1} Gamma(alpha+1) / sqrt(pi), the constant in the duplicated c-function.
double log_c_constant(const JacobiParams& p) {
  return (p.rho() - 1.0) * kLog2 + std::lgamma(p.alpha + 1.0) - kHalfLogPi;
}

// Gamma(w + a) / Gamma(w + b)
Complex gamma_ratio(Complex w, double a, double b) {
  if (a == b) return 1.0;
  if (std::abs(w) >= 30.0) return std::exp(log_gamma_ratio(w, a, b));
  return std::exp(log_gamma(w + a)) * rgamma(w + b);
}

// log(2 sinh r) for r > 0
double log_two_sinh(double r) {
  if (r < 1.0) return std::log(2.0 * std::sinh(r));
  return r + std::log1p(-std::exp(-2.0 * r));
}

// Combine sum_j m_j e^{s_j} into one scaled value.
ScaledComplex scaled_sum(const std::vector<ScaledComplex>& terms) {
  double top = kNegInf;
  for (const auto& t : terms)
    if (t.mantissa != Complex(0.0)) top = std::max(top, t.log_scale);
  if (!std::isfinite(top)) return {Complex(0.0), 0.0};
  Complex acc = 0.0;
  for (const auto& t : terms) acc += t.mantissa * std::exp(t.log_scale - top);
  return {acc, top};
}

}  // namespace

void JacobiParams::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !(alpha > -1.0) ||
      alpha + beta < -1.0 || alpha - beta < -1.0)
    fail(ErrorCode::InvalidArgument, "Jacobi parameters need alpha > -1 and alpha +- beta >= -1");
}

double log_two_cosh(double r) {
  r = std::abs(r);
  return r + std::log1p(std::exp(-2.0 * r));
}

double log_weight_delta(const JacobiParams& p, double r) {
  if (r < 0.0) fail(ErrorCode::InvalidArgument, "weight_delta needs r >= 0");
  double acc = 0.0;
  const double ea = 2.0 * p.alpha + 1.0, eb = 2.0 * p.beta + 1.0;
  if (ea != 0.0) acc += ea * (r == 0.0 ? kNegInf : log_two_sinh(r));
  if (eb != 0.0) acc += eb * log_two_cosh(r);
  return acc;
}

double weight_delta(const JacobiParams& p, double r) { return std::exp(log_weight_delta(p, r)); }

Complex jacobi_c(const JacobiParams& p, Complex lambda) {
  if (lambda == Complex(0.0)) fail(ErrorCode::PoleAtZero, "c-function has a pole at lambda = 0");
  const Complex w = 0.5 * I * lambda;
  const double ab = 0.5 * (p.alpha - p.beta + 1.0);
  return std::exp(log_c_constant(p)) * gamma_ratio(w, 0.0, 0.5 * p.rho()) * gamma_ratio(w, 0.5, ab);
}

Complex log_inv_c(const JacobiParams& p, Complex lambda) {
  const Complex w = 0.5 * I * lambda;
  const double ab = 0.5 * (p.alpha - p.beta + 1.0);
  return -log_c_constant(p) + log_gamma_ratio(w, 0.5 * p.rho(), 0.0) + log_gamma_ratio(w, ab, 0.5);
}

double plancherel_density(const JacobiParams& p, double lambda) {
  lambda = std::abs(lambda);
  if (lambda == 0.0) lambda = 1e-200;
  return std::exp(2.0 * log_inv_c(p, lambda).real());
}

ScaledComplex harish_chandra_Phi(const JacobiParams& p, Complex lambda, double r) {
  const double L = log_two_cosh(r);
  const double e = std::exp(-2.0 * r);
  const double x = 4.0 * e / ((1.0 + e) * (1.0 + e));
  const Complex il = I * lambda;
  const Complex F = hyp2f1_series(0.5 * (p.rho() - il), 0.5 * (p.alpha - p.beta + 1.0 - il), 1.0 - il, x);
  // (2 cosh r)^{i lambda - rho} = e^{i Re(lambda) L} e^{-(Im(lambda) + rho) L}
  return {F * std::exp(I * lambda.real() * L), -(lambda.imag() + p.rho()) * L};
}

JacobiPhi::JacobiPhi(const JacobiParams& p, Complex lambda) : p_(p), lambda_(lambda) {
  p_.validate();
  if (!is_finite(lambda)) fail(ErrorCode::NonFinite, "lambda not finite");
  real_case_ = lambda.imag() == 0.0;
  center_ = Complex(0.0, std::round(lambda.imag()));
  lattice_dist_ = std::abs(lambda - center_);
  if (lattice_dist_ > 0.0) {
    c_plus_ = jacobi_c(p_, lambda_);
    c_minus_ = real_case_ ? std::conj(c_plus_) : jacobi_c(p_, -lambda_);
  }
}

ScaledComplex JacobiPhi::scaled(double r) const {
  if (r < 0.0) fail(ErrorCode::InvalidArgument, "jacobi_phi needs r >= 0");
  if (r == 0.0) return {Complex(1.0), 0.0};
  // The Pfaff series loses about e^{|lambda| tanh r} to cancellation.
  // For small |lambda| the series also beats the expansion up to tanh^2 r = 3/4, where
  // the expansion still cancels heavily when alpha is large.
  const double reach = std::abs(lambda_) <= 2.0 ? 1.3169578969248166 : kPfaffRadius;
  const bool pfaff = r <= reach && !(std::abs(lambda_) * std::tanh(r) > 3.0 && r >= 0.32);
  if (pfaff) {
    const double s = std::sinh(r);
    const Complex il = I * lambda_;
    Complex v = gauss_2f1(0.5 * (p_.rho() + il), 0.5 * (p_.rho() - il), p_.alpha + 1.0, -s * s);
    if (real_case_) v = v.real();
    return {v, 0.0};
  }
  const double L = log_two_cosh(r);
  // Radii 0.5 * 2^{-k}, never larger than 4/L.
  const int k = std::max(0, static_cast<int>(std::ceil(std::log2(L / 8.0))));
  const double radius = 0.5 * std::ldexp(1.0, -k);
  if (lattice_dist_ < 0.5 * radius) return circle(r, radius);
  return expansion(r);
}

ScaledComplex JacobiPhi::expansion(double r) const {
  const ScaledComplex a = harish_chandra_Phi(p_, lambda_, r);
  if (real_case_) return {2.0 * (c_plus_ * a.mantissa).real(), a.log_scale};
  const ScaledComplex b = harish_chandra_Phi(p_, -lambda_, r);
  return scaled_sum({{c_plus_ * a.mantissa, a.log_scale}, {c_minus_ * b.mantissa, b.log_scale}});
}

ScaledComplex JacobiPhi::circle(double r, double radius) const {
  const int key = static_cast<int>(std::lround(-std::log2(radius)));
  auto it = circles_.find(key);
  if (it == circles_.end()) {
    std::vector<CircleNode> nodes(kCircleNodes);
    for (int j = 0; j < kCircleNodes; ++j) {
      const double th = 2.0 * M_PI * (j + 0.5) / kCircleNodes;
      const Complex zeta = center_ + radius * Complex(std::cos(th), std::sin(th));
      nodes[j] = {zeta, jacobi_c(p_, zeta), jacobi_c(p_, -zeta),
                  (zeta - center_) / ((zeta - lambda_) * double(kCircleNodes))};
    }
    it = circles_.emplace(key, std::move(nodes)).first;
  }
  std::vector<ScaledComplex> terms;
  terms.reserve(2 * kCircleNodes);
  for (const CircleNode& n : it->second) {
    const ScaledComplex a = harish_chandra_Phi(p_, n.zeta, r);
    const ScaledComplex b = harish_chandra_Phi(p_, -n.zeta, r);
    terms.push_back({n.weight * n.c_plus * a.mantissa, a.log_scale});
    terms.push_back({n.weight * n.c_minus * b.mantissa, b.log_scale});
  }
  ScaledComplex out = scaled_sum(terms);
  if (real_case_) out.mantissa = out.mantissa.real();
  return out;
}

Complex jacobi_phi(const JacobiParams& p, Complex lambda, double r) {
  return JacobiPhi(p, lambda)(r);
}

ScaledComplex jacobi_phi_scaled(const JacobiParams& p, Complex lambda, double r) {
  return JacobiPhi(p, lambda).scaled(r);
}

Complex jacobi_assoc_phi(const JacobiParams& params, int p, int q, Complex lambda, double r) {
  if (p < 0) fail(ErrorCode::InvalidArgument, "associated Jacobi function needs p >= 0");
  const JacobiParams shifted = params.shifted(p, q);
  const ScaledComplex v = jacobi_phi_scaled(shifted, lambda, r);
  if (p > 0 && r == 0.0) return 0.0;
  double log_pre = v.log_scale;
  if (p > 0) log_pre += p * (log_two_sinh(r) - kLog2);
  if (q != 0) log_pre += q * (log_two_cosh(r) - kLog2);
  return v.mantissa * std::exp(log_pre);
}

Complex jacobi_operator_fd(const JacobiParams& params, int p, int q,
                           const std::function<Complex(double)>& f, double r, double h) {
  const Complex fm = f(r - h), f0 = f(r), fp = f(r + h);
  const Complex d2 = (fp - 2.0 * f0 + fm) / (h * h);
  const Complex d1 = (fp - fm) / (2.0 * h);
  const double sh = std::sinh(r), ch = std::cosh(r);
  const double drift = (2.0 * params.alpha + 1.0) * ch / sh + (2.0 * params.beta + 1.0) * sh / ch;
  const double potential = -(2.0 * params.alpha + p) * p / (sh * sh) + (2.0 * params.beta + q) * q / (ch * ch);
  return d2 + drift * d1 + potential * f0;
}

Complex jacobi_transform(const RadialProfile& f, const JacobiParams& p, Complex lambda,
                         const QuadratureSpec& spec) {
  p.validate();
  spec.validate();
  if (f.is_zero()) return 0.0;
  if (f.decay().kind == DecayModel::Kind::Unknown)
    fail(ErrorCode::DecayInsufficient, "transform needs a certified decay model");
  const double growth = std::abs(lambda.imag()) + p.rho();
  const double R = std::min(f.effective_radius(growth), f.reliable_max());
  if (!(R > 0.0)) return 0.0;
  const JacobiPhi phi(p, lambda);
  std::vector<double> pts{0.0};
  if (R > kPfaffRadius) pts.push_back(kPfaffRadius);
  for (double x = 1.0; x < R; x += 1.0) pts.push_back(x);
  pts.push_back(R);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto integrand = [&](double r) -> Complex {
    if (r == 0.0) return (2.0 * p.alpha + 1.0 == 0.0) ? f(0.0) * weight_delta(p, 0.0) : Complex(0.0);
    const ScaledComplex v = phi.scaled(r);
    const double fv = f(r);
    const double sign = fv < 0.0 ? -1.0 : 1.0;
    const double lf = f.log_abs(r);
    if (!std::isfinite(lf)) return 0.0;
    return sign * v.mantissa * std::exp(lf + log_weight_delta(p, r) + v.log_scale);
  };
  return integrate(integrand, pts, spec).value;
}

Complex jacobi_inverse(const SpectralProfile& F, const JacobiParams& p, double r,
                       const QuadratureSpec& spec) {
  p.validate();
  spec.validate();
  if (F.is_zero()) return 0.0;
  if (!(F.gaussian_rate() > 0.0))
    fail(ErrorCode::DecayInsufficient, "inverse transform needs Gaussian decay in lambda");
  auto integrand = [&](double lam) -> Complex {
    return F(lam) * jacobi_phi(p, lam, r) * plancherel_density(p, lam);
  };
  const auto res = semiinfinite_gaussian_quad(integrand, 0.0, F.gaussian_rate(), spec);
  return res.value / (2.0 * M_PI);
}

double phi_growth_check(const JacobiParams& p, Complex lambda, const std::vector<double>& r_grid) {
  const JacobiPhi phi(p, lambda);
  double worst = 0.0;
  for (double r : r_grid) {
    const ScaledComplex v = phi.scaled(r);
    const double log_ratio = std::log(std::abs(v.mantissa)) + v.log_scale - std::log1p(r) -
                             r * (std::abs(lambda.imag()) - p.rho());
    worst = std::max(worst, std::exp(log_ratio));
  }
  return worst;
}

}  // namespace cpheat
