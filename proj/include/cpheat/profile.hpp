#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "cpheat/numkernel.hpp"

namespace cpheat {

struct DecayModel {
  enum class Kind { Gaussian, CompactSupport, Unknown };
  Kind kind = Kind::Unknown;
  double rate = 0.0;     // Gaussian: |f(r)| <= C e^{-rate r^2} times a polynomial
  double support = 0.0;  // CompactSupport: f(r) = 0 for r > support

  static DecayModel gaussian(double rate);
  static DecayModel compact(double support);
  static DecayModel unknown();
};

// A real function of the radial variable r >= 0 with decay metadata.
//
// Besides the value, a profile can evaluate log|f(r)| + rate r^2 directly
// ("reduced log"), which keeps Gaussian-decaying inputs usable at radii where
// f itself underflows.
class RadialProfile {
 public:
  using Fn = std::function<double(double)>;

  RadialProfile();

  static RadialProfile from_function(Fn f, DecayModel decay, Fn log_reduced = {});
  // Local degree-5 Lagrange interpolation of samples; grid[0] must be 0.
  static RadialProfile from_samples(std::vector<double> grid, std::vector<double> values,
                                    DecayModel decay);
  static RadialProfile zero();
  // f = sum c_i f_i. Signs of the summands are taken from their values.
  static RadialProfile linear_combination(const std::vector<std::pair<double, RadialProfile>>& terms);

  // Chebyshev-panel tabulation on [0, r_max]; log_scale interpolates log f (f > 0 required).
  RadialProfile tabulated(double r_max, double panel_width = 0.5, bool log_scale = false) const;
  RadialProfile scaled(double c) const;

  double operator()(double r) const;
  double log_abs(double r) const;
  double log_abs_reduced(double r) const;

  const DecayModel& decay() const { return decay_; }
  bool is_zero() const { return zero_; }
  // log C for the fitted envelope |f| <= C e^{-rate r^2} on the check grid.
  double log_envelope_constant() const { return log_c_; }
  // Largest r at which the profile is known; beyond it the value is not trustworthy.
  double reliable_max() const { return reliable_max_; }
  // Radius beyond which |f(r)| e^{growth r} (1+r)^2 stays below e^{-log_drop} of its peak.
  double effective_radius(double growth = 0.0, double log_drop = 42.0) const;

  struct Samples {
    std::vector<double> grid;
    std::vector<double> values;
  };
  Samples sample(double r_max, double r_step) const;

 private:
  RadialProfile(Fn f, DecayModel decay);
  void check_decay();

  Fn f_;
  Fn log_reduced_;
  DecayModel decay_;
  double log_c_ = 0.0;
  double reliable_max_ = std::numeric_limits<double>::infinity();
  bool zero_ = false;
};

// A complex function of the spectral parameter lambda >= 0.
class SpectralProfile {
 public:
  using Fn = std::function<Complex(double)>;
  using RealFn = std::function<double(double)>;

  SpectralProfile();

  // gaussian_rate b_F: |F(lambda)| <= C e^{-b_F lambda^2} times a polynomial.
  static SpectralProfile from_function(Fn f, double gaussian_rate = 0.0, RealFn log_reduced = {},
                                       double reliable_max = std::numeric_limits<double>::infinity());
  // Chebyshev-panel tabulation of f on [0, lambda_max]; values are trusted up to lambda_max.
  static SpectralProfile tabulate(const Fn& f, double lambda_max, double gaussian_rate = 0.0,
                                  double panel_width = 0.25);
  static SpectralProfile zero();

  Complex operator()(double lambda) const;
  double log_abs(double lambda) const;
  double log_abs_reduced(double lambda) const;
  double gaussian_rate() const { return rate_; }
  double reliable_max() const { return reliable_max_; }
  bool is_zero() const { return zero_; }

  struct Samples {
    std::vector<double> grid;
    std::vector<Complex> values;
    std::vector<double> density;
  };
  // Uniform grid with step `step` on [0, lambda_max]; density(lambda) weights, e.g. |c(lambda)|^{-2}.
  Samples sample(double lambda_max, double step, const RealFn& density) const;

 private:
  Fn f_;
  RealFn log_reduced_;
  double rate_ = 0.0;
  double reliable_max_ = std::numeric_limits<double>::infinity();
  bool zero_ = false;
};

// Gaussian-decaying kernel g with |g(y)| <= C e^{-rate y^2}.
struct GaussianKernel {
  std::function<double(double)> fn;
  double rate = 1.0;
};

enum class Parity { Even, Odd };

// Euclidean convolution on the line of the even (or odd) extension of f with g.
double convolve_1d(const RadialProfile& f, const GaussianKernel& g, double x,
                   const QuadratureSpec& spec = {}, Parity parity = Parity::Even);

}  // namespace cpheat
