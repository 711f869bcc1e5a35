#include "cpheat/profile.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace cpheat {

DecayModel DecayModel::gaussian(double rate) {
  if (!(rate > 0.0)) fail(ErrorCode::InvalidArgument, "Gaussian decay rate must be positive");
  return {Kind::Gaussian, rate, 0.0};
}

DecayModel DecayModel::compact(double support) {
  if (!(support >= 0.0)) fail(ErrorCode::InvalidArgument, "support radius must be non-negative");
  return {Kind::CompactSupport, 0.0, support};
}

DecayModel DecayModel::unknown() { return {}; }

namespace {

double reduced_rate(const DecayModel& d) { return d.kind == DecayModel::Kind::Gaussian ? d.rate : 0.0; }

double safe_log_abs(double v) { return v == 0.0 ? kNegInf : std::log(std::abs(v)); }

}  // namespace

RadialProfile::RadialProfile() : RadialProfile(zero()) {}

RadialProfile RadialProfile::zero() {
  RadialProfile p = from_function([](double) { return 0.0; }, DecayModel::compact(0.0),
                                  [](double) { return kNegInf; });
  p.zero_ = true;
  return p;
}

RadialProfile RadialProfile::from_function(Fn f, DecayModel decay, Fn log_reduced) {
  RadialProfile p(std::move(f), decay);
  if (log_reduced) {
    p.log_reduced_ = std::move(log_reduced);
  } else {
    const double rate = reduced_rate(decay);
    Fn fv = p.f_;
    p.log_reduced_ = [fv, rate](double r) { return safe_log_abs(fv(r)) + rate * r * r; };
  }
  p.check_decay();
  return p;
}

RadialProfile::RadialProfile(Fn f, DecayModel decay) : f_(std::move(f)), decay_(decay) {}

RadialProfile RadialProfile::from_samples(std::vector<double> grid, std::vector<double> values,
                                          DecayModel decay) {
  if (grid.size() < 6 || grid.size() != values.size())
    fail(ErrorCode::InvalidArgument, "need at least 6 matching samples");
  if (grid[0] != 0.0) fail(ErrorCode::InvalidArgument, "grid must start at r = 0");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) fail(ErrorCode::InvalidArgument, "grid must be strictly increasing");
  for (double v : values)
    if (!std::isfinite(v)) fail(ErrorCode::NonFinite, "profile sample not finite");
  auto g = std::make_shared<std::vector<double>>(std::move(grid));
  auto v = std::make_shared<std::vector<double>>(std::move(values));
  const double r_end = g->back();
  const double support = decay.kind == DecayModel::Kind::CompactSupport ? decay.support : kInf;
  Fn f = [g, v, r_end, support](double r) {
    if (r > support || r > r_end) return 0.0;
    const auto& x = *g;
    const auto& y = *v;
    const std::size_t n = x.size();
    std::size_t i = std::upper_bound(x.begin(), x.end(), r) - x.begin();
    std::size_t lo = (i >= 3) ? i - 3 : 0;
    if (lo + 6 > n) lo = n - 6;
    double acc = 0.0;
    for (std::size_t j = lo; j < lo + 6; ++j) {
      double w = 1.0;
      for (std::size_t k = lo; k < lo + 6; ++k)
        if (k != j) w *= (r - x[k]) / (x[j] - x[k]);
      acc += w * y[j];
    }
    return acc;
  };
  RadialProfile p = from_function(std::move(f), decay);
  p.reliable_max_ = r_end;
  return p;
}

void RadialProfile::check_decay() {
  if (decay_.kind != DecayModel::Kind::Gaussian) return;
  const double r_chk = std::min(reliable_max_, std::max(10.0, 4.0 / std::sqrt(decay_.rate)));
  const int n = 240;
  std::vector<double> rs, gs;
  double gmax = kNegInf;
  for (int i = 0; i <= n; ++i) {
    const double r = r_chk * i / n;
    const double g = log_reduced_(r);
    if (std::isnan(g)) fail(ErrorCode::NonFinite, "profile not finite on the check grid");
    gmax = std::max(gmax, g);
    if (i >= 2 * n / 3 && std::isfinite(g)) {
      rs.push_back(r * r);
      gs.push_back(g);
    }
  }
  log_c_ = gmax;
  if (gs.size() >= 4) {
    // log_reduced = a + b r^2 + c log r on the upper part of the grid; polynomial
    // factors go into c, an understated rate shows up as b > 0.
    Eigen::MatrixXd A(gs.size(), 3);
    Eigen::VectorXd y(gs.size());
    for (std::size_t i = 0; i < gs.size(); ++i) {
      A(i, 0) = 1.0;
      A(i, 1) = rs[i];
      A(i, 2) = 0.5 * std::log(rs[i]);
      y(i) = gs[i];
    }
    const Eigen::Vector3d coef = A.colPivHouseholderQr().solve(y);
    if (coef(1) > 0.01 * decay_.rate)
      fail(ErrorCode::DecayInsufficient, "samples violate the declared Gaussian decay rate");
  }
}

RadialProfile RadialProfile::linear_combination(
    const std::vector<std::pair<double, RadialProfile>>& terms) {
  if (terms.empty()) return zero();
  DecayModel decay = terms.front().second.decay();
  double reliable = kInf;
  for (const auto& [c, p] : terms) {
    const auto& d = p.decay();
    reliable = std::min(reliable, p.reliable_max());
    if (d.kind == DecayModel::Kind::Unknown || decay.kind == DecayModel::Kind::Unknown) {
      decay = DecayModel::unknown();
    } else if (d.kind == DecayModel::Kind::Gaussian && decay.kind == DecayModel::Kind::Gaussian) {
      decay.rate = std::min(decay.rate, d.rate);
    } else if (d.kind == DecayModel::Kind::CompactSupport && decay.kind == DecayModel::Kind::CompactSupport) {
      decay.support = std::max(decay.support, d.support);
    } else if (d.kind == DecayModel::Kind::Gaussian) {
      decay = d;
    }
  }
  auto parts = std::make_shared<std::vector<std::pair<double, RadialProfile>>>(terms);
  Fn f = [parts](double r) {
    double acc = 0.0;
    for (const auto& [c, p] : *parts) acc += c * p(r);
    return acc;
  };
  const double rate = reduced_rate(decay);
  Fn lr = [parts, rate](double r) {
    // log |sum c_i f_i| + rate r^2 assembled from the summands' reduced logs.
    double m = kNegInf;
    std::vector<std::pair<double, double>> logs;
    for (const auto& [c, p] : *parts) {
      if (c == 0.0) continue;
      const double v = p(r);
      const double sign = (v < 0.0 ? -1.0 : 1.0) * (c < 0.0 ? -1.0 : 1.0);
      const double l = std::log(std::abs(c)) + p.log_abs_reduced(r) -
                       (reduced_rate(p.decay()) - rate) * r * r;
      logs.emplace_back(sign, l);
      m = std::max(m, l);
    }
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (const auto& [sg, l] : logs) s += sg * std::exp(l - m);
    return s == 0.0 ? kNegInf : m + std::log(std::abs(s));
  };
  RadialProfile p = from_function(std::move(f), decay, std::move(lr));
  p.reliable_max_ = reliable;
  return p;
}

RadialProfile RadialProfile::tabulated(double r_max, double panel_width, bool log_scale) const {
  RadialProfile base = *this;
  if (log_scale) {
    auto tab = std::make_shared<PanelInterpolant<double>>(
        [&base](double r) { return base.log_abs_reduced(r); }, 0.0, r_max, panel_width);
    const double rate = reduced_rate(decay_);
    Fn lr = [tab, base, r_max](double r) { return r <= r_max ? (*tab)(r) : base.log_abs_reduced(r); };
    Fn f = [lr, rate](double r) { return std::exp(lr(r) - rate * r * r); };
    RadialProfile p = *this;
    p.f_ = std::move(f);
    p.log_reduced_ = std::move(lr);
    return p;
  }
  auto tab = std::make_shared<PanelInterpolant<double>>(base, 0.0, r_max, panel_width);
  RadialProfile p = *this;
  p.f_ = [tab, base, r_max](double r) { return r <= r_max ? (*tab)(r) : base(r); };
  return p;
}

RadialProfile RadialProfile::scaled(double c) const {
  if (c == 0.0) return zero();
  RadialProfile p = *this;
  Fn f = f_, lr = log_reduced_;
  const double lc = std::log(std::abs(c));
  p.f_ = [f, c](double r) { return c * f(r); };
  p.log_reduced_ = [lr, lc](double r) { return lr(r) + lc; };
  p.log_c_ = log_c_ + lc;
  return p;
}

double RadialProfile::operator()(double r) const {
  if (zero_) return 0.0;
  if (decay_.kind == DecayModel::Kind::CompactSupport && r > decay_.support) return 0.0;
  return f_(r);
}

double RadialProfile::log_abs_reduced(double r) const {
  if (zero_) return kNegInf;
  if (decay_.kind == DecayModel::Kind::CompactSupport && r > decay_.support) return kNegInf;
  return log_reduced_(r);
}

double RadialProfile::log_abs(double r) const {
  return log_abs_reduced(r) - reduced_rate(decay_) * r * r;
}

double RadialProfile::effective_radius(double growth, double log_drop) const {
  if (zero_) return 0.0;
  switch (decay_.kind) {
    case DecayModel::Kind::CompactSupport:
      return decay_.support;
    case DecayModel::Kind::Unknown:
      fail(ErrorCode::DecayUnknown, "effective radius needs a decay model");
    case DecayModel::Kind::Gaussian:
      break;
  }
  const double rate = decay_.rate;
  auto val = [&](double r) { return log_abs(r) + growth * r + 2.0 * std::log1p(r); };
  const double step = std::min(0.25, 0.5 / std::sqrt(rate));
  const double r_peak = std::max(0.0, growth / (2.0 * rate));
  double peak = kNegInf;
  int below = 0;
  for (double r = 0.0;; r += step) {
    const double v = val(r);
    peak = std::max(peak, v);
    if (r > r_peak && v < peak - log_drop) {
      if (++below == 4) return std::min(r, reliable_max_);
    } else {
      below = 0;
    }
    if (r > 1e6) fail(ErrorCode::DecayInsufficient, "no effective radius found");
  }
}

RadialProfile::Samples RadialProfile::sample(double r_max, double r_step) const {
  Samples s;
  const int n = static_cast<int>(std::floor(r_max / r_step + 1e-9));
  for (int i = 0; i <= n; ++i) {
    const double r = i * r_step;
    s.grid.push_back(r);
    s.values.push_back((*this)(r));
  }
  return s;
}

SpectralProfile::SpectralProfile()
    : f_([](double) { return Complex(0.0); }), log_reduced_([](double) { return kNegInf; }), zero_(true) {}

SpectralProfile SpectralProfile::zero() { return SpectralProfile(); }

SpectralProfile SpectralProfile::from_function(Fn f, double gaussian_rate, RealFn log_reduced,
                                               double reliable_max) {
  SpectralProfile p;
  p.zero_ = false;
  p.f_ = std::move(f);
  p.rate_ = gaussian_rate;
  p.reliable_max_ = reliable_max;
  if (log_reduced) {
    p.log_reduced_ = std::move(log_reduced);
  } else {
    Fn fv = p.f_;
    p.log_reduced_ = [fv, gaussian_rate](double l) {
      const double a = std::abs(fv(l));
      return (a == 0.0 ? kNegInf : std::log(a)) + gaussian_rate * l * l;
    };
  }
  return p;
}

SpectralProfile SpectralProfile::tabulate(const Fn& f, double lambda_max, double gaussian_rate,
                                          double panel_width) {
  auto tab = std::make_shared<PanelInterpolant<Complex>>(f, 0.0, lambda_max, panel_width);
  return from_function([tab](double l) { return (*tab)(l); }, gaussian_rate, {}, lambda_max);
}

Complex SpectralProfile::operator()(double lambda) const {
  if (zero_) return 0.0;
  return f_(lambda);
}

double SpectralProfile::log_abs_reduced(double lambda) const {
  if (zero_) return kNegInf;
  return log_reduced_(lambda);
}

double SpectralProfile::log_abs(double lambda) const {
  return log_abs_reduced(lambda) - rate_ * lambda * lambda;
}

SpectralProfile::Samples SpectralProfile::sample(double lambda_max, double step,
                                                 const RealFn& density) const {
  Samples s;
  const int n = static_cast<int>(std::floor(lambda_max / step + 1e-9));
  for (int i = 0; i <= n; ++i) {
    const double l = i * step;
    s.grid.push_back(l);
    s.values.push_back((*this)(l));
    s.density.push_back(density ? density(l) : 1.0);
  }
  return s;
}

double convolve_1d(const RadialProfile& f, const GaussianKernel& g, double x, const QuadratureSpec& spec,
                   Parity parity) {
  if (f.is_zero()) return 0.0;
  if (!(g.rate > 0.0)) fail(ErrorCode::InvalidArgument, "kernel rate must be positive");
  const double rf = f.effective_radius();
  const double wg = std::sqrt(45.0 / g.rate);
  const double lo = std::max(-rf, x - wg);
  const double hi = std::min(rf, x + wg);
  if (!(hi > lo)) return 0.0;
  std::vector<double> pts{lo};
  for (double b : {0.0, x})
    if (b > lo && b < hi) pts.push_back(b);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto integrand = [&](double y) {
    const double v = f(std::abs(y));
    return (parity == Parity::Odd && y < 0.0 ? -v : v) * g.fn(x - y);
  };
  auto r = integrate(integrand, pts, spec);
  if (!r.converged) fail(ErrorCode::BudgetExceeded, "convolution quadrature did not converge");
  return r.value;
}

}  // namespace cpheat
