#include "cpheat/cpverify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace cpheat {

namespace {

double log_xi(const JacobiParams& p, double r) {
  const ScaledComplex v = jacobi_phi_scaled(p, 0.0, r);
  return std::log(std::abs(v.mantissa.real())) + v.log_scale;
}

double profile_rate(const RadialProfile& f) {
  return f.decay().kind == DecayModel::Kind::Gaussian ? f.decay().rate : 0.0;
}

struct LogWindow {
  double log_value = kNegInf;
  double rel_error = 0.0;
};

LogWindow log_window(const std::function<double(double)>& lf, double lo, double hi) {
  constexpr int kGrid = 65;
  double peak = kNegInf;
  for (int i = 0; i < kGrid; ++i) peak = std::max(peak, lf(lo + (hi - lo) * i / (kGrid - 1)));
  if (peak == kNegInf) return {};
  if (!std::isfinite(peak)) fail(ErrorCode::NonFinite, "log integrand is not finite");
  QuadratureSpec s;
  s.abs_tol = 1e-300;
  s.rel_tol = 1e-9;
  s.max_subdivisions = 600;
  auto g = [&](double x) {
    const double v = lf(x);
    return v == kNegInf ? 0.0 : std::exp(v - peak);
  };
  const auto r = integrate(g, lo, hi, s);
  if (!(r.value > 0.0)) return {};
  return {peak + std::log(r.value), r.error / r.value};
}

// Beyond the trusted range [0, X] the log is continued by c + g log x + d x^2, fitted to
// block maxima on [X/2, X] (block maxima keep isolated zeros out of the fit).
std::function<double(double)> extend_log(std::function<double(double)> lf, double X) {
  if (!std::isfinite(X)) return lf;
  constexpr int kBlocks = 16, kPerBlock = 8;
  Eigen::MatrixXd A(kBlocks, 3);
  Eigen::VectorXd y(kBlocks);
  int rows = 0;
  for (int b = 0; b < kBlocks; ++b) {
    double best = kNegInf, at = 0.0;
    for (int j = 0; j <= kPerBlock; ++j) {
      const double x = 0.5 * X * (1.0 + (b + double(j) / kPerBlock) / kBlocks);
      const double v = lf(x);
      if (v > best) {
        best = v;
        at = x;
      }
    }
    if (best == kNegInf) continue;
    A.row(rows) << 1.0, std::log(at), at * at;
    y(rows++) = best;
  }
  if (rows < 4) {
    return [lf, X](double x) { return x <= X ? lf(x) : kNegInf; };
  }
  Eigen::Vector3d c = A.topRows(rows).colPivHouseholderQr().solve(y.head(rows));
  if (std::abs(c(2)) * X * X < 0.05) {
    // A Gaussian term this small is quadrature noise at the end of the range.
    const Eigen::Vector2d c2 = A.topRows(rows).leftCols(2).colPivHouseholderQr().solve(y.head(rows));
    c << c2(0), c2(1), 0.0;
  }
  return [lf, X, c](double x) {
    if (x <= X) return lf(x);
    return c(0) + c(1) * std::log(x) + c(2) * x * x;
  };
}

IntegralVerdict zero_verdict() {
  IntegralVerdict v;
  v.kind = VerdictKind::Convergent;
  v.value = 0.0;
  v.log_value = kNegInf;
  v.tail_slope = kNegInf;
  return v;
}

void record(HeatCharacterization& out, const std::string& stage, const IntegralVerdict& v, long work) {
  out.stages.push_back({stage, to_string(v.kind), v.value, v.error_estimate, work});
}

bool fails(HeatCharacterization& out, const std::string& stage) {
  out.is_heat_kernel = false;
  out.failed_stage = stage;
  return true;
}

// int f Delta dr over the effective support of f
double total_mass(const JacobiParams& p, const RadialProfile& f) {
  if (f.is_zero()) return 0.0;
  const double R = std::min(f.effective_radius(2.0 * p.rho()), f.reliable_max());
  std::vector<double> pts{0.0};
  for (double x = 1.0; x < R; x += 1.0) pts.push_back(x);
  pts.push_back(R);
  QuadratureSpec s;
  s.abs_tol = 1e-300;
  s.rel_tol = 1e-12;
  s.max_subdivisions = 4000;
  return integrate([&](double r) { return r == 0.0 ? 0.0 : f(r) * weight_delta(p, r); }, pts, s).value;
}

}  // namespace

CPConditionSpec CPConditionSpec::space(double p, double a, double k) {
  CPConditionSpec c;
  c.side = Side::Space;
  c.p_or_q = p;
  c.a_or_b = a;
  c.poly_power = k;
  return c;
}

CPConditionSpec CPConditionSpec::spectral(double q, double b, double l) {
  CPConditionSpec c;
  c.side = Side::Spectral;
  c.p_or_q = q;
  c.a_or_b = b;
  c.poly_power = l;
  return c;
}

CPConditionSpec CPConditionSpec::heat_ratio(double p, double t, double k) {
  CPConditionSpec c = space(p, 1.0 / (4.0 * t), k);
  c.heat_time = t;
  return c;
}

void CPConditionSpec::validate() const {
  if (!(p_or_q >= 1.0) || !std::isfinite(p_or_q)) fail(ErrorCode::InvalidArgument, "p or q must lie in [1, inf)");
  if (!(a_or_b > 0.0)) fail(ErrorCode::InvalidArgument, "Gaussian parameter must be positive");
  if (!(poly_power >= 0.0)) fail(ErrorCode::InvalidArgument, "polynomial power must be non-negative");
  if (heat_time && !(*heat_time > 0.0)) fail(ErrorCode::InvalidArgument, "heat time must be positive");
  if (heat_time && side != Side::Space) fail(ErrorCode::InvalidArgument, "heat-ratio weight is a space condition");
}

IntegralVerdict windowed_verdict(const std::function<double(double)>& log_integrand, const WindowPlan& plan) {
  if (!(plan.start > 0.0) || !(plan.cap > plan.start))
    fail(ErrorCode::InvalidArgument, "window plan needs 0 < start < cap");
  const double head = log_window(log_integrand, 0.0, plan.start).log_value;
  std::vector<WindowSum> windows;
  double lo = plan.start;
  for (;;) {
    double hi = 2.0 * lo;
    const bool last = hi >= plan.cap * (1.0 - 1e-12);
    if (last) hi = plan.cap;
    const LogWindow w = log_window(log_integrand, lo, hi);
    windows.push_back({lo, hi, w.log_value, w.rel_error});
    lo = hi;
    const int n = static_cast<int>(windows.size());
    if (n >= std::max(6, plan.min_windows) && (hi >= plan.decide_from || last)) {
      const IntegralVerdict v = tail_verdict(windows, head, plan.tol);
      if (v.kind != VerdictKind::Inconclusive || last) return v;
    }
    if (last) return tail_verdict(windows, head, plan.tol);
  }
}

IntegralVerdict evaluate_cp_space(const RankOneSpace& space, const RadialProfile& f, const CPConditionSpec& cond) {
  cond.validate();
  if (cond.side != Side::Space) fail(ErrorCode::InvalidArgument, "space verdict needs a space condition");
  if (f.is_zero()) return zero_verdict();
  if (f.decay().kind == DecayModel::Kind::Unknown) fail(ErrorCode::DecayUnknown, "space verdict needs a decay model");
  const JacobiParams J = space.jacobi();
  const double p = cond.p_or_q, k = cond.poly_power;
  const double rate = profile_rate(f);
  std::function<double(double)> lf;
  if (cond.heat_time) {
    const HeatKernel h(J, *cond.heat_time);
    const double hrate = 1.0 / (4.0 * *cond.heat_time);
    lf = [=, &f](double r) {
      const double lr = f.log_abs_reduced(r);
      if (lr == kNegInf) return kNegInf;
      const double ratio = lr - (h.log_value(r) + hrate * r * r) + (hrate - rate) * r * r;
      return p * ratio + 2.0 * log_xi(J, r) - k * std::log1p(r) + log_weight_delta(J, r);
    };
  } else {
    const double a = cond.a_or_b, w = cond.xi_exponent();
    lf = [=, &f](double r) {
      const double lr = f.log_abs_reduced(r);
      if (lr == kNegInf) return kNegInf;
      const double xi = w == 0.0 ? 0.0 : w * log_xi(J, r);
      return p * (lr + (a - rate) * r * r + xi) - k * std::log1p(r) + log_weight_delta(J, r);
    };
  }
  return windowed_verdict(extend_log(lf, f.reliable_max()), WindowPlan{});
}

IntegralVerdict evaluate_cp_spectral(const RankOneSpace& space, const SpectralProfile& F,
                                     const CPConditionSpec& cond) {
  cond.validate();
  if (cond.side != Side::Spectral) fail(ErrorCode::InvalidArgument, "spectral verdict needs a spectral condition");
  if (F.is_zero()) return zero_verdict();
  const JacobiParams J = space.jacobi();
  const double q = cond.p_or_q, b = cond.a_or_b, l = cond.poly_power, rate = F.gaussian_rate();
  auto G = extend_log([&F](double lam) { return F.log_abs_reduced(lam); }, F.reliable_max());
  auto lf = [=](double lam) {
    const double lr = G(lam);
    const double mu = plancherel_density(J, lam);
    if (lr == kNegInf || !(mu > 0.0)) return kNegInf;
    return q * (lr + (b - rate) * lam * lam) - l * std::log1p(lam) + std::log(mu);
  };
  return windowed_verdict(lf, WindowPlan{});
}

IntegralVerdict evaluate_cp_space_euclidean(const HarmonicTerm& term, const CPConditionSpec& cond) {
  cond.validate();
  if (cond.side != Side::Space || cond.heat_time)
    fail(ErrorCode::InvalidArgument, "Euclidean space verdict needs a plain space condition");
  const RadialProfile& f = term.radial;
  if (f.is_zero()) return zero_verdict();
  if (f.decay().kind == DecayModel::Kind::Unknown) fail(ErrorCode::DecayUnknown, "space verdict needs a decay model");
  const int n = term.harmonic.n;
  const double p = cond.p_or_q, a = cond.a_or_b, k = cond.poly_power, rate = profile_rate(f);
  auto lf = [=, &f](double r) {
    const double lr = f.log_abs_reduced(r);
    if (lr == kNegInf || r == 0.0) return kNegInf;
    return p * (lr + (a - rate) * r * r) - k * std::log1p(r) + (n - 1) * std::log(r);
  };
  IntegralVerdict v = windowed_verdict(extend_log(lf, f.reliable_max()), WindowPlan{});
  const SphericalHarmonicSpec S = term.harmonic;
  const double sphere = sphere_quadrature(n, [&](const SpherePoint& x) { return std::pow(std::abs(S(x)), p); },
                                          std::max(12, S.m + 12));
  if (v.kind == VerdictKind::Convergent) {
    v.value *= sphere;
    v.error_estimate *= sphere;
    v.log_value += std::log(sphere);
  }
  return v;
}

IntegralVerdict evaluate_cp_spectral_euclidean(const SpectralProfile& F, const CPConditionSpec& cond) {
  cond.validate();
  if (cond.side != Side::Spectral) fail(ErrorCode::InvalidArgument, "spectral verdict needs a spectral condition");
  if (F.is_zero()) return zero_verdict();
  const double q = cond.p_or_q, b = cond.a_or_b, l = cond.poly_power, rate = F.gaussian_rate();
  auto G = extend_log([&F](double lam) { return F.log_abs_reduced(lam); }, F.reliable_max());
  auto lf = [=](double lam) {
    const double lr = G(lam);
    if (lr == kNegInf) return kNegInf;
    return q * (lr + (b - rate) * lam * lam) - l * std::log1p(lam);
  };
  return windowed_verdict(lf, WindowPlan{});
}

namespace {

constexpr double kTransformFloor = 1e-10;
constexpr double kMaxLambda = 40.0;

template <class G>
SpectralProfile tabulate_transform(G&& value, double scale, double rate, double min_lambda_max) {
  double lam = 0.5;
  for (; lam < kMaxLambda; lam += 0.5)
    if (std::abs(value(lam)) < kTransformFloor * scale) break;
  const double Lambda = std::min(kMaxLambda, std::max(lam, min_lambda_max));
  const double b = rate > 0.0 ? 1.0 / (4.0 * rate) : 0.0;
  return SpectralProfile::tabulate([&](double l) { return Complex(value(l)); }, Lambda, b);
}

}  // namespace

SpectralProfile spherical_transform_profile(const JacobiParams& p, const RadialProfile& f, double min_lambda_max) {
  if (f.is_zero()) return SpectralProfile::zero();
  const double R = std::min(f.effective_radius(p.rho()), f.reliable_max());
  std::vector<double> pts{0.0};
  for (double x = 1.0; x < R; x += 1.0) pts.push_back(x);
  pts.push_back(R);
  QuadratureSpec s;
  s.abs_tol = 1e-300;
  s.rel_tol = 1e-12;
  s.max_subdivisions = 4000;
  const double scale = integrate(
      [&](double r) {
        const double lf = f.log_abs(r);
        return (r == 0.0 || lf == kNegInf) ? 0.0 : std::exp(lf + log_xi(p, r) + log_weight_delta(p, r));
      },
      pts, s).value;
  QuadratureSpec ts;
  ts.abs_tol = std::max(1e-15 * scale, 1e-300);
  ts.rel_tol = 1e-13;
  ts.max_subdivisions = 4000;
  auto value = [&](double lam) { return jacobi_transform(f, p, lam, ts).real(); };
  return tabulate_transform(value, scale, profile_rate(f), min_lambda_max);
}

SpectralProfile euclidean_Fm_profile(int n, int m, const RadialProfile& f_m, double min_lambda_max) {
  if (f_m.is_zero()) return SpectralProfile::zero();
  double scale = 0.0;
  for (double lam : {0.0, 0.25, 0.5, 1.0}) scale = std::max(scale, std::abs(dimension_shift_Fm(f_m, n, m, lam).value));
  if (!(scale > 0.0)) return SpectralProfile::zero();
  auto value = [&](double lam) { return dimension_shift_Fm(f_m, n, m, lam).value.real(); };
  return tabulate_transform(value, scale, profile_rate(f_m), min_lambda_max);
}

GaussianPolyFit fit_gaussian_poly(const SpectralProfile& F, double b, const FitOptions& opt) {
  if (!(b > 0.0)) fail(ErrorCode::InvalidArgument, "fit needs b > 0");
  if (opt.samples < 8 || opt.max_degree < 0) fail(ErrorCode::InvalidArgument, "bad fit options");
  double lmax = opt.lambda_max;
  if (!(lmax > 0.0)) lmax = std::isfinite(F.reliable_max()) ? F.reliable_max() : 6.0 / std::sqrt(b);
  if (lmax < 4.0 / std::sqrt(b) * (1.0 - 1e-12))
    fail(ErrorCode::InvalidArgument, "fit needs samples up to lambda_max >= 4/sqrt(b)");

  GaussianPolyFit out;
  out.b = b;
  out.lambda_max = lmax;
  const int N = opt.samples;
  Eigen::VectorXd lam(N), y(N), w(N);
  double scale = 0.0, imag = 0.0;
  for (int i = 0; i < N; ++i) {
    lam(i) = lmax * i / (N - 1);
    const Complex v = F(lam(i));
    y(i) = v.real();
    imag = std::max(imag, std::abs(v.imag()));
    w(i) = std::exp(-b * lam(i) * lam(i));
    scale = std::max(scale, std::abs(v));
  }
  if (!(scale > 0.0)) {
    out.coefficients = {0.0};
    out.gaussian_poly = true;
    return out;
  }
  y /= scale;
  const int D = opt.max_degree;
  Eigen::MatrixXd A(N, D + 1);
  for (int i = 0; i < N; ++i) {
    const double x = 2.0 * lam(i) / lmax - 1.0;
    double prev = 1.0, cur = x;
    A(i, 0) = w(i);
    if (D >= 1) A(i, 1) = x * w(i);
    for (int j = 2; j <= D; ++j) {
      const double next = 2.0 * x * cur - prev;
      prev = cur;
      cur = next;
      A(i, j) = next * w(i);
    }
  }

  struct Trial {
    Eigen::VectorXd c;
    double residual;
    double cond;
  };
  std::vector<Trial> trials;
  auto trial = [&](int d) -> const Trial& {
    while (static_cast<int>(trials.size()) <= d) {
      const int e = static_cast<int>(trials.size());
      const Eigen::MatrixXd Ad = A.leftCols(e + 1);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(Ad);
      const auto& sv = svd.singularValues();
      const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : kInf;
      const Eigen::VectorXd c = Ad.colPivHouseholderQr().solve(y);
      const double res = (Ad * c - y).cwiseAbs().maxCoeff();
      trials.push_back({c, res, cond});
    }
    return trials[d];
  };
  auto usable = [&](int d) {
    if (trial(d).cond > 1e12)
      fail(ErrorCode::IllConditioned, "fit design at degree " + std::to_string(d) + " is ill-conditioned");
  };

  int chosen = -1;
  for (int d = 0; d <= D && chosen < 0; ++d) {
    usable(d);
    const double r = trial(d).residual;
    if (r <= opt.residual_floor) {
      chosen = d;
      break;
    }
    if (d + 2 > D) break;
    usable(d + 1);
    usable(d + 2);
    if (trial(d + 1).residual > 0.99 * r && trial(d + 2).residual > 0.99 * r) chosen = d;
  }
  out.gaussian_poly = chosen >= 0;
  if (chosen < 0) chosen = D;
  const Trial& best = trial(chosen);

  // Chebyshev series in x = 2 lambda / lmax - 1 to the power basis in lambda.
  std::vector<double> coef(chosen + 1, 0.0);
  std::vector<double> T0{1.0}, T1{-1.0, 2.0 / lmax};
  for (int j = 0; j <= chosen; ++j) {
    std::vector<double> Tj;
    if (j == 0) {
      Tj = T0;
    } else if (j == 1) {
      Tj = T1;
    } else {
      Tj.assign(j + 1, 0.0);
      for (std::size_t i = 0; i < T1.size(); ++i) {
        Tj[i] -= 2.0 * T1[i];
        Tj[i + 1] += 2.0 * 2.0 / lmax * T1[i];
      }
      for (std::size_t i = 0; i < T0.size(); ++i) Tj[i] -= T0[i];
      // Tj = 2 x T_{j-1} - T_{j-2} with x = 2 lambda / lmax - 1
      T0 = T1;
      T1 = Tj;
    }
    for (std::size_t i = 0; i < Tj.size(); ++i) coef[i] += best.c(j) * scale * Tj[i];
  }
  double biggest = 0.0;
  for (int i = 0; i <= chosen; ++i) biggest = std::max(biggest, std::abs(coef[i]) * std::pow(lmax, i));
  while (coef.size() > 1 && std::abs(coef.back()) * std::pow(lmax, coef.size() - 1) <= 1e-9 * biggest)
    coef.pop_back();
  out.coefficients = coef;
  out.degree = static_cast<int>(coef.size()) - 1;
  out.residual = best.residual + imag / scale;
  return out;
}

DegreeBound degree_bound(double p, double q, double k, double l, int V, int n, int card_sigma0) {
  if (!(p >= 1.0) || !(q >= 1.0)) fail(ErrorCode::InvalidArgument, "degree bound needs p, q >= 1");
  const double first = p == 1.0 ? k + 1.0 : 2.0 * card_sigma0 * (p - 1.0) / p + k / p + 1.0;
  const double second = (l - V - n) / q;
  return {std::min(first, second), l <= q + V + n};
}

HeatCharacterization characterize_heat(const RankOneSpace& space, const RadialProfile& f, double t, double p,
                                       double q, double k, double l, const CharacterizeOptions& opt) {
  if (!(t > 0.0)) fail(ErrorCode::InvalidArgument, "heat time must be positive");
  const JacobiParams J = space.jacobi();
  const double V = space.V;
  if (opt.heat_ratio_weight) {
    if (!(k <= p + 1.0) || !(l > V + 1.0) || !(l <= q + 2.0 * space.alpha + 2.0))
      fail(ErrorCode::HypothesisViolated, "heat-ratio route needs k <= p+1 and V+1 < l <= q+2 alpha+2");
  } else {
    if (!(k > (space.dim_X - 1) * p + 3.0) || !(l > V + 1.0) || !(l <= q + V + 1.0))
      fail(ErrorCode::HypothesisViolated, "needs k > (d_X-1)p + 3 and V+1 < l <= q+V+1");
  }
  HeatCharacterization out;

  long c0 = evaluation_counter();
  const CPConditionSpec sc =
      opt.heat_ratio_weight ? CPConditionSpec::heat_ratio(p, t, k) : CPConditionSpec::space(p, 1.0 / (4.0 * t), k);
  const IntegralVerdict sv = evaluate_cp_space(space, f, sc);
  record(out, "space-verdict", sv, evaluation_counter() - c0);
  if (sv.kind != VerdictKind::Convergent && fails(out, "space-verdict")) return out;

  c0 = evaluation_counter();
  const SpectralProfile F = spherical_transform_profile(J, f, 4.2 / std::sqrt(t));
  const IntegralVerdict fv = evaluate_cp_spectral(space, F, CPConditionSpec::spectral(q, t, l));
  record(out, "spectral-verdict", fv, evaluation_counter() - c0);
  if (fv.kind != VerdictKind::Convergent && fails(out, "spectral-verdict")) return out;

  c0 = evaluation_counter();
  const GaussianPolyFit fit = fit_gaussian_poly(F, t);
  out.stages.push_back({"spectral-fit", "degree=" + std::to_string(fit.degree), fit.residual, 0.0,
                        evaluation_counter() - c0});
  if ((!fit.gaussian_poly || fit.degree != 0) && fails(out, "spectral-fit")) return out;

  const double scale = fit.coefficients[0] * std::exp(J.rho() * J.rho() * t);
  out.stages.push_back({"constant", "scale", scale, fit.residual * std::abs(scale), 0});
  if (!(scale > 0.0) && fails(out, "constant")) return out;
  out.scale = scale;

  if (opt.normalization_gate) {
    c0 = evaluation_counter();
    const double mass = total_mass(J, f);
    const bool ok = std::abs(mass - 1.0) <= 1e-6;
    out.stages.push_back({"normalization", ok ? "pass" : "fail", mass, std::abs(mass - scale),
                          evaluation_counter() - c0});
    if (!ok && fails(out, "normalization")) return out;
  }
  out.is_heat_kernel = true;
  return out;
}

HeatCharacterization characterize_gaussian(const SolidFunction& f, double t, double p, double q, double k,
                                           double l) {
  if (!(t > 0.0)) fail(ErrorCode::InvalidArgument, "heat time must be positive");
  if (f.terms.empty()) fail(ErrorCode::InvalidArgument, "empty solid function");
  const int n = f.dimension();
  if (!(k > n) || !(k <= n + p) || !(l > 1.0) || !(l <= 1.0 + q))
    fail(ErrorCode::HypothesisViolated, "needs n < k <= n+p and 1 < l <= 1+q");
  HeatCharacterization out;
  double scale = 0.0;
  for (const auto& term : f.terms) {
    const int m = term.harmonic.m;
    const std::string tag = "[m=" + std::to_string(m) + "]";
    long c0 = evaluation_counter();
    const IntegralVerdict sv = evaluate_cp_space_euclidean(term, CPConditionSpec::space(p, 1.0 / (4.0 * t), k));
    record(out, "space-verdict" + tag, sv, evaluation_counter() - c0);
    if (sv.kind != VerdictKind::Convergent && fails(out, "space-verdict")) return out;

    c0 = evaluation_counter();
    const SpectralProfile F = euclidean_Fm_profile(n, m, term.radial, 4.2 / std::sqrt(t));
    const IntegralVerdict fv = evaluate_cp_spectral_euclidean(F, CPConditionSpec::spectral(q, t, l));
    record(out, "spectral-verdict" + tag, fv, evaluation_counter() - c0);
    if (fv.kind != VerdictKind::Convergent && fails(out, "spectral-verdict")) return out;
    if (m > 0 && fails(out, "harmonic-degree")) return out;

    c0 = evaluation_counter();
    const GaussianPolyFit fit = fit_gaussian_poly(F, t);
    out.stages.push_back({"spectral-fit" + tag, "degree=" + std::to_string(fit.degree), fit.residual, 0.0,
                          evaluation_counter() - c0});
    if ((!fit.gaussian_poly || fit.degree != 0) && fails(out, "spectral-fit")) return out;
    const double s0 = term.harmonic(SpherePoint{1.0, 0.0, 0.0});
    scale += fit.coefficients[0] * std::pow(2.0 * M_PI, 0.5 * n) * s0;
  }
  out.stages.push_back({"constant", "scale", scale, 0.0, 0});
  out.scale = scale;
  out.is_heat_kernel = true;
  return out;
}

KTypeFilter ktype_cutoff_filter(const RankOneSpace& space,
                                const std::vector<std::pair<KType, RadialProfile>>& components, double p,
                                double k, double t) {
  if (!(p >= 1.0) || !(k > 0.0)) fail(ErrorCode::InvalidArgument, "filter needs p >= 1 and k > 0");
  KTypeFilter out;
  const double cut = (k - 1.0) / p;
  for (const auto& [delta, prof] : components) {
    if (!delta.valid()) fail(ErrorCode::InvalidArgument, "invalid K-type");
    if (delta.p < cut) {
      out.survivors.push_back(delta);
      continue;
    }
    const IntegralVerdict v = evaluate_cp_space(space, prof, CPConditionSpec::heat_ratio(p, t, k));
    if (v.kind != VerdictKind::Divergent) out.consistent = false;
    out.rejected.emplace_back(delta, v);
  }
  return out;
}

}  // namespace cpheat
