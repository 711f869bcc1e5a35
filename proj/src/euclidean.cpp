#include "cpheat/euclidean.hpp"

#include <cmath>
#include <memory>

#include "cpheat/specfun.hpp"

namespace cpheat {

namespace {

constexpr int kMaxDegree = 4;

void check_dimension(int n) {
  if (n != 2 && n != 3) fail(ErrorCode::UnsupportedDimension, "sphere quadrature supports n = 2, 3 only");
}

double norm3(const SpherePoint& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

// |x|^m S(x / |x|), the solid extension.
double solid(const SphericalHarmonicSpec& s, const SpherePoint& x) {
  const double r = s.n == 2 ? std::hypot(x[0], x[1]) : norm3(x);
  if (r == 0.0) return s.m == 0 ? s(SpherePoint{1.0, 0.0, 0.0}) : 0.0;
  SpherePoint u{x[0] / r, x[1] / r, s.n == 2 ? 0.0 : x[2] / r};
  return std::pow(r, s.m) * s(u);
}

// 2^nu Gamma(nu + 1)
double bessel_origin_scale(double nu) { return std::exp(nu * std::log(2.0) + std::lgamma(nu + 1.0)); }

// Composite Gauss-Legendre nodes on [0, R].
struct RadialRule {
  std::vector<double> r, w;
};

RadialRule radial_rule(double R, double panel) {
  std::vector<double> x, w;
  gauss_legendre(20, x, w);
  RadialRule out;
  const int panels = std::max(1, static_cast<int>(std::ceil(R / panel)));
  const double h = R / panels;
  for (int p = 0; p < panels; ++p) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      out.r.push_back(h * (p + 0.5 * (x[j] + 1.0)));
      out.w.push_back(0.5 * h * w[j]);
    }
  }
  return out;
}

}  // namespace

double log_gauss_heat(int n, double t, double r) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "dimension must be positive");
  if (!(t > 0.0)) fail(ErrorCode::InvalidArgument, "heat time must be positive");
  return -0.5 * n * std::log(4.0 * M_PI * t) - r * r / (4.0 * t);
}

double gauss_heat(int n, double t, double r) { return std::exp(log_gauss_heat(n, t, r)); }

RadialProfile gauss_heat_profile(int n, double t, int m) {
  if (m < 0) fail(ErrorCode::InvalidArgument, "degree must be non-negative");
  const double c = log_gauss_heat(n, t, 0.0);
  const double rate = 1.0 / (4.0 * t);
  return RadialProfile::from_function(
      [n, t, m](double r) { return std::pow(r, m) * gauss_heat(n, t, r); }, DecayModel::gaussian(rate),
      [c, m](double r) { return m == 0 ? c : (r == 0.0 ? kNegInf : c + m * std::log(r)); });
}

double sphere_area(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "dimension must be positive");
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

double radial_fourier(int n, const RadialProfile& f0, double rho, const QuadratureSpec& spec) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "dimension must be positive");
  if (!(rho >= 0.0)) fail(ErrorCode::InvalidArgument, "radial_fourier needs rho >= 0");
  if (f0.is_zero()) return 0.0;
  if (f0.decay().kind == DecayModel::Kind::Unknown)
    fail(ErrorCode::DecayUnknown, "radial_fourier needs a declared decay model");
  const double R = f0.effective_radius();
  if (!(R > 0.0)) return 0.0;
  const double nu = 0.5 * (n - 2);

  std::vector<double> pts{0.0};
  const double step = rho > 0.0 ? std::min(1.0, M_PI / rho) : 1.0;
  for (double x = step; x < R - 1e-9; x += step) pts.push_back(x);
  pts.push_back(R);

  // Bound on the transform, used to set a cancellation-aware absolute tolerance.
  const auto l1 = integrate([&](double s) { return std::abs(f0(s)) * std::pow(s, n - 1); }, pts, spec);
  const double scale = l1.value / bessel_origin_scale(nu);
  if (rho == 0.0) {
    const auto r0 = integrate([&](double s) { return f0(s) * std::pow(s, n - 1); }, pts, spec);
    return r0.value / bessel_origin_scale(nu);
  }
  QuadratureSpec s = spec;
  s.abs_tol = std::max(1e-15 * scale, 1e-300);
  s.rel_tol = std::min(spec.rel_tol, 1e-11);
  s.max_subdivisions = std::max(spec.max_subdivisions, 4000);
  auto integrand = [&](double x) {
    const double k = n == 1 ? std::sqrt(2.0 / (M_PI * rho * x)) * std::cos(rho * x) : bessel_j(nu, rho * x);
    return f0(x) * k * std::pow(x, 0.5 * n);
  };
  const auto res = integrate(integrand, pts, s);
  if (!res.converged && res.error > 1e-10 * scale)
    fail(ErrorCode::BudgetExceeded, "radial Fourier quadrature did not converge");
  return res.value * std::pow(rho, -nu);
}

void SphericalHarmonicSpec::validate() const {
  check_dimension(n);
  if (m < 0) fail(ErrorCode::InvalidArgument, "harmonic degree must be non-negative");
  if (!evaluator) fail(ErrorCode::InvalidArgument, "harmonic has no evaluator");
  const double norm = sphere_quadrature(n, [this](const SpherePoint& x) { return std::pow((*this)(x), 2); },
                                        std::max(12, m + 4));
  if (std::abs(norm - 1.0) > 1e-6) fail(ErrorCode::InvalidArgument, "harmonic is not L2-normalized");
  // Finite-difference Laplacian of the solid extension at a few points of the unit sphere.
  const double h = 1e-3;
  const SpherePoint probes[] = {{0.6, 0.48, 0.64}, {-0.36, 0.8, 0.48}, {0.0, -0.6, -0.8}, {0.8, -0.6, 0.0}};
  for (SpherePoint x : probes) {
    if (n == 2) {
      const double r = std::hypot(x[0], x[1]);
      if (r == 0.0) continue;
      x = {x[0] / r, x[1] / r, 0.0};
    }
    const double u0 = solid(*this, x);
    double lap = 0.0;
    for (int d = 0; d < n; ++d) {
      SpherePoint a = x, b = x;
      a[d] += h;
      b[d] -= h;
      lap += (solid(*this, a) - 2.0 * u0 + solid(*this, b)) / (h * h);
    }
    if (std::abs(lap) > 1e-4 * (1.0 + m * m))
      fail(ErrorCode::InvalidArgument, "solid extension of the harmonic is not harmonic");
  }
}

SphericalHarmonicSpec SphericalHarmonicSpec::standard(int n, int m, int k) {
  check_dimension(n);
  if (m < 0 || std::abs(k) > m) fail(ErrorCode::InvalidArgument, "harmonic order must satisfy |k| <= m");
  SphericalHarmonicSpec s;
  s.n = n;
  s.m = m;
  if (n == 2) {
    if (std::abs(k) != m) fail(ErrorCode::InvalidArgument, "circle harmonics need |k| = m");
    if (m == 0) {
      s.evaluator = [](const SpherePoint&) { return 1.0 / std::sqrt(2.0 * M_PI); };
    } else if (k > 0) {
      s.evaluator = [m](const SpherePoint& x) { return std::cos(m * std::atan2(x[1], x[0])) / std::sqrt(M_PI); };
    } else {
      s.evaluator = [m](const SpherePoint& x) { return std::sin(m * std::atan2(x[1], x[0])) / std::sqrt(M_PI); };
    }
    return s;
  }
  const unsigned ka = static_cast<unsigned>(std::abs(k));
  s.evaluator = [m, k, ka](const SpherePoint& x) {
    const double theta = std::acos(std::clamp(x[2], -1.0, 1.0));
    const double y = std::sph_legendre(static_cast<unsigned>(m), ka, theta);
    if (k == 0) return y;
    const double phi = std::atan2(x[1], x[0]);
    return M_SQRT2 * y * (k > 0 ? std::cos(k * phi) : std::sin(-k * phi));
  };
  return s;
}

SphereRule sphere_rule(int n, int order) {
  check_dimension(n);
  if (order < 1) fail(ErrorCode::InvalidArgument, "quadrature order must be positive");
  SphereRule rule;
  const int nphi = 2 * order;
  const double dphi = 2.0 * M_PI / nphi;
  if (n == 2) {
    for (int j = 0; j < nphi; ++j) {
      const double phi = j * dphi;
      rule.points.push_back({std::cos(phi), std::sin(phi), 0.0});
      rule.weights.push_back(dphi);
    }
    return rule;
  }
  std::vector<double> z, w;
  gauss_legendre(order, z, w);
  for (int i = 0; i < order; ++i) {
    const double s = std::sqrt(std::max(0.0, 1.0 - z[i] * z[i]));
    for (int j = 0; j < nphi; ++j) {
      const double phi = j * dphi;
      rule.points.push_back({s * std::cos(phi), s * std::sin(phi), z[i]});
      rule.weights.push_back(w[i] * dphi);
    }
  }
  return rule;
}

double sphere_quadrature(int n, const std::function<double(const SpherePoint&)>& g, int order) {
  const SphereRule rule = sphere_rule(n, order);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.points.size(); ++i) acc += rule.weights[i] * g(rule.points[i]);
  return acc;
}

int SolidFunction::dimension() const {
  if (terms.empty()) fail(ErrorCode::UnsupportedStructure, "empty harmonic expansion");
  const int n = terms.front().harmonic.n;
  for (const auto& t : terms) {
    if (t.harmonic.n != n) fail(ErrorCode::UnsupportedStructure, "terms live in different dimensions");
    if (t.harmonic.m > kMaxDegree) fail(ErrorCode::UnsupportedStructure, "harmonic degree above 4");
    if (!t.harmonic.evaluator) fail(ErrorCode::UnsupportedStructure, "harmonic has no evaluator");
  }
  check_dimension(n);
  return n;
}

double SolidFunction::operator()(const SpherePoint& x) const {
  double acc = 0.0;
  for (const auto& t : terms) {
    const double r = t.harmonic.n == 2 ? std::hypot(x[0], x[1]) : norm3(x);
    SpherePoint u = r > 0.0 ? SpherePoint{x[0] / r, x[1] / r, t.harmonic.n == 2 ? 0.0 : x[2] / r}
                            : SpherePoint{1.0, 0.0, 0.0};
    acc += t.radial(r) * t.harmonic(u);
  }
  return acc;
}

Complex fourier_coeff_Fm(const SolidFunction& f, const SphericalHarmonicSpec& Sm, double lambda) {
  const int n = f.dimension();
  if (Sm.n != n) fail(ErrorCode::UnsupportedStructure, "harmonic dimension does not match the function");
  if (Sm.m > kMaxDegree) fail(ErrorCode::UnsupportedStructure, "harmonic degree above 4");
  if (!(lambda > 0.0)) fail(ErrorCode::InvalidArgument, "F_m needs lambda > 0");

  // G_j(mu) = int_0^R f_j(r) r^{n-1} e^{-i mu r} dr, tabulated for mu in [-lambda, lambda].
  double R = 0.0;
  int mmax = Sm.m;
  std::vector<std::shared_ptr<PanelInterpolant<Complex>>> G;
  for (const auto& t : f.terms) {
    if (t.radial.decay().kind == DecayModel::Kind::Unknown)
      fail(ErrorCode::DecayUnknown, "F_m needs a declared decay model");
    const double Rj = t.radial.is_zero() ? 0.0 : t.radial.effective_radius();
    R = std::max(R, Rj);
    mmax = std::max(mmax, t.harmonic.m);
    if (Rj == 0.0) {
      G.push_back(nullptr);
      continue;
    }
    const RadialRule rr = radial_rule(Rj, 0.5);
    std::vector<double> g(rr.r.size());
    for (std::size_t k = 0; k < rr.r.size(); ++k)
      g[k] = rr.w[k] * t.radial(rr.r[k]) * std::pow(rr.r[k], n - 1);
    auto gr = [rr, g](double mu) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < g.size(); ++k) acc += g[k] * std::polar(1.0, -mu * rr.r[k]);
      return acc;
    };
    const double panel = std::min(2.0 * lambda, 8.0 / Rj);
    G.push_back(std::make_shared<PanelInterpolant<Complex>>(gr, -lambda, lambda, panel));
  }

  const int order = std::max(24, static_cast<int>(std::ceil(0.5 * (lambda * R + mmax + 20.0))));
  const SphereRule rule = sphere_rule(n, order);
  const std::size_t np = rule.points.size();

  // a_j(x') = w(x') S_j(x')
  std::vector<std::vector<double>> a(f.terms.size(), std::vector<double>(np));
  for (std::size_t j = 0; j < f.terms.size(); ++j)
    for (std::size_t i = 0; i < np; ++i) a[j][i] = rule.weights[i] * f.terms[j].harmonic(rule.points[i]);

  Complex total = 0.0;
  for (std::size_t io = 0; io < np; ++io) {
    const double sm = Sm(rule.points[io]);
    if (sm == 0.0) continue;
    const SpherePoint& w = rule.points[io];
    Complex fhat = 0.0;
    for (std::size_t j = 0; j < f.terms.size(); ++j) {
      if (!G[j]) continue;
      const auto& Gj = *G[j];
      const auto& aj = a[j];
      for (std::size_t ix = 0; ix < np; ++ix) {
        const SpherePoint& x = rule.points[ix];
        const double dot = x[0] * w[0] + x[1] * w[1] + x[2] * w[2];
        fhat += aj[ix] * Gj(lambda * dot);
      }
    }
    total += rule.weights[io] * sm * fhat;
  }
  return total * std::pow(2.0 * M_PI, -0.5 * n) * std::pow(lambda, -Sm.m);
}

DimensionShift dimension_shift_Fm(const RadialProfile& f_m, int n, int m, double lambda,
                                  const QuadratureSpec& spec) {
  if (n < 1 || m < 0) fail(ErrorCode::InvalidArgument, "bad dimension or degree");
  if (!(lambda >= 0.0)) fail(ErrorCode::InvalidArgument, "F_m needs lambda >= 0");
  const Complex phase = std::pow(Complex(0.0, -1.0), m);
  if (m == 0) return {radial_fourier(n, f_m, lambda, spec), phase};
  if (f_m.is_zero()) return {0.0, phase};
  // f_m(r) r^{-m} must stay bounded as r -> 0.
  const double g3 = std::abs(f_m(1e-3)) * std::pow(1e3, m);
  const double g6 = std::abs(f_m(1e-6)) * std::pow(1e6, m);
  if (!std::isfinite(g6) || (g6 > 10.0 * (g3 + 1e-300) && g6 > 1e-8))
    fail(ErrorCode::SingularAtOrigin, "f_m(r) r^{-m} is unbounded near the origin");
  const RadialProfile g = RadialProfile::from_function(
      [f_m, m](double r) { return r == 0.0 ? 0.0 : f_m(r) * std::pow(r, -m); }, f_m.decay(),
      [f_m, m](double r) { return r == 0.0 ? kNegInf : f_m.log_abs_reduced(r) - m * std::log(r); });
  return {radial_fourier(n + 2 * m, g, lambda, spec), phase};
}

}  // namespace cpheat
