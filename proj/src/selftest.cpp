#include "cpheat/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "cpheat/cpverify.hpp"
#include "cpheat/euclidean.hpp"
#include "cpheat/heat.hpp"
#include "cpheat/jacobi.hpp"
#include "cpheat/profile.hpp"
#include "cpheat/sl2c.hpp"
#include "cpheat/specfun.hpp"
#include "cpheat/symmspace.hpp"

namespace cpheat {

namespace {

// Uniform draws from the raw 64-bit stream, so the sequence does not depend on the
// standard library's distribution implementations.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(gen_() >> 11) * 0x1p-53; }
  int integer(int lo, int hi) { return lo + static_cast<int>((gen_() >> 11) % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::mt19937_64 gen_;
};

class Suite {
 public:
  explicit Suite(const SelftestOptions& opt) : opt_(opt) {}

  void check(const std::string& module, const std::string& name, double value, double tol) {
    const double t = opt_.tolerance ? *opt_.tolerance : tol;
    rows_.push_back({module, name, value, t, value <= t});
  }
  // Count of violated conditions; passes at zero.
  void count(const std::string& module, const std::string& name, int violations) {
    rows_.push_back({module, name, static_cast<double>(violations), 0.0, violations == 0});
  }

  std::vector<SelftestRow> rows() && { return std::move(rows_); }

 private:
  SelftestOptions opt_;
  std::vector<SelftestRow> rows_;
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

const char* kPresets[] = {"H3", "Hn_real(4)", "Hn_complex(2)"};

void numkernel_checks(Suite& s, Draw& d) {
  QuadratureSpec spec;
  spec.abs_tol = 1e-14;
  spec.rel_tol = 1e-14;
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> c(21);
    for (double& x : c) x = d.uniform(-1.0, 1.0);
    double exact = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) exact += c[j] / (j + 1.0);
    auto poly = [&](double x) {
      double acc = 0.0;
      for (std::size_t j = c.size(); j-- > 0;) acc = acc * x + c[j];
      return acc;
    };
    worst = std::max(worst, std::abs(integrate(poly, 0.0, 1.0, spec).value - exact));
  }
  s.check("numkernel", "polynomial exactness degree 20", worst, 1e-12);

  const double t = d.uniform(0.1, 1.0), r = d.uniform(0.5, 5.0);
  QuadratureSpec q;
  q.abs_tol = 1e-14;
  q.rel_tol = 1e-12;
  auto heat = [&](double l) { return std::exp(-t * l * l) * l * std::sin(l * r); };
  const double a = semiinfinite_gaussian_quad(heat, 0.0, t, q).value;
  std::vector<double> unit_breaks(61);
  for (int i = 0; i <= 60; ++i) unit_breaks[i] = i;
  const double b = integrate(heat, unit_breaks, q).value;
  s.check("numkernel", "semi-infinite vs long interval", std::abs(a - b), 1e-10);

  auto windows = [](int count, const std::function<double(double)>& f) {
    std::vector<std::pair<double, double>> w;
    QuadratureSpec ws;
    ws.abs_tol = 1e-300;
    ws.rel_tol = 1e-10;
    for (int i = 0; i < count; ++i) {
      const double lo = std::ldexp(1.0, i - 2), hi = 2.0 * lo;
      w.emplace_back(lo, integrate(f, lo, hi, ws).value);
    }
    return w;
  };
  auto gauss = [](double x) { return std::exp(-x * x) * x * x; };
  auto harmonic = [](double x) { return 1.0 / (1.0 + x); };
  int bad = 0;
  for (int n : {6, 12}) {
    if (tail_verdict(windows(n, gauss)).kind != VerdictKind::Convergent) ++bad;
    if (tail_verdict(windows(n, harmonic)).kind != VerdictKind::Divergent) ++bad;
  }
  s.count("numkernel", "tail verdict Gaussian/harmonic under window doubling", bad);

  const double ra = d.uniform(0.5, 2.0), rb = d.uniform(0.5, 2.0), x = d.uniform(-1.0, 1.0);
  const RadialProfile fa = RadialProfile::from_function([ra](double y) { return std::exp(-ra * y * y); },
                                                         DecayModel::gaussian(ra));
  const RadialProfile fb = RadialProfile::from_function([rb](double y) { return std::exp(-rb * y * y); },
                                                         DecayModel::gaussian(rb));
  QuadratureSpec cs;
  cs.abs_tol = 1e-14;
  cs.rel_tol = 1e-13;
  const double ab = convolve_1d(fa, GaussianKernel{[rb](double y) { return std::exp(-rb * y * y); }, rb}, x, cs);
  const double ba = convolve_1d(fb, GaussianKernel{[ra](double y) { return std::exp(-ra * y * y); }, ra}, x, cs);
  s.check("numkernel", "convolution symmetry", std::abs(ab - ba), 1e-10);
}

void specfun_checks(Suite& s, Draw& d) {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Complex z;
    do z = Complex(d.uniform(0.01, 20.0), d.uniform(-20.0, 20.0));
    while (std::abs(z) > 20.0);
    const Complex lhs = log_gamma(z + 1.0);
    const Complex rhs = std::log(z) + log_gamma(z);
    worst = std::max(worst, std::abs(std::exp(lhs - rhs) - 1.0));
  }
  s.check("specfun", "gamma recurrence", worst, 1e-12);

  worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double lam = d.uniform(0.0, 10.0), al = d.uniform(0.0, 3.0), rr = d.uniform(0.0, 3.0);
    const Complex a(0.5 * (al + 1.0), 0.5 * lam), b(0.5 * (al + 1.0), -0.5 * lam), c(al + 1.0, 0.0);
    const double z = -std::sinh(rr) * std::sinh(rr);
    const Complex fm = gauss_2f1(a - 1.0, b, c, z), f0 = gauss_2f1(a, b, c, z), fp = gauss_2f1(a + 1.0, b, c, z);
    const Complex res = (c - a) * fm + (2.0 * a - c + (b - a) * z) * f0 + a * (z - 1.0) * fp;
    const double scale = std::abs((c - a) * fm) + std::abs((2.0 * a - c + (b - a) * z) * f0) +
                         std::abs(a * (z - 1.0) * fp);
    worst = std::max(worst, std::abs(res) / scale);
  }
  s.check("specfun", "2F1 contiguous relation", worst, 1e-9);

  worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    const double nu = d.uniform(1.0, 20.0), x = d.uniform(0.5, 50.0);
    const double lhs = bessel_j(nu - 1.0, x) + bessel_j(nu + 1.0, x);
    const double rhs = 2.0 * nu / x * bessel_j(nu, x);
    const double scale = std::abs(bessel_j(nu - 1.0, x)) + std::abs(bessel_j(nu + 1.0, x)) + std::abs(rhs);
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  s.check("specfun", "Bessel recurrence", worst, 1e-9);

  int bad = 0;
  for (int i = 0; i < 20; ++i) {
    const Complex z(d.uniform(-5.0, 5.0), d.uniform(-5.0, 5.0));
    const int m = d.integer(0, 8);
    if (pochhammer(z, m + 1) != pochhammer(z, m) * (z + static_cast<double>(m))) ++bad;
  }
  s.count("specfun", "Pochhammer composition", bad);
}

void euclidean_checks(Suite& s, Draw& d) {
  QuadratureSpec q;
  q.abs_tol = 1e-14;
  q.rel_tol = 1e-12;
  double worst_planch = 0.0, worst_imag = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const int n = d.integer(2, 3), m = d.integer(0, 2);
    const double t = d.uniform(0.2, 1.0);
    const RadialProfile f = gauss_heat_profile(n, t, m);
    const double lhs = integrate([&](double r) { return f(r) * f(r) * std::pow(r, n - 1); }, 0.0,
                                 f.effective_radius(), q).value;
    const SpectralProfile F = euclidean_Fm_profile(n, m, f);
    const double rhs = integrate(
        [&](double l) {
          const double v = std::abs(F(l));
          return v * v * std::pow(l, 2 * m + n - 1);
        },
        0.0, F.reliable_max(), q).value;
    worst_planch = std::max(worst_planch, rel(rhs, lhs));
    for (double l = 0.25; l <= 5.0; l += 0.25)
      worst_imag = std::max(worst_imag, std::abs(dimension_shift_Fm(f, n, m, l).value.imag()));
  }
  s.check("euclidean", "Plancherel on r^m p_t S_m", worst_planch, 1e-6);
  s.check("euclidean", "F_m real", worst_imag, 1e-10);

  double worst = 0.0;
  for (int trial = 0; trial < 2; ++trial) {
    const int n = d.integer(2, 3), m = d.integer(1, 4);
    const double t = d.uniform(0.3, 1.0);
    const RadialProfile fm = gauss_heat_profile(n, t, m);
    const SphericalHarmonicSpec S = SphericalHarmonicSpec::standard(n, m, n == 2 ? m : 0);
    const SolidFunction f{{HarmonicTerm{fm, S}}};
    auto ds = [&](double l) {
      const DimensionShift v = dimension_shift_Fm(fm, n, m, l);
      return v.constant * v.value;
    };
    const Complex c = fourier_coeff_Fm(f, S, 1.0) / ds(1.0);
    double sup = 0.0, err = 0.0;
    for (double l : {0.5, 1.5, 2.5, 3.5}) {
      const Complex a = fourier_coeff_Fm(f, S, l);
      sup = std::max(sup, std::abs(a));
      err = std::max(err, std::abs(a - c * ds(l)));
    }
    worst = std::max(worst, err / sup);
  }
  s.check("euclidean", "dimension shift two routes", worst, 1e-6);

  // Contrapositive form: an input with L^2 norm above 1e-6 has some F_m above 1e-9.
  int bad = 0;
  for (int m = 0; m <= 4; ++m) {
    const double c = d.uniform(-1.0, 1.0), tt = d.uniform(0.2, 1.0);
    const RadialProfile f = gauss_heat_profile(3, tt, m).scaled(c);
    const double l2 = integrate([&](double r) { return f(r) * f(r) * r * r; }, 0.0, 20.0, q).value;
    double fmax = 0.0;
    for (double l = 0.25; l <= 5.0; l += 0.25) fmax = std::max(fmax, std::abs(dimension_shift_Fm(f, 3, m, l).value));
    if (l2 > 1e-6 && fmax <= 1e-9) ++bad;
  }
  s.count("euclidean", "uniqueness surrogate", bad);
}

void jacobi_checks(Suite& s, Draw& d) {
  const RankOneSpace space = preset(kPresets[d.integer(0, 2)]);
  const JacobiParams J = space.jacobi();
  const double h = 2.5e-4;
  double worst = 0.0;
  for (double lam : {0.5, 1.0, 3.0}) {
    const JacobiPhi phi(J, lam);
    for (int i = 0; i < 8; ++i) {
      const double r = d.uniform(0.1, 10.0);
      const Complex res = jacobi_operator_fd(J, 0, 0, [&](double x) { return phi(x); }, r, h) +
                          (lam * lam + J.rho() * J.rho()) * phi(r);
      worst = std::max(worst, std::abs(res) / (1.0 + lam * lam));
    }
  }
  s.check("jacobi", "ODE residual " + space.name, worst, 1e-5);

  worst = 0.0;
  for (auto [p, qq] : {std::pair{2, 0}, std::pair{2, 2}, std::pair{4, 0}}) {
    for (double lam : {0.5, 1.0, 3.0}) {
      for (int i = 0; i < 4; ++i) {
        const double r = d.uniform(0.1, 10.0);
        auto f = [&](double x) { return jacobi_assoc_phi(J, p, qq, lam, x); };
        const Complex res = jacobi_operator_fd(J, p, qq, f, r, h) + (lam * lam + J.rho() * J.rho()) * f(r);
        worst = std::max(worst, std::abs(res) / (1.0 + lam * lam));
      }
    }
  }
  s.check("jacobi", "associated ODE residual " + space.name, worst, 1e-5);

  worst = 0.0;
  double worst_even = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double lam = d.uniform(0.0, 10.0), r = d.uniform(0.0, 5.0);
    const Complex a = jacobi_phi(J, lam, r);
    const Complex b = std::pow(std::cosh(r), -2.0 * J.beta) * jacobi_phi({J.alpha, -J.beta}, lam, r);
    worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-300));
    worst_even = std::max(worst_even, std::abs(a - jacobi_phi(J, -lam, r)) / std::max(std::abs(a), 1e-300));
  }
  s.check("jacobi", "beta-flip identity", worst, 1e-9);
  s.check("jacobi", "evenness in lambda", worst_even, 1e-12);
}

void symmspace_checks(Suite& s, Draw& d) {
  int bad = 0;
  for (const RankOneSpace& sp : catalog()) {
    if (std::abs(sp.rho0 - (sp.alpha + sp.beta + 1.0)) > 1e-15) ++bad;
    try {
      sp.validate();
    } catch (const NumericError&) {
      ++bad;
    }
  }
  s.count("symmspace", "catalog invariants", bad);

  const RankOneSpace space = preset(kPresets[d.integer(0, 2)]);
  double qmin = kInf, worst_even = 0.0;
  for (const KType& delta : ktypes_below(space, 5.0)) {
    for (int i = 0; i < 10; ++i) {
      const double lam = d.uniform(0.0, 20.0), r = d.uniform(0.1, 4.0);
      qmin = std::min(qmin, std::abs(kostant_q(space, delta, lam)));
      const Complex a = eisenstein_phi1(space, delta, lam, r) / kostant_q(space, delta, lam);
      const Complex b = eisenstein_phi1(space, delta, -lam, r) / kostant_q(space, delta, -lam);
      worst_even = std::max(worst_even, std::abs(a - b) / std::max(std::abs(a), 1e-300));
    }
  }
  s.count("symmspace", "Kostant polynomial zero-free " + space.name, qmin > 0.0 ? 0 : 1);
  s.check("symmspace", "normalized Phi1 evenness " + space.name, worst_even, 1e-9);

  // e^{-rho r} <= Xi(r) <= C (1+r) e^{-rho r}. The upper ratio converges, so its increments
  // over successive doublings of r must shrink.
  int xi_bad = 0;
  for (double r = 0.0; r <= 50.0; r += 0.25)
    if (log_xi_function(space, r) < -space.rho0 * r - 1e-12) ++xi_bad;
  s.count("symmspace", "Xi lower bound " + space.name, xi_bad);
  auto upper = [&](double r) { return std::exp(log_xi_function(space, r) + space.rho0 * r) / (1.0 + r); };
  const double d1 = std::abs(upper(100.0) - upper(50.0)), d2 = std::abs(upper(200.0) - upper(100.0));
  s.check("symmspace", "Xi upper ratio increments shrink " + space.name, std::max(0.0, d2 - 0.75 * d1), 1e-12);
}

void heat_checks(Suite& s, Draw& d) {
  const RankOneSpace space = preset(kPresets[d.integer(0, 2)]);
  const JacobiParams J = space.jacobi();
  const double times[] = {0.1, 0.5, 1.0};
  const double t = times[d.integer(0, 2)];
  const HeatKernel h(J, t);
  int negative = 0;
  for (double r = 0.0; r <= 12.0; r += 0.5)
    if (!(h(r) > 0.0)) ++negative;
  s.count("heat", "positivity " + space.name, negative);

  const RadialProfile hp = h.profile();
  double worst = 0.0;
  for (int i = 0; i < 6; ++i) {
    const double lam = d.uniform(0.0, 5.0);
    worst = std::max(worst, std::abs(jacobi_transform(hp, J, lam).real() - std::exp(-(lam * lam + J.rho() * J.rho()) * t)));
  }
  s.check("heat", "spectral fidelity " + space.name, worst, 1e-6);
  s.check("heat", "normalization " + space.name, std::abs(jacobi_transform(hp, J, Complex(0.0, J.rho())).real() - 1.0),
          1e-6);

  worst = 0.0;
  const JacobiParams H3{0.5, -0.5};
  for (int i = 0; i < 6; ++i) {
    const double tt = d.uniform(0.25, 1.0), r = d.uniform(0.0, 6.0);
    worst = std::max(worst, rel(heat_kernel(H3, tt, r), heat_kernel_h3(tt, r)));
  }
  s.check("heat", "H3 closed form", worst, 1e-7);

  const RatioRange coarse = ady_ratio_scan(J, t, 12.0, 0.02);
  const RatioRange fine = ady_ratio_scan(J, t, 12.0, 0.01);
  s.check("heat", "ADY interval refinement " + space.name, rel(fine.spread(), coarse.spread()), 0.05);
}

void sl2c_checks(Suite& s, Draw& d) {
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    CounterexampleSpec spec;
    spec.psi.zeta = d.uniform(0.05, 0.24);
    const int deg = 2 * d.integer(0, 2);
    spec.P.assign(deg + 1, 0.0);
    for (int j = 0; j <= deg; j += 2) spec.P[j] = d.uniform(-1.0, 1.0);
    if (deg > 0 && spec.P[deg] == 0.0) spec.P[deg] = 1.0;
    worst = std::max(worst, two_route_discrepancy(spec));
  }
  s.check("sl2c", "two routes on random (zeta, P)", worst, 1e-7);

  CounterexampleSpec spec;
  spec.P = {1.0, 0.0, d.uniform(-1.0, 1.0)};
  const Counterexample ce(spec);
  double odd = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double lam = d.uniform(0.0, 15.0);
    odd = std::max(odd, std::abs(ce.g_hat(lam) - ce.g_hat(-lam)) / std::max(std::abs(ce.g_hat(lam)), 1e-300));
  }
  s.check("sl2c", "ghat even", odd, 1e-10);

  const GramCheck g = gram_rank(default_gram_family());
  s.count("sl2c", "Gram rank 4", g.rank == 4 ? 0 : 1);
}

void cpverify_checks(Suite& s, Draw& d) {
  const double b = d.uniform(0.3, 1.0);
  double worst = 0.0;
  int wrong_degree = 0;
  for (int deg = 0; deg <= 6; ++deg) {
    std::vector<double> c(deg + 1);
    for (double& x : c) x = d.uniform(0.5, 1.5);
    const SpectralProfile F = SpectralProfile::from_function(
        [c, b](double l) {
          double acc = 0.0;
          for (std::size_t j = c.size(); j-- > 0;) acc = acc * l + c[j];
          return Complex(acc * std::exp(-b * l * l));
        },
        b);
    const GaussianPolyFit fit = fit_gaussian_poly(F, b);
    worst = std::max(worst, fit.residual);
    if (fit.degree != deg) ++wrong_degree;
  }
  s.check("cpverify", "fit recovers polynomials to degree 6", worst, 1e-8);
  s.count("cpverify", "fit degree", wrong_degree);

  const RankOneSpace space = preset("H3");
  const double t = 0.5, c = d.uniform(0.5, 3.0);
  CharacterizeOptions ungated;
  ungated.normalization_gate = false;
  const auto hc = characterize_heat(space, HeatKernel(space.jacobi(), t).profile().scaled(c), t, 2, 2, 8, 5, ungated);
  s.check("cpverify", "scale equivariance", hc.is_heat_kernel ? rel(hc.scale, c) : 1.0, 1e-5);

  int bad = 0;
  for (int q = 1; q <= 3; ++q)
    for (int k = 1; k <= 8; ++k)
      for (int l = 3; l <= 10; ++l) {
        const double v = degree_bound(2, q, k, l, 2, 1, 1).value;
        if (degree_bound(2, q, k + 1, l, 2, 1, 1).value < v) ++bad;
        if (degree_bound(2, q, k, l + 1, 2, 1, 1).value < v) ++bad;
        if (degree_bound(2, q + 1, k, l, 2, 1, 1).value > v) ++bad;
      }
  s.count("cpverify", "degree bound monotone", bad);
}

void io_checks(Suite& s, Draw& d) {
  CsvTable t;
  t.header = {"x", "label"};
  for (int i = 0; i < 50; ++i) {
    const double x = std::ldexp(d.uniform(-1.0, 1.0), d.integer(-300, 300));
    t.rows.push_back({format_double(x), i % 3 == 0 ? "a,\"b\"" : "plain"});
  }
  std::ostringstream out;
  write_csv(out, t);
  const CsvTable back = read_csv(out.str());
  int bad = back.rows.size() == t.rows.size() ? 0 : 1;
  for (std::size_t i = 0; i < std::min(back.rows.size(), t.rows.size()); ++i) {
    if (parse_double(back.rows[i][0]) != parse_double(t.rows[i][0])) ++bad;
    if (back.rows[i][1] != t.rows[i][1]) ++bad;
  }
  s.count("io", "CSV round trip", bad);
}

}  // namespace

std::vector<SelftestRow> run_selftest(const SelftestOptions& opt) {
  Suite s(opt);
  Draw d(opt.seed);
  numkernel_checks(s, d);
  specfun_checks(s, d);
  euclidean_checks(s, d);
  jacobi_checks(s, d);
  symmspace_checks(s, d);
  heat_checks(s, d);
  sl2c_checks(s, d);
  cpverify_checks(s, d);
  io_checks(s, d);
  return std::move(s).rows();
}

CsvTable selftest_table(const std::vector<SelftestRow>& rows) {
  CsvTable t;
  t.header = {"module", "invariant", "value", "tolerance", "pass"};
  for (const auto& r : rows)
    t.rows.push_back({r.module, r.invariant, format_double(r.value), format_double(r.tolerance), r.pass ? "1" : "0"});
  return t;
}

}  // namespace cpheat
