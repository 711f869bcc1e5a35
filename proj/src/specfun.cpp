#include "cpheat/specfun.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace cpheat {

namespace {

constexpr double kLogPi = 1.1447298858494002;
constexpr double kHalfLog2Pi = 0.91893853320467274;
constexpr int kMaxSeriesTerms = 10000;

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// sin(pi x) and cos(pi x) with exact zeros at integers and half-integers.
void sincos_pi(double x, double& s, double& c) {
  const double n = std::round(2.0 * x);
  const double r = x - 0.5 * n;
  const double sr = std::sin(M_PI * r), cr = std::cos(M_PI * r);
  switch (static_cast<long long>(n) & 3) {
    case 0: s = sr; c = cr; break;
    case 1: s = cr; c = -sr; break;
    case 2: s = -sr; c = -cr; break;
    default: s = -cr; c = sr; break;
  }
}

// B_{2k}, k = 0..31
constexpr double kEvenBernoulli[32] = {
    1.0,
    0.16666666666666666,
    -0.03333333333333333,
    0.023809523809523808,
    -0.03333333333333333,
    0.07575757575757576,
    -0.2531135531135531,
    1.1666666666666667,
    -7.092156862745098,
    54.971177944862156,
    -529.1242424242424,
    6192.123188405797,
    -86580.25311355312,
    1425517.1666666667,
    -27298231.067816094,
    601580873.9006424,
    -15116315767.092157,
    429614643061.1667,
    -13711655205088.332,
    488332318973593.2,
    -1.9296579341940068e+16,
    8.416930475736826e+17,
    -4.0338071854059454e+19,
    2.1150748638081993e+21,
    -1.2086626522296526e+23,
    7.500866746076964e+24,
    -5.038778101481069e+26,
    3.6528776484818122e+28,
    -2.849876930245088e+30,
    2.3865427499683627e+32,
    -2.1399949257225335e+34,
    2.0500975723478097e+36};

std::array<double, 64> make_bernoulli() {
  std::array<double, 64> b{};
  for (int k = 0; k < 32; ++k) b[2 * k] = kEvenBernoulli[k];
  b[1] = -0.5;
  return b;
}

const std::array<double, 64>& bernoulli_table() {
  static const std::array<double, 64> table = make_bernoulli();
  return table;
}

Complex stirling(Complex z) {
  // (z - 1/2) log z - z + log sqrt(2 pi) + sum B_{2k} / (2k (2k-1) z^{2k-1})
  const auto& b = bernoulli_table();
  const Complex zi = 1.0 / z;
  const Complex zi2 = zi * zi;
  Complex acc = 0.0;
  Complex p = zi;
  for (int k = 1; k <= 10; ++k) {
    acc += b[2 * k] / (2.0 * k * (2.0 * k - 1.0)) * p;
    p *= zi2;
  }
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + acc;
}

}  // namespace

double bernoulli_number(int n) {
  if (n < 0 || n >= 64) fail(ErrorCode::InvalidArgument, "Bernoulli index out of range");
  if (n > 1 && n % 2 == 1) return 0.0;
  return bernoulli_table()[n];
}

double bernoulli_poly(int n, double x) {
  double acc = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    acc += binom * bernoulli_number(k) * std::pow(x, n - k);
    binom = binom * (n - k) / (k + 1);
  }
  return acc;
}

Complex log_sin_pi(Complex z) {
  const double y = z.imag();
  if (std::abs(y) > 5.0) {
    // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i) for Im z > 0; conjugate otherwise.
    const Complex w = (y > 0.0) ? z : std::conj(z);
    const Complex I(0.0, 1.0);
    const Complex e = std::exp(2.0 * I * M_PI * w);
    Complex r = -I * M_PI * w + std::log((e - 1.0) / (2.0 * I));
    return (y > 0.0) ? r : std::conj(r);
  }
  double s, c;
  sincos_pi(z.real(), s, c);
  const Complex val(s * std::cosh(M_PI * y), c * std::sinh(M_PI * y));
  return std::log(val);
}

Complex log_gamma(Complex z) {
  if (!is_finite(z)) fail(ErrorCode::NonFinite, "log_gamma argument not finite");
  if (is_nonpositive_integer(z)) fail(ErrorCode::PoleAtNonPositiveInteger, "Gamma pole");
  if (z.real() < 0.5) {
    return kLogPi - log_sin_pi(z) - log_gamma(1.0 - z);
  }
  Complex shift = 0.0;
  while (std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling(z) - shift;
}

Complex rgamma(Complex z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.real() < 0.5) {
    // 1/Gamma(z) = Gamma(1 - z) sin(pi z) / pi
    double s, c;
    sincos_pi(z.real(), s, c);
    if (std::abs(z.imag()) <= 5.0) {
      const Complex sv(s * std::cosh(M_PI * z.imag()), c * std::sinh(M_PI * z.imag()));
      return std::exp(log_gamma(1.0 - z) - kLogPi) * sv;
    }
    return std::exp(log_gamma(1.0 - z) + log_sin_pi(z) - kLogPi);
  }
  return std::exp(-log_gamma(z));
}

Complex log_gamma_ratio(Complex z, double a, double b) {
  if (a == b) return 0.0;
  const double reach = std::abs(a) + std::abs(b) + 1.0;
  if (z.real() > 0.0 && std::abs(z) >= std::max(30.0, 4.0 * reach)) {
    // (a-b) log z + sum_k (-1)^{k+1} (B_{k+1}(a) - B_{k+1}(b)) / (k (k+1) z^k)
    const Complex zi = 1.0 / z;
    Complex acc = (a - b) * std::log(z);
    Complex p = zi;
    for (int k = 1; k < 60; ++k) {
      const double num = bernoulli_poly(k + 1, a) - bernoulli_poly(k + 1, b);
      const Complex term = ((k % 2 == 1) ? 1.0 : -1.0) * num / (double(k) * (k + 1)) * p;
      acc += term;
      if (std::abs(term) < 1e-17 * std::abs(acc)) return acc;
      p *= zi;
    }
  }
  return log_gamma(z + a) - log_gamma(z + b);
}

Complex pochhammer(Complex z, int m) {
  if (m < 0) fail(ErrorCode::InvalidArgument, "pochhammer index must be >= 0");
  Complex acc = 1.0;
  for (int k = 0; k < m; ++k) acc *= (z + double(k));
  return acc;
}

Complex hyp2f1_series(Complex a, Complex b, Complex c, double x) {
  if (!(std::abs(x) < 1.0)) fail(ErrorCode::InvalidArgument, "series argument must satisfy |x| < 1");
  Complex term = 1.0;
  Complex sum = 1.0;
  int small = 0;
  for (int n = 0; n < kMaxSeriesTerms; ++n) {
    const double dn = n;
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * x;
    sum += term;
    if (std::abs(term) <= 1e-16 * std::abs(sum)) {
      if (++small == 3) return sum;
    } else {
      small = 0;
    }
  }
  fail(ErrorCode::SeriesNotConverged, "2F1 series did not converge within 10000 terms");
}

namespace {

// Product of Gamma(num_i) / Gamma(den_j); zero when a denominator sits on a pole.
Complex gamma_quotient(std::initializer_list<Complex> num, std::initializer_list<Complex> den) {
  Complex log_acc = 0.0;
  for (const Complex& d : den)
    if (is_nonpositive_integer(d)) return 0.0;
  for (const Complex& n : num) log_acc += log_gamma(n);
  for (const Complex& d : den) log_acc -= log_gamma(d);
  return std::exp(log_acc);
}

// 2F1(a, b; c; w) for w in (0.75, 1) through the 1 - w connection formula,
// omw = 1 - w passed separately to keep precision when w is close to 1.
Complex connection_1mw(Complex a, Complex b, Complex c, double omw) {
  const Complex d = c - a - b;
  const Complex t1 = gamma_quotient({c, d}, {c - a, c - b}) *
                     hyp2f1_series(a, b, 1.0 - d, omw);
  const Complex t2 = gamma_quotient({c, -d}, {a, b}) * std::exp(d * std::log(omw)) *
                     hyp2f1_series(c - a, c - b, d + 1.0, omw);
  return t1 + t2;
}

Complex near_one(Complex a, Complex b, Complex c, double omw) {
  const Complex d = c - a - b;
  const double dist = std::abs(d - std::round(d.real()));
  if (dist > 0.01) return connection_1mw(a, b, c, omw);
  // Degenerate c - a - b: mean value of the entire function a -> 2F1 over a small circle.
  constexpr int N = 32;
  constexpr double eps = 0.05;
  Complex acc = 0.0;
  for (int j = 0; j < N; ++j) {
    const double th = 2.0 * M_PI * (j + 0.5) / N;
    acc += connection_1mw(a + eps * Complex(std::cos(th), std::sin(th)), b, c, omw);
  }
  return acc / double(N);
}

}  // namespace

Complex gauss_2f1(Complex a, Complex b, Complex c, double z) {
  if (is_nonpositive_integer(c)) fail(ErrorCode::PoleInC, "c is a non-positive integer");
  if (!(z <= 0.0)) fail(ErrorCode::InvalidArgument, "gauss_2f1 is implemented for z <= 0");
  if (z == 0.0) return 1.0;
  if (z >= -0.5) return hyp2f1_series(a, b, c, z);
  // Pfaff: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))
  const double omw = 1.0 / (1.0 - z);
  const double w = -z * omw;
  const Complex pre = std::exp(-a * std::log1p(-z));
  if (w <= 0.75) return pre * hyp2f1_series(a, c - b, c, w);
  return pre * near_one(a, c - b, c, omw);
}

double bessel_j(double nu, double x) {
  if (nu < 0.0 || x < 0.0) fail(ErrorCode::InvalidArgument, "bessel_j requires nu >= 0, x >= 0");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x <= 12.0 || x < nu) {
    const double h = 0.5 * x;
    double term = std::exp(nu * std::log(h) - std::lgamma(nu + 1.0));
    double sum = term;
    const double q = -h * h;
    int small = 0;
    for (int k = 1; k < kMaxSeriesTerms; ++k) {
      term *= q / (k * (k + nu));
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum)) {
        if (++small == 3) break;
      } else {
        small = 0;
      }
    }
    return sum;
  }
  // Miller backward recurrence on the orders mu + m.
  const double mu = nu - std::floor(nu);
  const int target = static_cast<int>(std::floor(nu));
  int top = std::max(target, static_cast<int>(x)) + 40 + static_cast<int>(6.0 * std::cbrt(x));
  if (top % 2 == 1) ++top;
  std::vector<double> j(top + 2, 0.0);
  j[top + 1] = 0.0;
  j[top] = 1e-300;
  for (int m = top; m >= 1; --m) {
    j[m - 1] = 2.0 * (mu + m) / x * j[m] - j[m + 1];
    if (std::abs(j[m - 1]) > 1e250) {
      for (int k = m - 1; k <= top; ++k) j[k] *= 1e-250;
    }
  }
  double norm = 0.0;
  if (mu == 0.0) {
    norm = j[0];
    for (int k = 2; k <= top; k += 2) norm += 2.0 * j[k];
    return j[target] / norm;
  }
  // (x/2)^mu = sum_k (mu + 2k) Gamma(mu + k) / k! J_{mu+2k}(x)
  double g = std::tgamma(mu);
  for (int k = 0; 2 * k <= top; ++k) {
    norm += (mu + 2.0 * k) * g * j[2 * k];
    g *= (mu + k) / (k + 1.0);
  }
  return j[target] * std::pow(0.5 * x, mu) / norm;
}

}  // namespace cpheat
