#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <type_traits>
#include <utility>
#include <vector>

#include "cpheat/errors.hpp"

namespace cpheat {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -kInf;

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
  // Gaussian standard deviations kept before truncating a semi-infinite integrand.
  double tail_cutoff_sigma = 8.0;

  void validate() const;
};

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  long evaluations = 0;
  bool converged = true;
};

// Running count of integrand evaluations on this thread. Used as a deterministic
// work measure in reports.
long& evaluation_counter();

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Complex& z) { return std::abs(z); }
inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

namespace detail {

inline constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600017137000, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
struct Segment {
  double a, b;
  T value;
  double error;
  bool roundoff = false;  // error is the round-off floor 50 eps int |f|; splitting cannot lower it
};

template <class T>
bool segment_less(const Segment<T>& x, const Segment<T>& y) {
  return x.error < y.error;
}

// 21-point Gauss-Kronrod rule with the QUADPACK error heuristic.
template <class T, class F>
Segment<T> gk21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  if (!is_finite(fc)) fail(ErrorCode::NonFinite, "integrand is not finite");
  T resk = fc * kWgk[10];
  T resg{};
  double resabs = magnitude(fc) * kWgk[10];
  T fv1[10], fv2[10];
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    if (!is_finite(f1) || !is_finite(f2)) fail(ErrorCode::NonFinite, "integrand is not finite");
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (magnitude(f1) + magnitude(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const T reskh = resk * 0.5;
  double resasc = kWgk[10] * magnitude(fc - reskh);
  for (int j = 0; j < 10; ++j)
    resasc += kWgk[j] * (magnitude(fv1[j] - reskh) + magnitude(fv2[j] - reskh));
  const double ah = std::abs(half);
  const T value = resk * half;
  resabs *= ah;
  resasc *= ah;
  double err = magnitude((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  bool roundoff = false;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps) && 50.0 * eps * resabs >= err) {
    err = 50.0 * eps * resabs;
    roundoff = true;
  }
  evaluation_counter() += 21;
  return {a, b, value, err, roundoff};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration over the consecutive intervals
// given by `points`. Never throws on budget exhaustion; `converged` reports it.
// Segments whose error estimate is the round-off floor are kept but not split further.
template <class F>
auto integrate(F&& f, const std::vector<double>& points, const QuadratureSpec& spec)
    -> QuadResult<std::decay_t<std::invoke_result_t<F&, double>>> {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  QuadResult<T> out;
  std::vector<detail::Segment<T>> heap;
  std::vector<detail::Segment<T>> settled;  // round-off limited, no longer split
  const long count0 = evaluation_counter();
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i + 1] < points[i]) fail(ErrorCode::InvalidArgument, "integration limits out of order");
    if (points[i + 1] == points[i]) continue;
    heap.push_back(detail::gk21<T>(f, points[i], points[i + 1]));
  }
  auto totals = [&]() {
    T v{};
    double e = 0.0;
    for (const auto* list : {&heap, &settled}) {
      for (const auto& s : *list) {
        v += s.value;
        e += s.error;
      }
    }
    return std::pair<T, double>(v, e);
  };
  std::make_heap(heap.begin(), heap.end(), detail::segment_less<T>);
  auto [value, error] = totals();
  int splits = 0;
  while (!heap.empty() && error > std::max(spec.abs_tol, spec.rel_tol * magnitude(value))) {
    if (splits >= spec.max_subdivisions) {
      out.converged = false;
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), detail::segment_less<T>);
    const detail::Segment<T> worst = heap.back();
    if (worst.roundoff) {
      settled.push_back(worst);
      heap.pop_back();
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        worst.b - worst.a < 1e-14 * std::max(std::abs(worst.a), std::abs(worst.b))) {
      std::push_heap(heap.begin(), heap.end(), detail::segment_less<T>);
      out.converged = false;
      break;
    }
    heap.pop_back();
    const auto left = detail::gk21<T>(f, worst.a, mid);
    const auto right = detail::gk21<T>(f, mid, worst.b);
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), detail::segment_less<T>);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), detail::segment_less<T>);
    ++splits;
    if (splits % 64 == 0) {
      std::tie(value, error) = totals();
    } else {
      value += left.value + right.value - worst.value;
      error += left.error + right.error - worst.error;
    }
  }
  std::tie(value, error) = totals();
  out.value = value;
  out.error = error;
  out.evaluations = evaluation_counter() - count0;
  return out;
}

template <class F>
auto integrate(F&& f, double a, double b, const QuadratureSpec& spec) {
  return integrate(std::forward<F>(f), std::vector<double>{a, b}, spec);
}

// Throws BudgetExceeded when the tolerance is not met.
template <class F>
auto adaptive_quad(F&& f, double a, double b, const QuadratureSpec& spec) {
  if (!(a <= b)) fail(ErrorCode::InvalidArgument, "adaptive_quad requires a < b");
  auto r = integrate(std::forward<F>(f), a, b, spec);
  if (!r.converged) fail(ErrorCode::BudgetExceeded, "subdivision budget exhausted");
  return std::make_pair(r.value, r.error);
}

template <class T>
struct SemiInfiniteResult {
  T value{};
  double error = 0.0;
  double truncation_bound = 0.0;
  double cutoff = 0.0;
};

// Integral over [0, inf) of an integrand bounded by C exp(-scale (x-center)^2) poly(x),
// truncated at center + tail_cutoff_sigma / sqrt(scale).
template <class F>
auto semiinfinite_gaussian_quad(F&& f, double center, double scale, const QuadratureSpec& spec)
    -> SemiInfiniteResult<std::decay_t<std::invoke_result_t<F&, double>>> {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  if (!(scale > 0.0)) fail(ErrorCode::InvalidArgument, "scale must be positive");
  const double c = std::max(center, 0.0);
  const double width = 1.0 / std::sqrt(scale);
  const double cutoff = c + spec.tail_cutoff_sigma * width;
  std::vector<double> pts{0.0};
  if (c > 0.0) {
    for (double x = c - width; x > 0.0; x -= width) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    pts.push_back(c);
  }
  for (double x = c + width; x < cutoff - 0.5 * width; x += width) pts.push_back(x);
  pts.push_back(cutoff);
  auto r = integrate(f, pts, spec);
  if (!r.converged) fail(ErrorCode::BudgetExceeded, "subdivision budget exhausted");
  SemiInfiniteResult<T> out;
  out.value = r.value;
  out.error = r.error;
  out.cutoff = cutoff;
  out.truncation_bound = magnitude(f(cutoff)) / (scale * (cutoff - c));
  return out;
}

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Piecewise Chebyshev-Lobatto interpolant on [lo, hi].
template <class T>
class PanelInterpolant {
 public:
  PanelInterpolant() = default;

  template <class F>
  PanelInterpolant(F&& f, double lo, double hi, double panel_width, int nodes = 16)
      : lo_(lo), nodes_(nodes) {
    if (!(hi > lo) || nodes < 2) fail(ErrorCode::InvalidArgument, "bad interpolation range");
    panels_ = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel_width - 1e-9)));
    h_ = (hi - lo) / panels_;
    cheb_.resize(nodes_);
    for (int j = 0; j < nodes_; ++j) cheb_[j] = std::cos(M_PI * j / (nodes_ - 1));
    values_.resize(static_cast<std::size_t>(panels_) * nodes_);
    for (int p = 0; p < panels_; ++p) {
      for (int j = 0; j < nodes_; ++j) {
        T v;
        if (p > 0 && j == nodes_ - 1) {
          v = values_[static_cast<std::size_t>(p - 1) * nodes_];
        } else {
          v = f(node(p, j));
        }
        values_[static_cast<std::size_t>(p) * nodes_ + j] = v;
      }
    }
  }

  double lo() const { return lo_; }
  double hi() const { return lo_ + h_ * panels_; }
  bool empty() const { return values_.empty(); }

  T operator()(double x) const {
    x = std::clamp(x, lo_, hi());
    int p = static_cast<int>((x - lo_) / h_);
    p = std::clamp(p, 0, panels_ - 1);
    const double a = lo_ + p * h_;
    const double s = 2.0 * (x - a) / h_ - 1.0;
    const T* v = &values_[static_cast<std::size_t>(p) * nodes_];
    T num{};
    double den = 0.0;
    for (int j = 0; j < nodes_; ++j) {
      const double d = s - cheb_[j];
      if (d == 0.0) return v[j];
      double w = (j % 2 == 0) ? 1.0 : -1.0;
      if (j == 0 || j == nodes_ - 1) w *= 0.5;
      w /= d;
      num += w * v[j];
      den += w;
    }
    return num / den;
  }

 private:
  double node(int p, int j) const {
    const double a = lo_ + p * h_;
    return a + 0.5 * h_ * (cheb_[j] + 1.0);
  }

  double lo_ = 0.0;
  double h_ = 1.0;
  int nodes_ = 0;
  int panels_ = 0;
  std::vector<double> cheb_;
  std::vector<T> values_;
};

enum class VerdictKind { Convergent, Divergent, Inconclusive };
const char* to_string(VerdictKind kind);

struct IntegralVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  double value = 0.0;           // meaningful iff Convergent
  double log_value = -std::numeric_limits<double>::infinity();
  double error_estimate = 0.0;
  double tail_slope = 0.0;      // fitted power-law exponent of the integrand tail
  int windows = 0;
};

// One dyadic window [r_lo, r_hi] with log of the window integral of |integrand|.
struct WindowSum {
  double r_lo = 0.0;
  double r_hi = 0.0;
  double log_sum = -std::numeric_limits<double>::infinity();
  double rel_error = 0.0;
};

struct VerdictTolerance {
  double rel_tol = 1e-6;
  double abs_tol = 1e-300;
  double max_ratio = 0.9;
};

// Decides convergence from dyadic windows. `head` is the log integral over
// [0, windows.front().r_lo].
IntegralVerdict tail_verdict(const std::vector<WindowSum>& windows, double log_head = kNegInf,
                             const VerdictTolerance& tol = {});
IntegralVerdict tail_verdict(const std::vector<std::pair<double, double>>& window_sums,
                             const VerdictTolerance& tol = {});

double log_add(double a, double b);

}  // namespace cpheat
