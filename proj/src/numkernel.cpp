#include "cpheat/numkernel.hpp"

#include <numeric>

namespace cpheat {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) fail(ErrorCode::InvalidArgument, "tolerances must be positive");
  if (max_subdivisions < 16) fail(ErrorCode::InvalidArgument, "max_subdivisions must be >= 16");
  if (!(tail_cutoff_sigma >= 6.0)) fail(ErrorCode::InvalidArgument, "tail_cutoff_sigma must be >= 6");
}

long& evaluation_counter() {
  thread_local long count = 0;
  return count;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

const char* to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Convergent: return "Convergent";
    case VerdictKind::Divergent: return "Divergent";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

IntegralVerdict tail_verdict(const std::vector<WindowSum>& windows, double log_head,
                             const VerdictTolerance& tol) {
  const int n = static_cast<int>(windows.size());
  if (n < 6) fail(ErrorCode::TooFewWindows, "tail_verdict needs at least 6 dyadic windows");
  IntegralVerdict v;
  v.windows = n;

  double log_total = log_head;
  double rel_err = 0.0;
  double finite_min = kInf;
  for (const auto& w : windows) {
    log_total = log_add(log_total, w.log_sum);
    if (w.log_sum > kNegInf) {
      finite_min = std::min(finite_min, w.log_sum);
      rel_err = std::max(rel_err, w.rel_error);
    }
  }

  // Identically zero tail.
  int trailing_zero = 0;
  for (int i = n - 1; i >= 0 && windows[i].log_sum == kNegInf; --i) ++trailing_zero;
  if (trailing_zero >= 3) {
    v.kind = VerdictKind::Convergent;
    v.log_value = log_total;
    v.value = std::exp(log_total);
    v.error_estimate = rel_err * v.value;
    v.tail_slope = kNegInf;
    return v;
  }

  const int k = std::max(4, n / 2);
  const double floor_value = std::isfinite(finite_min) ? finite_min - 50.0 : -700.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = n - k; i < n; ++i) {
    const double y = windows[i].log_sum == kNegInf ? floor_value : windows[i].log_sum;
    sx += i;
    sy += y;
    sxx += double(i) * i;
    sxy += double(i) * y;
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  v.tail_slope = slope / std::log(2.0) - 1.0;

  const double l1 = windows[n - 1].log_sum, l2 = windows[n - 2].log_sum, l3 = windows[n - 3].log_sum;
  const bool non_decreasing = (l1 >= l2) && (l2 >= l3) && l1 > kNegInf;
  if (slope >= 0.0 || non_decreasing) {
    v.kind = VerdictKind::Divergent;
    v.value = kInf;
    v.log_value = kInf;
    return v;
  }

  const double last_step = (l1 == kNegInf) ? kNegInf : l1 - l2;
  const double log_ratio = std::max(slope, last_step);
  v.log_value = log_total;
  v.value = std::exp(log_total);
  if (log_ratio < std::log(tol.max_ratio)) {
    const double log_tail = (l1 == kNegInf) ? kNegInf : l1 + log_ratio - std::log1p(-std::exp(log_ratio));
    const double tail = std::exp(log_tail);
    const double budget = tol.rel_tol * v.value + tol.abs_tol;
    const bool ok = (log_tail == kNegInf) || log_tail - log_total <= std::log(tol.rel_tol) ||
                    tail <= budget;
    if (ok) {
      v.kind = VerdictKind::Convergent;
      v.error_estimate = rel_err * v.value + (log_tail == kNegInf ? 0.0 : std::exp(log_tail));
      return v;
    }
  }
  v.kind = VerdictKind::Inconclusive;
  return v;
}

IntegralVerdict tail_verdict(const std::vector<std::pair<double, double>>& window_sums,
                             const VerdictTolerance& tol) {
  std::vector<WindowSum> w;
  for (const auto& [r, s] : window_sums) {
    if (s < 0.0) fail(ErrorCode::InvalidArgument, "window sums must be non-negative");
    w.push_back({r, 2.0 * r, s > 0.0 ? std::log(s) : kNegInf, 0.0});
  }
  return tail_verdict(w, kNegInf, tol);
}

}  // namespace cpheat
