#include "advdiff/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace advdiff {

namespace {

constexpr int kMaxOrder = 64;

GaussRule make_rule(int n) {
  GaussRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  const double dn = static_cast<double>(n);
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(M_PI * (i - 0.25) / (dn + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = dn * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    rule.points(i - 1) = -z;
    rule.points(n - i) = z;
    rule.weights(i - 1) = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights(n - i) = rule.weights(i - 1);
  }
  if (n % 2 == 1) rule.points(n / 2) = 0.0;
  return rule;
}

const std::array<GaussRule, kMaxOrder>& rule_table() {
  static const std::array<GaussRule, kMaxOrder> table = [] {
    std::array<GaussRule, kMaxOrder> t;
    for (int n = 1; n <= kMaxOrder; ++n) t[n - 1] = make_rule(n);
    return t;
  }();
  return table;
}

// Scaled moments G_m(u) = \int_0^1 th^m exp(u th) dth, m = 0..deg, so that
// \int_0^L t^m exp(a t) dt = L^(m+1) G_m(a L).
void moments_series(int deg, double u, double* g, int terms) {
  for (int m = 0; m <= deg; ++m) {
    double sum = 0.0;
    double term = 1.0;
    for (int j = 0; j < terms; ++j) {
      sum += term / (m + j + 1);
      term *= u / (j + 1);
    }
    g[m] = sum;
  }
}

// Integration by parts gives G_m = (e^u - m G_{m-1}) / u. Run upward when
// |u| exceeds every index m (each step damps errors by m/|u|); otherwise run
// downward from a crude seed high enough that its error, damped by |u|/m per
// step, lands below machine precision at m = deg.
void moments_recurrence(int deg, double u, double* g) {
  const double eu = std::exp(u);
  if (std::abs(u) > deg + 0.5) {
    g[0] = std::expm1(u) / u;
    for (int m = 1; m <= deg; ++m) g[m] = (eu - m * g[m - 1]) / u;
    return;
  }
  const int top = deg + 48;
  std::vector<double> work(top + 1);
  work[top] = 1.0 / (top + 1) + u / (top + 2);
  for (int m = top; m >= 1; --m) work[m - 1] = (eu - u * work[m]) / m;
  std::copy(work.begin(), work.begin() + deg + 1, g);
}

// Coefficients of p(x0 + t) in t, from p's coefficients in x.
std::vector<double> shift_poly(std::span<const double> poly, double x0) {
  const int deg = static_cast<int>(poly.size()) - 1;
  std::vector<double> shifted(poly.size(), 0.0);
  for (int m = 0; m <= deg; ++m) {
    double term = 1.0;  // C(m, j) * x0^(m-j), descending in j from j = m
    shifted[m] += poly[m];
    for (int j = m; j >= 1; --j) {
      term *= x0 * j / (m - j + 1);
      shifted[j - 1] += poly[m] * term;
    }
  }
  return shifted;
}

double combine(std::span<const double> q, double L, const double* g,
               double a, double x0) {
  double sum = 0.0;
  double lp = L;
  for (size_t m = 0; m < q.size(); ++m) {
    sum += q[m] * lp * g[m];
    lp *= L;
  }
  return sum * std::exp(a * x0);
}

enum class Branch { Auto, Series, Recurrence };

double integrate_exp_poly_impl(double a, std::span<const double> poly,
                               double x0, double x1, Branch branch) {
  if (x0 > x1) {
    throw Error(ErrorCode::InvalidArgument, "need x0 <= x1");
  }
  if (poly.empty() || x0 == x1) return 0.0;
  const double L = x1 - x0;
  const double u = a * L;
  const std::vector<double> q = shift_poly(poly, x0);
  const int deg = static_cast<int>(q.size()) - 1;
  std::vector<double> g(q.size());
  const bool use_series =
      branch == Branch::Series || (branch == Branch::Auto && std::abs(u) < 1e-4);
  if (use_series) {
    moments_series(deg, u, g.data(), 9);
  } else {
    moments_recurrence(deg, u, g.data());
  }
  return combine(q, L, g.data(), a, x0);
}

}  // namespace

const GaussRule& gauss_rule(int n) {
  if (n < 1 || n > kMaxOrder) {
    throw Error(ErrorCode::UnsupportedOrder,
                "Gauss rule order must be in [1, 64], got " + std::to_string(n));
  }
  return rule_table()[n - 1];
}

double integrate_exp_poly(double a, std::span<const double> poly, double x0,
                          double x1) {
  return integrate_exp_poly_impl(a, poly, x0, x1, Branch::Auto);
}

double integrate_weighted(const std::function<double(double)>& g,
                          const WeightFunction& w, double x0, double x1,
                          int n_pts) {
  const GaussRule& rule = gauss_rule(n_pts);
  const double half = 0.5 * (x1 - x0);
  double sum = 0.0;
  for (Eigen::Index q = 0; q < rule.points.size(); ++q) {
    const double x = x0 + half * (rule.points(q) + 1.0);
    sum += half * rule.weights(q) * w.alpha(x) * g(x);
  }
  return sum;
}

int gauss_points_for_peclet(double peclet) {
  const double raw = 4.0 + std::ceil(std::abs(peclet));
  return static_cast<int>(std::clamp(raw, 4.0, 32.0));
}

namespace detail {

double integrate_exp_poly_series(double a, std::span<const double> poly,
                                 double x0, double x1) {
  return integrate_exp_poly_impl(a, poly, x0, x1, Branch::Series);
}

double integrate_exp_poly_recurrence(double a, std::span<const double> poly,
                                     double x0, double x1) {
  return integrate_exp_poly_impl(a, poly, x0, x1, Branch::Recurrence);
}

}  // namespace detail

}  // namespace advdiff
