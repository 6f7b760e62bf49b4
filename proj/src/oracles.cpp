#include "advdiff/oracles.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace advdiff {
namespace oracles {

using Float50 = boost::multiprecision::cpp_bin_float_50;

Eigen::VectorXd dense_solve(const TriDiagSystem& sys) {
  const Eigen::Index n = sys.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = sys.diag(i);
    if (i > 0) a(i, i - 1) = sys.sub(i - 1);
    if (i < n - 1) a(i, i + 1) = sys.sup(i);
  }
  return a.fullPivLu().solve(sys.rhs);
}

double cothm_reference(double x) {
  const Float50 xx = x;
  const Float50 value = 1 / tanh(xx) - 1 / xx;
  return value.convert_to<double>();
}

double exp_poly_integral_reference(double a, std::span<const double> poly,
                                   double x0, double x1) {
  if (poly.empty() || x0 == x1) return 0.0;
  const Float50 aa = a;
  const Float50 lo = x0;
  const Float50 hi = x1;
  const int deg = static_cast<int>(poly.size()) - 1;
  std::vector<Float50> moments(deg + 1);
  if (a == 0.0) {
    for (int m = 0; m <= deg; ++m) {
      moments[m] = (pow(hi, m + 1) - pow(lo, m + 1)) / (m + 1);
    }
  } else {
    const Float50 ehi = exp(aa * hi);
    const Float50 elo = exp(aa * lo);
    moments[0] = (ehi - elo) / aa;
    for (int m = 1; m <= deg; ++m) {
      moments[m] =
          (pow(hi, m) * ehi - pow(lo, m) * elo) / aa - m / aa * moments[m - 1];
    }
  }
  Float50 total = 0;
  for (int m = 0; m <= deg; ++m) total += poly[m] * moments[m];
  return total.convert_to<double>();
}

double exact_solution_reference(double v, double k, double f, double x) {
  const Float50 vv = v, kk = k, ff = f, xx = x;
  if (v == 0.0) {
    return (ff * xx * (1 - xx) / (2 * kk)).convert_to<double>();
  }
  const Float50 r = vv / kk;
  const Float50 value =
      (ff / vv) * (xx - (1 - exp(r * xx)) / (1 - exp(r)));
  return value.convert_to<double>();
}

}  // namespace oracles
}  // namespace advdiff
