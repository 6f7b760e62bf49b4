#include "advdiff/stencils.hpp"

#include <cmath>

#include "advdiff/errors.hpp"
#include "advdiff/quadrature.hpp"

namespace advdiff {

namespace {

// Odd series of coth(x) - 1/x about 0; converges on |x| < pi, used on
// |x| <= 1 where the direct form loses up to 16 digits.
constexpr int kCothmTerms = 18;
constexpr long double kCothmCoeff[kCothmTerms] = {
    0.333333333333333333333333333333L,
    -0.0222222222222222222222222222222L,
    0.00211640211640211640211640211640L,
    -0.000211640211640211640211640211640L,
    0.0000213777991555769333547111324889L,
    -0.00000216440428080639720851361063001L,
    0.000000219259478518737777997037256297L,
    -0.0000000222146087899796790760583685161L,
    0.00000000225078465168089928542084279840L,
    -2.28051512045921828658638112567e-10L,
    2.31064325990026240965325466481e-11L,
    -2.34117068198248839592094445312e-12L,
    2.37210174002336542950284820301e-13L,
    -2.40344153333077061790918875277e-14L,
    2.43519540291833687311218225353e-15L,
    -2.46736880451720747058996032268e-16L,
    2.49996727712208089798954278824e-17L,
    -2.53299643574063483151787015907e-18L,
};

}  // namespace

double cothm(double x) {
  const double ax = std::abs(x);
  long double result;
  if (ax <= 1.0) {
    const long double x2 = static_cast<long double>(ax) * ax;
    long double s = kCothmCoeff[kCothmTerms - 1];
    for (int n = kCothmTerms - 2; n >= 0; --n) {
      s = kCothmCoeff[n] + x2 * s;
    }
    result = ax * s;
  } else {
    // coth(x) = 1 + 2/(e^{2x} - 1); expm1 saturates to +inf cleanly.
    result = (1.0L - 1.0L / ax) + 2.0L / std::expm1(2.0L * static_cast<long double>(ax));
  }
  return static_cast<double>(x < 0.0 ? -result : result);
}

double kbar(double v, double k, double h) {
  const double pe = v * h / (2.0 * k);
  return (v * h / 2.0) * cothm(pe);
}

double exact_solution(double v, double k, double f, double x) {
  const double r = v / k;
  if (std::abs(r) < 1e-6) {
    // Near-Poisson expansion with the first-order correction in r.
    return (f / k) * (x * (1.0 - x) / 2.0 +
                      r * x * (1.0 - x) * (2.0 * x - 1.0) / 12.0);
  }
  if (r > 0.0) {
    return (f / v) *
           (x - std::exp(r * (x - 1.0)) * std::expm1(-r * x) / std::expm1(-r));
  }
  return (f / v) * (x - std::expm1(r * x) / std::expm1(r));
}

StencilCoeffs galerkin_stencil(double v, double k, double h) {
  if (v == 0.0) {
    const double dif = k / (h * h);
    return {-dif, 2.0 * dif, -dif, Formulation::Galerkin};
  }
  // Peclet form of the central-difference row; the downstream coefficient
  // vanishes exactly when Pe evaluates to exactly 1.
  const double pe = v * h / (2.0 * k);
  const double s = v / (2.0 * h);
  return {-s * (pe + 1.0) / pe, 2.0 * s / pe, s * (pe - 1.0) / pe,
          Formulation::Galerkin};
}

namespace {

// Shared by optimal_stencil and gamma_stencil: the formulas coincide, so
// computing them once keeps the triples bitwise identical.
StencilCoeffs nodally_exact_triple(double v, double k, double h,
                                   Formulation tag) {
  if (v == 0.0) {
    StencilCoeffs s = galerkin_stencil(0.0, k, h);
    s.formulation = tag;
    return s;
  }
  const double pe = v * h / (2.0 * k);
  const double coth = 1.0 / pe + cothm(pe);
  const double s = v / (2.0 * h);
  return {-s * (1.0 + coth), 2.0 * s * coth, s * (1.0 - coth), tag};
}

}  // namespace

StencilCoeffs optimal_stencil(double v, double k, double h) {
  return nodally_exact_triple(v, k, h, Formulation::ArtificialDiffusion);
}

StencilCoeffs gamma_stencil(double v, double k, double h) {
  return nodally_exact_triple(v, k, h, Formulation::WeightedVariational);
}

StencilCoeffs gamma_stencil_by_quadrature(double v, double k, double h) {
  const double a = -v / k;
  // Shape functions around the center node of the two-element patch
  // [-h, h]: left hat has slope -1/h on [-h, 0]; center hat rises then
  // falls; alpha is normalized to 1 at the center node.
  const double left_poly[] = {1.0, 1.0 / h};    // (x + h)/h on [-h, 0]
  const double right_poly[] = {1.0, -1.0 / h};  // (h - x)/h on [0, h]
  const double one[] = {1.0};
  const double e_left = integrate_exp_poly(a, one, -h, 0.0);
  const double e_right = integrate_exp_poly(a, one, 0.0, h);
  const double mass = integrate_exp_poly(a, left_poly, -h, 0.0) +
                      integrate_exp_poly(a, right_poly, 0.0, h);
  const double s = k / (h * h);
  return {-s * e_left / mass, s * (e_left + e_right) / mass,
          -s * e_right / mass, Formulation::WeightedVariational};
}

}  // namespace advdiff
