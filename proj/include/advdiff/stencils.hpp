#pragma once

#include "advdiff/formulation.hpp"

namespace advdiff {

// Interior-node difference-equation coefficients; the three sum to zero
// (constants lie in the stencil kernel).
struct StencilCoeffs {
  double left = 0.0;
  double center = 0.0;
  double right = 0.0;
  Formulation formulation = Formulation::Galerkin;
};

// coth(x) - 1/x, accurate to ~2 ulp relative over the full double range.
// The direct form cancels catastrophically up to |x| ~ 1, so an odd series
// covers |x| <= 1; beyond that coth is evaluated as 1 + 2/expm1(2x).
double cothm(double x);

// Diffusivity augmentation (v h / 2) * cothm(Pe) that renders central
// differencing nodally exact; nonnegative, even in v, zero iff v = 0.
double kbar(double v, double k, double h);

// Exact solution of v u' - k u'' = f on (0,1) with u(0) = u(1) = 0 and
// constant coefficients, evaluated without overflow for |v/k| up to ~1e3;
// |v/k| < 1e-6 switches to the near-Poisson expansion.
double exact_solution(double v, double k, double f, double x);

// Central differences for both derivatives.
StencilCoeffs galerkin_stencil(double v, double k, double h);

// Nodally exact triple (v/2h) * (-(1+coth Pe), 2 coth Pe, 1 - coth Pe);
// equals the Galerkin stencil with diffusivity k + kbar. The v = 0 limit is
// the pure-diffusion stencil.
StencilCoeffs optimal_stencil(double v, double k, double h);

// The weighted-form difference coefficients; same formula as
// optimal_stencil and computed by the same code path.
StencilCoeffs gamma_stencil(double v, double k, double h);

// The weighted-form coefficients evaluated as ratios of exponentially
// weighted shape-function integrals instead of the closed form; numeric
// cross-check route.
StencilCoeffs gamma_stencil_by_quadrature(double v, double k, double h);

}  // namespace advdiff
