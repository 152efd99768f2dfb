#pragma once

#include <limits>

#include "hoferlike/fields.hpp"

namespace hoferlike {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// max f - min f over the grid nodes. Throws on non-finite input.
double oscillation(const ScalarField& f);

// L^p norm of the pointwise flat norm sqrt(a^2 + b^2): midpoint quadrature
// with weight h^2 for finite p, grid max for p = infinity. p must be >= 1.
double lp_norm_form(const OneFormField& alpha, double p);

// Interior product with dx ^ dy: X = vx d/dx + vy d/dy maps to
// vx dy - vy dx.
OneFormField contract_with_omega(const VectorField& x);

// Inverse of contract_with_omega: a dx + b dy maps to b d/dx - a d/dy.
VectorField sharp_omega(const OneFormField& alpha);

// Fourier gradient of f as a 1-form.
OneFormField exterior_derivative(const ScalarField& f);

// Sup norm of the Fourier curl  d_x b - d_y a; zero for closed forms up to
// discretisation.
double closedness_residual(const OneFormField& alpha);

// Default gate for closedness checks; scales with the N amplification of the
// spectral derivative.
inline double default_closedness_tol(const TorusGrid& g) { return 1e-6 * g.n(); }

// Pullback of alpha by phi(x) = x + disp(x): the Jacobian of phi comes from
// central differences of the displacement and alpha is evaluated at phi(x)
// by periodic bilinear interpolation.
OneFormField pullback_oneform(const DisplacementField& disp, const OneFormField& alpha);

// f composed with phi(x) = x + disp(x), sampled by bilinear interpolation.
ScalarField compose_scalar(const ScalarField& f, const DisplacementField& disp);

// Discrete L^2 pairing of two 1-forms (weight h^2).
double l2_inner_product(const OneFormField& alpha, const OneFormField& beta);

}  // namespace hoferlike
