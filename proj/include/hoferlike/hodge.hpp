#pragma once

#include <utility>

#include "hoferlike/calculus.hpp"

namespace hoferlike {

// Splitting of a closed 1-form into d(exact_potential) + harmonic, with the
// potential normalised to zero mean. On the flat torus the harmonic part is
// the constant-coefficient form given by the grid means.
struct HodgeDecomposition {
    ScalarField exact_potential;  // mean-zero U with dU = alpha - harmonic
    Vec2 harmonic;                // constant coefficients (a, b)
    double residual = 0.0;        // ||alpha - dU - harmonic||_inf
};

// Throws "form not closed" when closedness_residual(alpha) > tol.
HodgeDecomposition hodge_decompose(const OneFormField& alpha, double tol);

// Constant form with the grid means of (a, b); idempotent, kills exact parts.
OneFormField harmonic_projection(const OneFormField& alpha);
Vec2 harmonic_mean(const OneFormField& alpha);

// (L0, L1) with  L1 ||alpha||_L2 <= |alpha|_0 <= L0 ||alpha||_L2  on the
// harmonic 2-plane, scanned over uniform angular samples of the unit circle.
// Both constants are 1 for the flat unit torus. sample_count >= 8.
std::pair<double, double> norm_equivalence_constants(int sample_count);

// Same constants for a rescaled flat torus of total area `area`; the volume
// factor in the L^2 integral gives L0 = L1 = area^{-1/2}. Formula-level
// companion to the computed flat-metric constants.
std::pair<double, double> norm_equivalence_constants_area(double area);

}  // namespace hoferlike
