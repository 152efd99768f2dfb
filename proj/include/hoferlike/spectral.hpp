#pragma once

#include "hoferlike/fields.hpp"

namespace hoferlike {

// Fourier differential operators on the periodic grid. The unpaired Nyquist
// mode (k = N/2) is dropped from every odd-order kernel, which is why grids
// must have even N.
ScalarField spectral_derivative_x(const ScalarField& f);
ScalarField spectral_derivative_y(const ScalarField& f);

// Least-squares potential for a closed form: the mean-zero U minimising
// ||dU - (alpha - mean(alpha))||_{L^2}, computed mode by mode. For closed
// input this inverts the exterior derivative exactly up to roundoff.
ScalarField spectral_gradient_potential(const OneFormField& alpha);

}  // namespace hoferlike
