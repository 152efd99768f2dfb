#pragma once

#include "hoferlike/isotopy.hpp"

namespace hoferlike {

// (1,p) integrates the per-time integrand over [0,1]; (inf,p) takes its sup.
enum class LengthMode { time_integral, time_sup };

struct LengthReport {
    double value = 0.0;
    LengthMode mode = LengthMode::time_integral;
    double p = 2.0;  // exponent of the harmonic norm; ignored for plain Hofer
    int grid_n = 0;
    int tsamples = 0;
    std::string path_id;
};

std::string length_tag(const LengthReport& r);

// Hofer length of a Hamiltonian generator: integral (or sup) of osc(U_t).
// Throws for generators with harmonic coefficients above 1e-8.
LengthReport hofer_length(const GeneratorPath& gen, LengthMode mode,
                          const std::string& path_id = "");

// Hofer-like length: integrand osc(U_t) + ||H_t||_p. Reduces to the Hofer
// length on Hamiltonian generators for every p.
LengthReport hoferlike_length(const GeneratorPath& gen, double p, LengthMode mode,
                              const std::string& path_id = "");

// Hodge-split norm of a symplectic vector field: osc of the potential plus
// the L^2 norm of the harmonic part of its contraction with omega.
double vf_hoferlike_norm(const VectorField& y, double closed_tol = 0.0);

// Time average of the integral of U_t (+ optional offsets); vanishes for
// normalised Hamiltonians on the closed torus.
double calabi(const GeneratorPath& gen, const std::vector<ScalarField>* offsets = nullptr);

// Length of the same isotopy measured after omega -> c omega on a 2n-manifold:
// osc scales by c and the harmonic norm by c^{(n+1)/2}, so the value sits in
// [min, max]{c, c^{(n+1)/2}} times the original; for n = 1 both factors are c.
struct ScalingLaw {
    double rescaled = 0.0;
    double predicted_low = 0.0;
    double predicted_high = 0.0;
    bool exact_dim2 = false;  // set when n = 1, where rescaled = c * original
};

ScalingLaw scaling_law(const GeneratorPath& gen, double c, int n);

}  // namespace hoferlike
