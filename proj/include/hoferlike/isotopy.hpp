#pragma once

#include <string>
#include <vector>

#include "hoferlike/hodge.hpp"

namespace hoferlike {

// Cohomology class coordinates in the harmonic basis {dx, dy}.
struct FluxClass {
    double a = 0.0;
    double b = 0.0;
    double l2_norm() const { return std::hypot(a, b); }
};

inline FluxClass operator+(FluxClass u, FluxClass v) { return {u.a + v.a, u.b + v.b}; }
inline FluxClass operator-(FluxClass u, FluxClass v) { return {u.a - v.a, u.b - v.b}; }
inline FluxClass operator*(double c, FluxClass v) { return {c * v.a, c * v.b}; }

// Time-sampled generator of a symplectic isotopy: a normalised scalar field
// and a constant-coefficient harmonic 1-form per node of a uniform grid on
// [0, 1]. The isotopy is Hamiltonian when all harmonic coefficients vanish
// and harmonic when all scalar parts vanish.
struct GeneratorPath {
    TorusGrid grid;
    std::vector<ScalarField> hamiltonian;  // U_t, mean zero, T+1 samples
    std::vector<Vec2> harmonic;            // (a_t, b_t), T+1 samples

    GeneratorPath(const TorusGrid& g, int tsamples);

    int tsamples() const { return static_cast<int>(harmonic.size()) - 1; }
    double dt() const { return 1.0 / tsamples(); }

    // Renormalises every scalar sample to zero mean.
    void normalize();
    bool is_hamiltonian(double tol = 1e-8) const;

    // sharp of dU_t + H_t at sample j.
    VectorField velocity(int j) const;
};

GeneratorPath zero_generator(const TorusGrid& g, int tsamples);

// Constant harmonic generator a dx + b dy; its flow is the rigid translation
// by t (b, -a), a loop precisely when the class is integral.
GeneratorPath harmonic_generator(const TorusGrid& g, int tsamples, Vec2 coeffs);

// Autonomous Hamiltonian generator from a scalar field (normalised copy).
GeneratorPath hamiltonian_generator(const TorusGrid& g, int tsamples, const ScalarField& u);

enum class PathSource { integrated, composed, concatenated };

// Time-sampled family of torus diffeomorphisms phi_t(x) = x + D_t(x) mod 1.
// D_0 = 0 and windings stay unreduced so integer translations remain
// distinguishable from the identity until is_loop reduces mod 1.
struct DiffeoPath {
    TorusGrid grid;
    std::vector<DisplacementField> displacement;  // T+1 samples
    PathSource source = PathSource::integrated;

    DiffeoPath(const TorusGrid& g, int tsamples, PathSource s);

    int tsamples() const { return static_cast<int>(displacement.size()) - 1; }
    double dt() const { return 1.0 / tsamples(); }
    const DisplacementField& endpoint() const { return displacement.back(); }
};

// Displacement at arbitrary time by linear interpolation between samples.
DisplacementField displacement_at(const DiffeoPath& path, double t);

// Classical fourth-order time stepping of the node trajectories under the
// generator's velocity field (linear interpolation in t, bilinear in space).
// Throws "time step too large" when a substep moves a node more than five
// grid cells.
DiffeoPath integrate_generator(const GeneratorPath& gen, int substeps);

// Central time differences composed with the inverse maps, then a Hodge
// split per sample. closed_tol gates the closedness of the recovered forms;
// pass <= 0 to use default_closedness_tol scaled for recovery noise.
GeneratorPath recover_generator(const DiffeoPath& path, double closed_tol = 0.0);

// Per-node fixed-point inverse of phi(x) = x + disp(x); the returned E
// satisfies ||phi(x + E(x)) - x||_inf <= tol. Throws after 50 sweeps. An
// initial guess (for example the inverse at a neighbouring time sample)
// shortens the iteration.
DisplacementField invert_displacement(const DisplacementField& disp, double tol = 1e-11,
                                      const DisplacementField* guess = nullptr);

// Pointwise composition (psi_t o phi_t); equal grids and sampling required.
DiffeoPath compose_paths(const DiffeoPath& psi, const DiffeoPath& phi);

// Left concatenation: run phi reparametrised on [0, 1/2], then psi composed
// with phi_1 on [1/2, 1]. The joint uses the quintic plateau ramp, flat on
// [0, delta] and [1 - delta, 1]. Output carries 2T intervals.
DiffeoPath concatenate_left(const DiffeoPath& psi, const DiffeoPath& phi, double delta = 0.1);

// Time-reversed family {phi_{1-t} o phi_1^{-1}}, identity to phi_1^{-1}.
DiffeoPath reverse_path(const DiffeoPath& phi);

// Trapezoidal time integral of the harmonic coefficients.
FluxClass flux_cohomological(const GeneratorPath& gen);

// Time integral of the pulled-back contraction forms followed by harmonic
// projection; agrees with flux_cohomological up to discretisation.
FluxClass flux_definition(const DiffeoPath& path);

// True when the endpoint displacement reduced mod 1 stays below tol.
bool is_loop(const DiffeoPath& path, double tol);

// Quintic ramp: 0 on [0, delta], 1 on [1 - delta, 1], C^2 at the joins.
double plateau_ramp(double u, double delta);

}  // namespace hoferlike
