#pragma once

#include <vector>

#include "hoferlike/isotopy.hpp"

namespace hoferlike {

// The flux lattice of the unit torus: integer combinations of the harmonic
// basis {dx, dy}. basis_scale != 1 is a diagnostic mode for rescaled
// lattices; rank 0 models the trivial lattice.
struct LatticeSpec {
    int rank = 2;
    double basis_scale = 1.0;
};

// Minimal nonzero lattice norm, computed as the minimum over the eight
// lattice neighbours of the origin (1 for the orthonormal basis). Throws on
// rank 0.
double lattice_min_norm(const LatticeSpec& spec = {});

// Euclidean distance from v to the nearest lattice point.
double distance_to_lattice(FluxClass v, const LatticeSpec& spec = {});

// distance_to_lattice(v) <= tol; tol must stay below the packing radius 1/2.
bool is_in_lattice(FluxClass v, double tol, const LatticeSpec& spec = {});

// Empirical bracketing of  A ||flux|| <= inf energies <= B ||flux||  from a
// batch of candidate path energies sharing the same flux.
struct DualityBounds {
    double lower_ratio = 0.0;  // min(candidates) / ||flux||
    double upper_ratio = 0.0;  // max(candidates) / ||flux||
};

DualityBounds duality_bounds(FluxClass flux, const std::vector<double>& candidate_energies);

// Flux-derived lower-bound floors for the iterates phi^k, k = 1..k_max: the
// quotient-norm distance of k * flux from the lattice. Requires a flux off
// the lattice (checked at 1e-6), otherwise every floor would be vacuous.
std::vector<double> iterate_lower_bound(FluxClass flux, int k_max,
                                        const LatticeSpec& spec = {});

// Flux floor of a path with the volume prefactor 1/(2 sqrt(Vol)) applied
// (Vol = 1 here); the sharper unprefactored floor is the flux norm itself.
struct FluxFloor {
    double raw = 0.0;         // ||flux||_{L^2}
    double prefactored = 0.0; // raw / 2
};

FluxFloor flux_floor(FluxClass flux);

}  // namespace hoferlike
