#pragma once

#include <vector>

#include "hoferlike/isotopy.hpp"

namespace hoferlike {

// Two-parameter deformation of a time family of symplectic vector fields:
// the drive combines the family with its running time integral, the flow
// integrates the drive in s from the identity, and the velocity measures the
// t-derivative of the flow in Eulerian form. Sampled on an (S+1) x (T+1)
// parameter grid over [0,1]^2.
struct TwoParamFamily {
    TorusGrid grid;
    int s_samples;  // S
    int t_samples;  // T
    std::vector<VectorField> input;     // X_t, T+1 samples
    std::vector<VectorField> drive;     // per (s,t)
    std::vector<DisplacementField> flow;  // per (s,t); identity at s = 0
    std::vector<VectorField> velocity;  // per (s,t); zero at s = 0
    double drive_dt_sup = 0.0;   // grid sup of |d(drive)/dt|
    double drive_jac_sup = 0.0;  // grid sup of the drive Jacobian operator norm

    TwoParamFamily(const TorusGrid& g, int S, int T);

    int index(int is, int it) const { return is * (t_samples + 1) + it; }
    bool has_flow() const { return !flow.empty(); }
    bool has_velocity() const { return !velocity.empty(); }
};

// drive(s,t) = t X_s - 2 s Int_0^t X_u du  (trapezoidal running integral).
TwoParamFamily build_drive(const TorusGrid& g, const std::vector<VectorField>& x_family,
                           int s_samples);

// Integrates d(flow)/ds = drive(s,t) o flow at each fixed t with classical
// fourth-order stepping from the identity. Also estimates the drive sups.
void flow_in_s(TwoParamFamily& fam, int substeps);

// velocity(s,t) at a node q is the central t-difference of the flow through
// the preimage of q; needs at least 3 t samples and invertible flow maps.
void extract_velocity(TwoParamFamily& fam);

// (N/K)(e^{Ks} - 1); the K -> 0 limit N s is used below the rate floor.
double gronwall_bound(double rate_n, double rate_k, double s = 1.0);

struct GronwallReport {
    double sup_velocity = 0.0;
    double bound = 0.0;
    double rate_n = 0.0;  // margin-inflated drive_dt_sup
    double rate_k = 0.0;  // margin-inflated drive_jac_sup
    bool degenerate_rate = false;  // K below floor, limit bound in effect
    bool pass = false;
};

// Checks sup |velocity| against the Gronwall envelope with a 10% margin on
// the grid-estimated rates and 1e-6 slack.
GronwallReport gronwall_check(const TwoParamFamily& fam);

// Running s-integral of omega(drive, velocity) up to u at one t node.
struct CorrectionField {
    ScalarField raw;
    ScalarField normalized;  // mean-zero copy
};

CorrectionField correction_hamiltonian(const TwoParamFamily& fam, double u, int t_index);

struct OscBoundReport {
    double osc_value = 0.0;  // worst oscillation over t nodes
    double bound = 0.0;      // 4 L0 sup|velocity| sup_t ||X_t||_HL
    double sup_velocity = 0.0;
    double sup_input_norm = 0.0;
    bool pass = false;
};

// Oscillation bound for the correction fields at integration limit u,
// checked across all interior t nodes.
OscBoundReport osc_bound_check(const TwoParamFamily& fam, double u, double l0);

// Inverse-square fragmentation weights: nu_k proportional to 1/k^2,
// truncated at `pieces` and renormalised to sum 1. cutoff_index is the least
// index from which both the tail mass and the individual weights stay
// below epsilon.
struct FragmentationPlan {
    std::vector<double> weights;
    int cutoff_index = 0;
    double epsilon = 0.0;

    int pieces() const { return static_cast<int>(weights.size()); }
};

FragmentationPlan fragment(int pieces, double epsilon);

// Harmonic coefficients of piece k (0-based): weights[k] * family.
std::vector<Vec2> fragment_piece(const FragmentationPlan& plan, int k,
                                 const std::vector<Vec2>& family);

struct PieceFluxRow {
    int piece = 0;
    FluxClass flux;
    double lattice_distance = 0.0;
};

// Per-piece fluxes nu_k * Int H_t dt and their distances to the lattice.
std::vector<PieceFluxRow> fragment_flux_check(const FragmentationPlan& plan,
                                              const std::vector<Vec2>& family);

}  // namespace hoferlike
