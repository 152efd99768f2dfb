#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hoferlike/functionals.hpp"

namespace hoferlike {

// Truncated search space for path-energy minimisation: per-axis Fourier
// modes for the Hamiltonian part and an optional harmonic channel, each with
// a shifted-Legendre polynomial in time. The decoded scalar part carries no
// constant mode, so it is mean-zero by construction.
struct PathParametrization {
    int modes_per_axis = 3;   // spatial modes k = 1..M on each axis, cos and sin
    int temporal_coeffs = 6;  // Legendre coefficients per channel
    bool with_harmonic = true;

    int spatial_channels() const { return 4 * modes_per_axis; }
    int channels() const { return spatial_channels() + (with_harmonic ? 2 : 0); }
    int param_count() const { return channels() * temporal_coeffs; }

    // Channel values c_i(t) for all channels at one time.
    void channel_values(const std::vector<double>& theta, double t,
                        std::vector<double>& out) const;

    // Sampled generator on the given grid.
    GeneratorPath decode(const std::vector<double>& theta, const TorusGrid& grid,
                         int tsamples) const;

    // Exact velocity of the decoded generator at (t, p); no grid involved.
    Vec2 velocity(const std::vector<double>& theta, double t, Vec2 p) const;
};

enum class EnergyKind { hofer, hoferlike };

struct EstimatorConfig {
    int eval_grid = 32;       // grid for length evaluation of decoded paths
    int eval_tsamples = 24;   // time samples for length quadrature
    int probe_grid = 16;      // node grid for the endpoint sup metric
    int probe_steps = 24;     // RK4 steps for endpoint integration
    int budget = 2500;        // max objective evaluations across all restarts
    int restarts = 5;
    double endpoint_tol = 1e-3;
    double simplex_scale = 0.02;
    std::vector<double> penalty_schedule{1e1, 1e2, 1e3, 1e4};
    std::uint64_t seed = 0x5eed;
    PathParametrization param;
};

struct EnergyEstimate {
    double value = kInfinity;    // measured length of the best feasible path
    double base_value = kInfinity;  // length before any loop attachment
    EnergyKind kind = EnergyKind::hoferlike;
    double p = 2.0;
    Vec2 attachment{0.0, 0.0};
    double endpoint_error = kInfinity;
    bool feasible = false;
    double seed_objective = kInfinity;
    int evaluations = 0;
    std::vector<double> restart_best;  // best objective per restart
    std::uint64_t trace_hash = 0;      // hash of the accepted-objective trace
    std::vector<double> theta;         // decoded argmin
};

// Upper estimate of the Hofer / Hofer-like energy of the time-one map given
// by `target` (displacement field on its own grid): penalised simplex search
// over the parametrization, seeded at `seed_theta` when given. A nonzero
// integer attachment concatenates the corresponding harmonic loop onto the
// decoded path before measuring; the loop leaves the endpoint untouched.
// Throws "endpoint constraint not met" when no feasible point appears within
// the budget.
EnergyEstimate estimate_energy(const DisplacementField& target, EnergyKind kind, double p,
                               const EstimatorConfig& cfg,
                               const std::vector<double>* seed_theta = nullptr,
                               Vec2 attachment = {0.0, 0.0});

// Left-concatenates the constant harmonic loop of integer class gamma onto
// gen (loop runs second). Output carries 2T intervals; the flux shifts by
// gamma while the time-one map is unchanged on the torus.
GeneratorPath attach_lattice_loop(const GeneratorPath& gen, Vec2 gamma, double delta = 0.1);

// One target of the norm-agreement experiment: a Hamiltonian time-one map
// plus the parametrization seed that generates it.
struct Flux0Target {
    std::string id;
    std::vector<double> seed_theta;  // Hamiltonian channels only
};

struct AttachmentRow {
    Vec2 gamma;
    double value = kInfinity;
    double endpoint_error = kInfinity;
    bool feasible = false;
};

struct Flux0Row {
    std::string id;
    double hofer_estimate = kInfinity;
    double hoferlike_estimate = kInfinity;  // min over the attachment table
    Vec2 best_attachment{0.0, 0.0};
    std::vector<AttachmentRow> attachments;
    bool agree = false;        // |E_HL - E_H| <= tol_opt
    bool argmin_stable = false;  // no nonzero attachment beats gamma = 0 below the lattice norm
};

// Runs both estimators on each target over the 9-point attachment
// neighbourhood; tol_opt is the agreement window.
std::vector<Flux0Row> flux0_check(const std::vector<Flux0Target>& targets, double p,
                                  const EstimatorConfig& cfg, const TorusGrid& target_grid,
                                  int target_tsamples, int target_substeps, double tol_opt);

// Region displaced on the torus. A strip is {y0 <= y mod 1 <= y0 + height}
// (an annulus around a horizontal circle); a disk has centre and radius.
struct Region {
    enum class Kind { strip, disk, annulus } kind = Kind::strip;
    double y0 = 0.0;
    double height = 0.0;  // strip/annulus width
    Vec2 center{0.5, 0.5};
    double radius = 0.0;
};

struct DisplacementEnergyReport {
    double upper = kInfinity;
    double lower = 0.0;
    double translation_candidate = kInfinity;   // harmonic candidate length
    double hamiltonian_candidate = kInfinity;   // shear candidate length (disks)
    double flux_norm_bound = kInfinity;         // m'' fed by the translation candidate
    bool lower_applicable = false;  // flux floor only binds regions no Hamiltonian clears
    bool displacement_verified = false;
};

DisplacementEnergyReport displacement_energy(const Region& region, const EstimatorConfig& cfg,
                                             const TorusGrid& grid, int tsamples, int substeps);

}  // namespace hoferlike
