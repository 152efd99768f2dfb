#include <thread>

#include "hoferlike/flux_lattice.hpp"
#include "suites_internal.hpp"

namespace hoferlike::suites {

using namespace suites_detail;
using nlohmann::json;

namespace {

// Seed vector for an autonomous single-mode Hamiltonian: channel layout is
// [cos_x, sin_x, cos_y, sin_y] per mode, temporal_coeffs Legendre weights
// each; the constant-in-time coefficient sits in slot 0.
std::vector<double> single_mode_seed(const PathParametrization& par, int channel, double amp) {
    std::vector<double> seed(static_cast<size_t>(4 * par.modes_per_axis) * par.temporal_coeffs,
                             0.0);
    seed[static_cast<size_t>(channel) * par.temporal_coeffs] = amp;
    return seed;
}

}  // namespace

SuiteResult flux0(const RunConfig& cfg) {
    SuiteBuilder sb("flux0", cfg);
    const TorusGrid grid(cfg.grid.n);
    PathParametrization ham_par = cfg.estimator.param;
    ham_par.with_harmonic = false;

    // five Hamiltonian targets with seed energies 2A in [0.2, 1.5]
    const double amps[] = {0.1, 0.2, 0.35, 0.5, 0.75};
    const int channels[] = {2, 0, 3, 1, 2};  // alternate axes and phases
    std::vector<Flux0Target> targets;
    for (int i = 0; i < 5; ++i)
        targets.push_back({"target_" + std::to_string(i),
                           single_mode_seed(ham_par, channels[i], amps[i])});

    const double tol_opt = 5e-2;
    std::vector<Flux0Row> rows;
    if (cfg.parallel > 1) {
        // independent targets fan out across workers; merge is by index
        rows.resize(targets.size());
        std::vector<std::thread> pool;
        const int workers = std::min<int>(cfg.parallel, static_cast<int>(targets.size()));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (size_t i = w; i < targets.size(); i += workers) {
                    const std::vector<Flux0Target> one{targets[i]};
                    rows[i] = flux0_check(one, 2.0, cfg.estimator, grid, cfg.grid.tsamples,
                                          cfg.grid.substeps, tol_opt)[0];
                }
            });
        }
        for (std::thread& t : pool) t.join();
    } else {
        rows = flux0_check(targets, 2.0, cfg.estimator, grid, cfg.grid.tsamples,
                           cfg.grid.substeps, tol_opt);
    }

    std::ostringstream table;
    table << "target,gamma_a,gamma_b,value,endpoint_error\n";
    double worst_gap = 0.0;
    double min_nonzero_attachment = kInfinity;
    bool all_argmin_stable = true, all_feasible = true;
    for (const Flux0Row& row : rows) {
        worst_gap = std::max(worst_gap, std::abs(row.hoferlike_estimate - row.hofer_estimate));
        all_argmin_stable = all_argmin_stable && row.argmin_stable;
        for (const AttachmentRow& arow : row.attachments) {
            all_feasible = all_feasible && arow.feasible;
            if (arow.gamma.x != 0.0 || arow.gamma.y != 0.0)
                min_nonzero_attachment = std::min(min_nonzero_attachment, arow.value);
            table << row.id << ',' << arow.gamma.x << ',' << arow.gamma.y << ','
                  << csv_number(arow.value) << ',' << csv_number(arow.endpoint_error) << '\n';
        }
    }
    sb.tables["attachments.csv"] = table.str();

    json jrows = json::array();
    for (const Flux0Row& row : rows)
        jrows.push_back({{"id", row.id},
                         {"hofer", row.hofer_estimate},
                         {"hoferlike", row.hoferlike_estimate},
                         {"best_attachment", {row.best_attachment.x, row.best_attachment.y}}});
    sb.data["targets"] = std::move(jrows);

    sb.check_le("norm_agreement", worst_gap, tol_opt,
                "|E_HL - E_H| over 5 Hamiltonian targets");
    sb.check_true("argmin_stability", all_argmin_stable,
                  "no attachment beats the trivial loop below the lattice norm");
    sb.check_ge("attachment_cost_floor", min_nonzero_attachment, lattice_min_norm() - 1e-6,
                "every nonzero loop costs at least the minimal lattice norm");
    sb.check_true("endpoints_feasible", all_feasible);
    return sb.finish();
}

SuiteResult displace(const RunConfig& cfg) {
    SuiteBuilder sb("displace", cfg);
    const TorusGrid grid(cfg.grid.n);

    Region strip;
    strip.kind = Region::Kind::strip;
    strip.y0 = 0.4;
    strip.height = 0.2;
    const DisplacementEnergyReport rep =
        displacement_energy(strip, cfg.estimator, grid, cfg.grid.tsamples, cfg.grid.substeps);

    sb.data["strip"] = {{"upper", rep.upper},
                        {"lower", rep.lower},
                        {"translation_candidate", rep.translation_candidate},
                        {"flux_norm_bound", rep.flux_norm_bound}};
    sb.check_le("strip_upper", rep.upper, 0.25 + 5e-2, "height 0.2 strip cleared by translation");
    sb.check_le("strip_lower_formula", std::abs(rep.lower - 0.5 * std::min(1.0, rep.flux_norm_bound)),
                1e-12, "lower = min{m, m''} / (2 sqrt(Vol))");
    sb.check_ge("strip_lower_positive", rep.lower, 1e-12);
    sb.check_true("strip_bracket", rep.upper >= rep.lower, "upper bound dominates the floor");
    sb.check_true("strip_displacement_verified", rep.displacement_verified,
                  "integrated endpoint clears the region");

    // a disk, for contrast: the Hamiltonian shear candidate wins
    Region disk;
    disk.kind = Region::Kind::disk;
    disk.center = {0.5, 0.5};
    disk.radius = 0.15;
    const DisplacementEnergyReport drep =
        displacement_energy(disk, cfg.estimator, grid, cfg.grid.tsamples, cfg.grid.substeps);
    sb.data["disk"] = {{"upper", drep.upper},
                       {"translation_candidate", drep.translation_candidate},
                       {"hamiltonian_candidate", drep.hamiltonian_candidate}};
    sb.check_true("disk_displacement_verified", drep.displacement_verified);
    sb.check_true("disk_hamiltonian_beats_translation",
                  drep.hamiltonian_candidate < drep.translation_candidate,
                  "small disks are cheaper to move with a Hamiltonian shear");

    bool degenerate_rejected = false;
    try {
        Region bad = strip;
        bad.height = 0.0;
        displacement_energy(bad, cfg.estimator, grid, cfg.grid.tsamples, cfg.grid.substeps);
    } catch (const std::runtime_error&) {
        degenerate_rejected = true;
    }
    sb.check_true("degenerate_region_rejected", degenerate_rejected);

    bool wide_rejected = false;
    try {
        Region bad = strip;
        bad.height = 0.6;
        displacement_energy(bad, cfg.estimator, grid, cfg.grid.tsamples, cfg.grid.substeps);
    } catch (const std::runtime_error&) {
        wide_rejected = true;
    }
    sb.check_true("wide_region_rejected", wide_rejected,
                  "strips of height >= 1/2 have no displacing candidate");
    return sb.finish();
}

SuiteResult duality(const RunConfig& cfg) {
    SuiteBuilder sb("duality", cfg);
    const TorusGrid grid(cfg.grid.n);
    const int T = cfg.grid.tsamples;
    Rng rng(cfg.seed ^ 0xd0a1ULL);

    const Vec2 flux_coeffs{0.0, 0.4};
    const GeneratorPath constant_path = harmonic_generator(grid, T, flux_coeffs);
    const FluxClass flux = flux_cohomological(constant_path);

    std::vector<double> candidates;
    const double constant_value =
        hoferlike_length(constant_path, 2.0, LengthMode::time_integral).value;
    candidates.push_back(constant_value);

    // a time-reparametrised representative of the same class
    {
        GeneratorPath reparam(grid, T);
        for (int j = 0; j <= T; ++j) {
            const double t = static_cast<double>(j) / T;
            const double eps = 1e-6;
            const double dg = (plateau_ramp(std::min(t + eps, 1.0), 0.1) -
                               plateau_ramp(std::max(t - eps, 0.0), 0.1)) /
                              (std::min(t + eps, 1.0) - std::max(t - eps, 0.0));
            reparam.harmonic[j] = dg * flux_coeffs;
        }
        candidates.push_back(hoferlike_length(reparam, 2.0, LengthMode::time_integral).value);
    }

    // Hamiltonian loop concatenated onto the constant path: same endpoint and
    // flux, strictly longer
    {
        const TrigPoly poly = TrigPoly::random(rng, 2, 0.4);
        GeneratorPath loop_gen(grid, T);
        const ScalarField shape = [&] {
            ScalarField f = poly.sample(grid);
            f.subtract_mean();
            return f;
        }();
        for (int j = 0; j <= T; ++j) {
            // out-and-back time profile, so the loop's time-one map is the identity
            const double t = static_cast<double>(j) / T;
            const double eps = 1e-6;
            auto bump = [&](double u) {
                return u <= 0.5 ? plateau_ramp(2.0 * u, 0.1) : plateau_ramp(2.0 - 2.0 * u, 0.1);
            };
            const double d = (bump(std::min(t + eps, 1.0)) - bump(std::max(t - eps, 0.0))) /
                             (std::min(t + eps, 1.0) - std::max(t - eps, 0.0));
            loop_gen.hamiltonian[j] = shape;
            for (double& v : loop_gen.hamiltonian[j].values) v *= d;
        }
        const DiffeoPath loop_path = integrate_generator(loop_gen, cfg.grid.substeps);
        const DiffeoPath base_path = integrate_generator(constant_path, cfg.grid.substeps);
        sb.check_true("hamiltonian_loop_closes", is_loop(loop_path, 1e-4),
                      "out-and-back Hamiltonian flow returns to the identity");
        const DiffeoPath cat = concatenate_left(loop_path, base_path, 0.1);
        const GeneratorPath rec = recover_generator(cat, closed_tol_for(cfg, grid));
        candidates.push_back(hoferlike_length(rec, 2.0, LengthMode::time_integral).value);
    }

    const DualityBounds bounds = duality_bounds(flux, candidates);
    sb.data["candidates"] = candidates;
    sb.data["lower_ratio"] = bounds.lower_ratio;
    sb.data["upper_ratio"] = bounds.upper_ratio;

    sb.check_le("constant_path_achieves_flux_norm", std::abs(constant_value - flux.l2_norm()),
                1e-6, "the constant harmonic path realises ||Flux||");
    sb.check_le("upper_bound_ratio", bounds.lower_ratio, 1.0 + 1e-6,
                "min candidate / ||flux|| <= 1 via the constant path");
    sb.check_ge("candidates_respect_floor", bounds.lower_ratio, 1.0 - 1e-4,
                "no candidate undercuts the flux norm");
    sb.check_true("bracket_ordered", bounds.upper_ratio >= bounds.lower_ratio);

    bool zero_rejected = false;
    try {
        duality_bounds({0.0, 0.0}, candidates);
    } catch (const std::runtime_error&) {
        zero_rejected = true;
    }
    sb.check_true("zero_flux_rejected", zero_rejected, "bounds undefined at zero flux");
    return sb.finish();
}

}  // namespace hoferlike::suites
