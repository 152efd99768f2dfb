#include "hoferlike/flux_lattice.hpp"
#include "suites_internal.hpp"

namespace hoferlike::suites {

using namespace suites_detail;

SuiteResult hodge(const RunConfig& cfg) {
    SuiteBuilder sb("hodge", cfg);
    const TorusGrid grid(cfg.grid.n);
    Rng rng(cfg.seed ^ 0x710d6eULL);

    double worst_residual = 0.0, worst_ortho = 0.0, worst_recover_u = 0.0,
           worst_recover_h = 0.0, worst_linear = 0.0;
    std::ostringstream table;
    table << "form,residual,orthogonality,potential_error,harmonic_error\n";

    Vec2 prev_h{};
    ScalarField prev_u(grid);
    for (int i = 0; i < 100; ++i) {
        const TrigPoly poly = TrigPoly::random(rng, 6, 1.5);
        const Vec2 h{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        ScalarField u_true = poly.sample(grid);
        u_true.subtract_mean();
        OneFormField alpha = poly.gradient(grid);  // analytic d(u_true)
        for (double& v : alpha.a) v += h.x;
        for (double& v : alpha.b) v += h.y;

        const HodgeDecomposition dec = hodge_decompose(alpha, closed_tol_for(cfg, grid));
        worst_residual = std::max(worst_residual, dec.residual);

        const OneFormField du = exterior_derivative(dec.exact_potential);
        const OneFormField hf(grid, dec.harmonic.x, dec.harmonic.y);
        const double ortho = std::abs(l2_inner_product(du, hf));
        worst_ortho = std::max(worst_ortho, ortho);

        double ue = 0.0;
        for (size_t k = 0; k < u_true.values.size(); ++k)
            ue = std::max(ue, std::abs(u_true.values[k] - dec.exact_potential.values[k]));
        const double he =
            std::max(std::abs(dec.harmonic.x - h.x), std::abs(dec.harmonic.y - h.y));
        worst_recover_u = std::max(worst_recover_u, ue);
        worst_recover_h = std::max(worst_recover_h, he);

        table << i << ',' << csv_number(dec.residual) << ',' << csv_number(ortho) << ','
              << csv_number(ue) << ',' << csv_number(he) << '\n';

        if (i > 0) {  // linearity of the harmonic part against the previous form
            OneFormField sum = alpha;
            const OneFormField dprev = exterior_derivative(prev_u);
            for (size_t k = 0; k < sum.a.size(); ++k) {
                sum.a[k] += dprev.a[k] + prev_h.x;
                sum.b[k] += dprev.b[k] + prev_h.y;
            }
            const HodgeDecomposition dsum = hodge_decompose(sum, closed_tol_for(cfg, grid));
            worst_linear = std::max(
                worst_linear, std::max(std::abs(dsum.harmonic.x - (dec.harmonic.x + prev_h.x)),
                                       std::abs(dsum.harmonic.y - (dec.harmonic.y + prev_h.y))));
        }
        prev_h = h;
        prev_u = u_true;
    }
    sb.tables["forms.csv"] = table.str();

    sb.check_le("reconstruction_residual", worst_residual, 1e-8,
                "100 random smooth closed forms");
    sb.check_le("exact_harmonic_orthogonality", worst_ortho, 1e-9);
    sb.check_le("uniqueness_potential", worst_recover_u, 1e-8);
    sb.check_le("uniqueness_harmonic", worst_recover_h, 1e-8);
    sb.check_le("projection_linearity", worst_linear, 1e-10);

    {
        const TrigPoly poly = TrigPoly::random(rng, 4, 1.0);
        OneFormField alpha = poly.gradient(grid);
        for (double& v : alpha.a) v += 0.7;
        for (double& v : alpha.b) v -= 1.3;
        const OneFormField p1 = harmonic_projection(alpha);
        const OneFormField p2 = harmonic_projection(p1);
        double diff = 0.0;
        for (size_t k = 0; k < p1.a.size(); ++k)
            diff = std::max({diff, std::abs(p1.a[k] - p2.a[k]), std::abs(p1.b[k] - p2.b[k])});
        sb.check_le("projection_idempotence", diff, 1e-15);
    }

    const auto [l0, l1] = norm_equivalence_constants(1024);
    sb.check_le("norm_constant_l0", std::abs(l0 - 1.0), 1e-5);
    sb.check_le("norm_constant_l1", std::abs(l1 - 1.0), 1e-5);
    sb.data["l0"] = l0;
    sb.data["l1"] = l1;
    const auto scaled = norm_equivalence_constants_area(4.0);
    sb.check_le("norm_constant_scaled_area", std::abs(scaled.first - 0.5), 1e-12,
                "area 4 torus has L0 = L1 = 1/2");
    return sb.finish();
}

SuiteResult loop(const RunConfig& cfg) {
    SuiteBuilder sb("loop", cfg);
    const TorusGrid grid(cfg.grid.n);
    std::ostringstream table;
    table << "class_a,class_b,residual,is_loop\n";

    auto endpoint_residual = [](const DiffeoPath& path) {
        double residual = 0.0;
        const DisplacementField& d = path.endpoint();
        for (size_t k = 0; k < d.vx.size(); ++k) {
            residual = std::max(residual, std::abs(wrap_symmetric(d.vx[k])));
            residual = std::max(residual, std::abs(wrap_symmetric(d.vy[k])));
        }
        return residual;
    };

    double worst_integer = 0.0;
    for (int a = -2; a <= 2; ++a) {
        for (int b = -2; b <= 2; ++b) {
            const GeneratorPath gen =
                harmonic_generator(grid, cfg.grid.tsamples,
                                   {static_cast<double>(a), static_cast<double>(b)});
            const DiffeoPath path = integrate_generator(gen, cfg.grid.substeps);
            const double residual = endpoint_residual(path);
            worst_integer = std::max(worst_integer, residual);
            table << a << ',' << b << ',' << csv_number(residual) << ','
                  << (is_loop(path, cfg.tolerances.loop) ? 1 : 0) << '\n';
        }
    }

    double best_halfinteger = kInfinity;
    const Vec2 half_classes[] = {{0.5, 0.0}, {0.0, 0.5}, {0.5, 0.5}, {1.5, -1.0}, {-0.5, 2.0}};
    for (const Vec2& c : half_classes) {
        const GeneratorPath gen = harmonic_generator(grid, cfg.grid.tsamples, c);
        const DiffeoPath path = integrate_generator(gen, cfg.grid.substeps);
        const double residual = endpoint_residual(path);
        best_halfinteger = std::min(best_halfinteger, residual);
        table << c.x << ',' << c.y << ',' << csv_number(residual) << ','
              << (is_loop(path, cfg.tolerances.loop) ? 1 : 0) << '\n';
    }
    sb.tables["loop_residuals.csv"] = table.str();

    sb.check_le("integer_class_loop_residual", worst_integer, cfg.tolerances.loop,
                "harmonic flows over {-2..2}^2 return to the identity");
    sb.check_ge("half_integer_class_residual", best_halfinteger, 0.1,
                "non-integer classes stay far from the identity");
    return sb.finish();
}

SuiteResult scaling(const RunConfig& cfg) {
    SuiteBuilder sb("scaling", cfg);
    const TorusGrid grid(cfg.grid.n);
    Rng rng(cfg.seed ^ 0x5ca1eULL);
    std::ostringstream table;
    table << "generator,c,n,original,rescaled,ratio,low,high\n";

    double worst_dim2 = 0.0;
    bool brackets = true;
    const double cs[] = {0.5, 2.0, 5.0};

    for (int i = 0; i < 6; ++i) {
        const TrigPoly poly = TrigPoly::random(rng, 3, 0.8);
        GeneratorPath gen = merge_generators(
            profiled_hamiltonian(grid, cfg.grid.tsamples, poly, i),
            profiled_harmonic(grid, cfg.grid.tsamples,
                              {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}, i + 1));
        const double base = hoferlike_length(gen, 2.0, LengthMode::time_integral).value;

        for (double c : cs) {
            for (int n = 1; n <= 3; ++n) {
                const ScalingLaw law = scaling_law(gen, c, n);
                table << i << ',' << c << ',' << n << ',' << csv_number(base) << ','
                      << csv_number(law.rescaled) << ',' << csv_number(law.rescaled / base) << ','
                      << csv_number(law.predicted_low) << ',' << csv_number(law.predicted_high)
                      << '\n';
                if (n == 1)
                    worst_dim2 = std::max(worst_dim2, std::abs(law.rescaled - c * base));
                else
                    brackets = brackets && law.rescaled >= law.predicted_low - 1e-12 &&
                               law.rescaled <= law.predicted_high + 1e-12;
            }
        }
    }

    double worst_harmonic_power;
    {
        const GeneratorPath gen = harmonic_generator(grid, cfg.grid.tsamples, {0.3, -0.4});
        const double base = hoferlike_length(gen, 2.0, LengthMode::time_integral).value;
        const ScalingLaw law = scaling_law(gen, 4.0, 3);
        worst_harmonic_power = std::abs(law.rescaled - 16.0 * base);
    }
    sb.tables["scaling.csv"] = table.str();

    sb.check_le("dim2_exact_scaling", worst_dim2, 1e-10, "c in {0.5, 2, 5}");
    sb.check_true("higher_dim_brackets", brackets,
                  "rescaled within [min,max]{c, c^{(n+1)/2}} x original");
    sb.check_le("pure_harmonic_power", worst_harmonic_power, 1e-10,
                "n = 3, c = 4: harmonic factor c^2 = 16");
    const ScalingLaw unit =
        scaling_law(harmonic_generator(grid, cfg.grid.tsamples, {1.0, 0.0}), 1.0, 3);
    sb.check_le("identity_at_c1", std::abs(unit.rescaled - 1.0), 1e-14,
                "c = 1 leaves every length fixed");
    return sb.finish();
}

SuiteResult iterates(const RunConfig& cfg) {
    SuiteBuilder sb("iterates", cfg);
    std::ostringstream table;
    table << "flux_a,flux_b,k,floor\n";

    const FluxClass irrational{std::sqrt(2.0) / 10.0, 0.0};
    const auto floors = iterate_lower_bound(irrational, 20);
    double min_floor = kInfinity;
    for (int k = 0; k < 20; ++k) {
        min_floor = std::min(min_floor, floors[k]);
        table << irrational.a << ',' << irrational.b << ',' << (k + 1) << ','
              << csv_number(floors[k]) << '\n';
    }
    sb.check_ge("irrational_floor_positive", min_floor, 1e-6,
                "k sqrt(2)/10 never returns to the lattice, k <= 20");

    const auto half = iterate_lower_bound({0.5, 0.0}, 4);
    for (int k = 0; k < 4; ++k)
        table << 0.5 << ',' << 0.0 << ',' << (k + 1) << ',' << csv_number(half[k]) << '\n';
    sb.check_le("half_flux_even_iterates_vanish", std::max(half[1], half[3]), 1e-12,
                "2 x (0.5, 0) lands on the lattice");
    sb.check_ge("half_flux_odd_iterates", std::min(half[0], half[2]), 0.5 - 1e-12);

    const auto diag = iterate_lower_bound({0.5, 0.5}, 2);
    sb.check_le("diagonal_k2_vanishes", diag[1], 1e-12, "(1,1) lies in the lattice");

    bool threw = false;
    try {
        iterate_lower_bound({1.0, -2.0}, 3);
    } catch (const std::runtime_error&) {
        threw = true;
    }
    sb.check_true("lattice_flux_rejected", threw, "bound vacuous for trivial quotient flux");

    sb.check_le("lattice_min_norm", std::abs(lattice_min_norm() - 1.0), 1e-15);
    sb.check_le("lattice_min_norm_scaled", std::abs(lattice_min_norm({2, 2.0}) - 2.0), 1e-15,
                "diagnostic rescaled basis");
    sb.tables["iterate_floors.csv"] = table.str();
    return sb.finish();
}

}  // namespace hoferlike::suites
