#include "hoferlike/constructions.hpp"
#include "hoferlike/flux_lattice.hpp"
#include "suites_internal.hpp"

namespace hoferlike::suites {

using namespace suites_detail;

namespace {

double flux_gap(FluxClass u, FluxClass v) {
    return std::max(std::abs(u.a - v.a), std::abs(u.b - v.b));
}

double endpoint_gap(const DiffeoPath& a, const DiffeoPath& b) {
    const DisplacementField& da = a.endpoint();
    const DisplacementField& db = b.endpoint();
    double m = 0.0;
    for (size_t k = 0; k < da.vx.size(); ++k) {
        m = std::max(m, std::abs(da.vx[k] - db.vx[k]));
        m = std::max(m, std::abs(da.vy[k] - db.vy[k]));
    }
    return m;
}

}  // namespace

SuiteResult flux(const RunConfig& cfg) {
    SuiteBuilder sb("flux", cfg);
    const TorusGrid grid(cfg.grid.n);
    const int T = cfg.grid.tsamples;
    Rng rng(cfg.seed ^ 0xf1f2ULL);

    struct Entry {
        std::string kind;
        GeneratorPath gen;
        DiffeoPath path;
    };
    std::vector<Entry> corpus;
    corpus.reserve(30);

    for (int i = 0; i < 10; ++i) {
        const TrigPoly poly = TrigPoly::random(rng, 2, 0.35);
        GeneratorPath gen = profiled_hamiltonian(grid, T, poly, i);
        corpus.push_back({"hamiltonian", gen, integrate_generator(gen, cfg.grid.substeps)});
    }
    for (int i = 0; i < 10; ++i) {
        const Vec2 coeffs{rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7)};
        GeneratorPath gen = profiled_harmonic(grid, T, coeffs, i);
        corpus.push_back({"harmonic", gen, integrate_generator(gen, cfg.grid.substeps)});
    }
    for (int i = 0; i < 10; ++i) {
        const TrigPoly poly = TrigPoly::random(rng, 2, 0.3);
        GeneratorPath gen = merge_generators(
            profiled_hamiltonian(grid, T, poly, i),
            profiled_harmonic(grid, T, {rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)}, i + 2));
        corpus.push_back({"mixed", gen, integrate_generator(gen, cfg.grid.substeps)});
    }

    std::ostringstream table;
    table << "path,kind,flux_def_a,flux_def_b,flux_coh_a,flux_coh_b,gap\n";
    double worst_gap = 0.0, worst_ham = 0.0;
    for (size_t i = 0; i < corpus.size(); ++i) {
        const FluxClass fd = flux_definition(corpus[i].path);
        const FluxClass fc = flux_cohomological(corpus[i].gen);
        const double gap = flux_gap(fd, fc);
        worst_gap = std::max(worst_gap, gap);
        if (corpus[i].kind == "hamiltonian") worst_ham = std::max(worst_ham, fd.l2_norm());
        table << i << ',' << corpus[i].kind << ',' << csv_number(fd.a) << ',' << csv_number(fd.b)
              << ',' << csv_number(fc.a) << ',' << csv_number(fc.b) << ',' << csv_number(gap)
              << '\n';
    }
    sb.tables["flux_routes.csv"] = table.str();

    sb.check_le("definition_vs_cohomological", worst_gap, 1e-5, "30 mixed paths");
    sb.check_le("hamiltonian_flux", worst_ham, 1e-5);

    // additivity under pointwise composition
    double worst_add = 0.0;
    for (int i = 0; i < 4; ++i) {
        const Entry& a = corpus[i];
        const Entry& b = corpus[(i + 13) % corpus.size()];
        const DiffeoPath comp = compose_paths(a.path, b.path);
        const FluxClass fsum = flux_cohomological(a.gen) + flux_cohomological(b.gen);
        worst_add = std::max(worst_add, flux_gap(flux_definition(comp), fsum));
    }
    sb.check_le("composition_additivity", worst_add, 1e-5);

    // left concatenation is flux- and endpoint-equivalent to composition
    double worst_homotopy = 0.0, worst_endpoint = 0.0;
    for (int i = 0; i < 2; ++i) {
        const Entry& a = corpus[2 + i];
        const Entry& b = corpus[(14 + 3 * i) % corpus.size()];
        const DiffeoPath cat = concatenate_left(a.path, b.path, 0.1);
        const DiffeoPath comp = compose_paths(a.path, b.path);
        worst_homotopy =
            std::max(worst_homotopy, flux_gap(flux_definition(cat), flux_definition(comp)));
        worst_endpoint = std::max(worst_endpoint, endpoint_gap(cat, comp));
    }
    sb.check_le("concatenation_flux_invariance", worst_homotopy, 1e-5,
                "flux(psi *_l phi) = flux(psi o phi)");
    sb.check_le("concatenation_endpoint", worst_endpoint, 1e-6);

    // reversal negates the flux
    {
        const Entry& e = corpus[12];
        const FluxClass fwd = flux_definition(e.path);
        const FluxClass rev = flux_definition(reverse_path(e.path));
        sb.check_le("reversal_negates_flux", flux_gap(rev, {-fwd.a, -fwd.b}), 1e-5);
    }
    return sb.finish();
}

SuiteResult lengths(const RunConfig& cfg) {
    SuiteBuilder sb("lengths", cfg);
    const TorusGrid grid(cfg.grid.n);
    const int T = cfg.grid.tsamples;
    Rng rng(cfg.seed ^ 0x1e57ULL);
    const double ps[] = {1.0, 1.5, 2.0, 3.0, 6.0, kInfinity};

    // concatenation additivity of the (1,p) lengths through the full
    // integrate / concatenate / recover pipeline
    double worst_concat = 0.0;
    for (int i = 0; i < 2; ++i) {
        const TrigPoly pa = TrigPoly::random(rng, 2, 0.3);
        const TrigPoly pb = TrigPoly::random(rng, 2, 0.3);
        const GeneratorPath ga = profiled_hamiltonian(grid, T, pa, 3);
        const GeneratorPath gb =
            i == 0 ? profiled_hamiltonian(grid, T, pb, 1)
                   : merge_generators(profiled_hamiltonian(grid, T, pb, 1),
                                      profiled_harmonic(grid, T, {0.4, -0.2}, 0));
        const DiffeoPath patha = integrate_generator(ga, cfg.grid.substeps);
        const DiffeoPath pathb = integrate_generator(gb, cfg.grid.substeps);
        const DiffeoPath cat = concatenate_left(pathb, patha, 0.1);
        const GeneratorPath recovered = recover_generator(cat, closed_tol_for(cfg, grid));
        for (double p : {1.0, 2.0, kInfinity}) {
            const double sum = hoferlike_length(ga, p, LengthMode::time_integral).value +
                               hoferlike_length(gb, p, LengthMode::time_integral).value;
            const double whole =
                hoferlike_length(recovered, p, LengthMode::time_integral).value;
            worst_concat = std::max(worst_concat, std::abs(whole - sum));
        }
    }
    sb.check_le("concatenation_additivity", worst_concat, 1e-3,
                "l(psi *_l phi) = l(psi) + l(phi), p in {1, 2, inf}");

    // monotonicity in p on 50 random generators, plus the flux floor
    double worst_monotonicity = -kInfinity;  // most negative increment
    double worst_floor = -kInfinity;         // flux norm minus length
    for (int i = 0; i < 50; ++i) {
        const TrigPoly poly = TrigPoly::random(rng, 3, 0.6);
        const GeneratorPath gen = merge_generators(
            profiled_hamiltonian(grid, T, poly, i),
            profiled_harmonic(grid, T, {rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8)}, i + 1));
        double prev = -kInfinity;
        for (double p : ps) {
            const double v = hoferlike_length(gen, p, LengthMode::time_integral).value;
            if (prev > -kInfinity) worst_monotonicity = std::max(worst_monotonicity, prev - v);
            prev = v;
        }
        const double floor = flux_cohomological(gen).l2_norm();
        const double l12 = hoferlike_length(gen, 2.0, LengthMode::time_integral).value;
        worst_floor = std::max(worst_floor, floor - l12);
    }
    sb.check_le("p_monotonicity", worst_monotonicity, 1e-12,
                "l^(1,p) non-decreasing in p over 50 generators");
    sb.check_le("flux_floor", worst_floor, 1e-8, "||Flux|| <= l^(1,2) on every corpus path");

    // Calabi: vanishes for normalised Hamiltonians, bounded by Hofer length
    double worst_cal = 0.0, worst_cal_ineq = -kInfinity;
    for (int i = 0; i < 100; ++i) {
        const TrigPoly poly = TrigPoly::random(rng, 3, 0.8);
        const GeneratorPath gen = profiled_hamiltonian(grid, T, poly, i);
        const double cal = calabi(gen);
        const double lh = hofer_length(gen, LengthMode::time_integral).value;
        worst_cal = std::max(worst_cal, std::abs(cal));
        worst_cal_ineq = std::max(worst_cal_ineq, std::abs(cal) - lh);
    }
    sb.check_le("calabi_normalized_vanishes", worst_cal, 1e-10,
                "100 normalised Hamiltonian generators");
    sb.check_le("calabi_hofer_inequality", worst_cal_ineq, 1e-9);
    {
        const TrigPoly poly = TrigPoly::random(rng, 2, 0.5);
        const GeneratorPath gen = profiled_hamiltonian(grid, T, poly, 0);
        std::vector<ScalarField> offsets(static_cast<size_t>(T) + 1, ScalarField(grid, 0.37));
        sb.check_le("calabi_offset", std::abs(calabi(gen, &offsets) - 0.37), 1e-12,
                    "constant offset c integrates to c on the unit-area torus");
    }

    // Hamiltonian-then-harmonic concatenations respect the flux floor
    double worst_respect = -kInfinity;
    for (int i = 0; i < 2; ++i) {
        const TrigPoly poly = TrigPoly::random(rng, 2, 0.3);
        const GeneratorPath gh = profiled_hamiltonian(grid, T, poly, 0);
        const GeneratorPath gr = profiled_harmonic(
            grid, T, {rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)}, 0);
        const DiffeoPath cat = concatenate_left(integrate_generator(gr, cfg.grid.substeps),
                                                integrate_generator(gh, cfg.grid.substeps), 0.1);
        const GeneratorPath rec = recover_generator(cat, closed_tol_for(cfg, grid));
        const double l = hoferlike_length(rec, 2.0, LengthMode::time_integral).value;
        const double f = flux_definition(cat).l2_norm();
        worst_respect = std::max(worst_respect, f - l);
    }
    sb.check_le("hodge_respect_floor", worst_respect, 1e-6,
                "Hamiltonian-then-harmonic concatenations: l >= ||Flux||");

    // reparametrisation invariance of the (1,p) lengths, fine time grid
    double worst_reparam = 0.0;
    {
        const int TF = 512;
        for (int i = 0; i < 3; ++i) {
            const TrigPoly poly = TrigPoly::random(rng, 2, 0.5);
            const ScalarField shape = [&] {
                ScalarField f = poly.sample(grid);
                f.subtract_mean();
                return f;
            }();
            const Vec2 hc{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
            const int profile = i;

            GeneratorPath direct(grid, TF), reparam(grid, TF);
            for (int j = 0; j <= TF; ++j) {
                const double t = static_cast<double>(j) / TF;
                const double w = profile_value(profile, t);
                direct.hamiltonian[j] = shape;
                for (double& v : direct.hamiltonian[j].values) v *= w;
                direct.harmonic[j] = w * hc;

                // g = quintic plateau ramp, dg its derivative
                const double g = plateau_ramp(t, 0.1);
                const double eps = 1e-6;
                const double dg =
                    (plateau_ramp(std::min(t + eps, 1.0), 0.1) -
                     plateau_ramp(std::max(t - eps, 0.0), 0.1)) /
                    (std::min(t + eps, 1.0) - std::max(t - eps, 0.0));
                const double wg = profile_value(profile, g) * dg;
                reparam.hamiltonian[j] = shape;
                for (double& v : reparam.hamiltonian[j].values) v *= wg;
                reparam.harmonic[j] = wg * hc;
            }
            for (double p : {1.0, 2.0}) {
                const double a = hoferlike_length(direct, p, LengthMode::time_integral).value;
                const double b = hoferlike_length(reparam, p, LengthMode::time_integral).value;
                worst_reparam = std::max(worst_reparam, std::abs(a - b));
            }
        }
    }
    sb.check_le("reparametrization_invariance", worst_reparam, 1e-4);

    // Hamiltonian generators: the (1,2) Hofer-like and Hofer lengths agree
    // bit for bit on the shared quadrature
    {
        const TrigPoly poly = TrigPoly::random(rng, 3, 0.7);
        const GeneratorPath gen = profiled_hamiltonian(grid, T, poly, 1);
        const double a = hoferlike_length(gen, 2.0, LengthMode::time_integral).value;
        const double b = hofer_length(gen, LengthMode::time_integral).value;
        sb.check_true("hamiltonian_reduction_exact", a == b,
                      "harmonic term is exactly zero for Hamiltonian generators");
    }

    // length ledger rows for the corpus
    std::ostringstream table;
    table << "path_id,functional,p,N,T,value\n";
    for (int i = 0; i < 4; ++i) {
        const TrigPoly poly = TrigPoly::random(rng, 2, 0.5);
        const GeneratorPath gen = merge_generators(
            profiled_hamiltonian(grid, T, poly, i),
            profiled_harmonic(grid, T, {rng.uniform(-0.5, 0.5), 0.2}, i));
        for (double p : {1.0, 2.0}) {
            for (LengthMode mode : {LengthMode::time_integral, LengthMode::time_sup}) {
                LengthReport rep = hoferlike_length(gen, p, mode, "lengths_" + std::to_string(i));
                table << rep.path_id << ',' << length_tag(rep) << ',' << p << ',' << rep.grid_n
                      << ',' << rep.tsamples << ',' << csv_number(rep.value) << '\n';
            }
        }
    }
    sb.tables["length_ledger.csv"] = table.str();
    return sb.finish();
}

SuiteResult fragment(const RunConfig& cfg) {
    SuiteBuilder sb("fragment", cfg);
    const TorusGrid grid(cfg.grid.n);
    const int T = cfg.grid.tsamples;

    // harmonic family with end-slope-matched coefficient profiles
    std::vector<Vec2> family(static_cast<size_t>(T) + 1);
    for (int j = 0; j <= T; ++j) {
        const double t = static_cast<double>(j) / T;
        family[j] = {0.6 * profile_value(1, t), -0.4 * profile_value(3, t)};
    }

    const FragmentationPlan plan = fragment(50, 0.05);
    double wsum = 0.0;
    for (double w : plan.weights) wsum += w;
    sb.check_le("weight_sum", std::abs(wsum - 1.0), 1e-12, "inverse-square weights, 50 pieces");
    sb.data["cutoff_index"] = plan.cutoff_index;

    double tail = 0.0;
    for (int k = plan.cutoff_index; k < plan.pieces(); ++k) tail += plan.weights[k];
    sb.check_le("cutoff_tail_mass", tail, plan.epsilon);
    double worst_late_weight = 0.0;
    for (int k = plan.cutoff_index; k < plan.pieces(); ++k)
        worst_late_weight = std::max(worst_late_weight, plan.weights[k]);
    sb.check_le("cutoff_piece_weight", worst_late_weight, plan.epsilon);

    // harmonic parts of the pieces sum back to the family
    double worst_sum = 0.0;
    {
        std::vector<Vec2> acc(family.size(), Vec2{});
        for (int k = 0; k < plan.pieces(); ++k) {
            const std::vector<Vec2> piece = fragment_piece(plan, k, family);
            for (size_t j = 0; j < acc.size(); ++j) acc[j] += piece[j];
        }
        for (size_t j = 0; j < acc.size(); ++j)
            worst_sum = std::max({worst_sum, std::abs(acc[j].x - family[j].x),
                                  std::abs(acc[j].y - family[j].y)});
    }
    sb.check_le("harmonic_sum_exact", worst_sum, 1e-12);

    // per-piece sup length scales linearly in the weight and decreases to 0
    double sup_norm = 0.0;
    for (const Vec2& h : family) sup_norm = std::max(sup_norm, h.norm());
    double worst_piece_scale = 0.0;
    bool monotone = true;
    double prev_len = kInfinity;
    std::ostringstream table;
    table << "piece,weight,sup_length,flux_a,flux_b,lattice_distance\n";
    const auto rows = fragment_flux_check(plan, family);
    for (int k = 0; k < plan.pieces(); ++k) {
        GeneratorPath piece(grid, T);
        const std::vector<Vec2> coeffs = fragment_piece(plan, k, family);
        piece.harmonic = coeffs;
        const double len = hoferlike_length(piece, 2.0, LengthMode::time_sup).value;
        worst_piece_scale =
            std::max(worst_piece_scale, std::abs(len - plan.weights[k] * sup_norm));
        monotone = monotone && len <= prev_len + 1e-15;
        prev_len = len;
        table << k << ',' << csv_number(plan.weights[k]) << ',' << csv_number(len) << ','
              << csv_number(rows[k].flux.a) << ',' << csv_number(rows[k].flux.b) << ','
              << csv_number(rows[k].lattice_distance) << '\n';
    }
    sb.tables["pieces.csv"] = table.str();
    sb.check_le("piece_length_scaling", worst_piece_scale, 1e-12,
                "sup length of piece k equals nu_k sup ||H||");
    sb.check_true("piece_length_monotone", monotone, "piece lengths decrease to zero");
    sb.check_le("last_piece_length", prev_len, plan.weights.back() * sup_norm + 1e-12);

    // compose the truncated flows and recover the generator
    {
        const FragmentationPlan small = fragment(8, 0.2);
        DiffeoPath composed = [&] {
            GeneratorPath piece(grid, T);
            piece.harmonic = fragment_piece(small, 0, family);
            return integrate_generator(piece, cfg.grid.substeps);
        }();
        for (int k = 1; k < small.pieces(); ++k) {
            GeneratorPath piece(grid, T);
            piece.harmonic = fragment_piece(small, k, family);
            composed = compose_paths(integrate_generator(piece, cfg.grid.substeps), composed);
        }
        const GeneratorPath rec = recover_generator(composed, closed_tol_for(cfg, grid));
        double worst = 0.0, worst_exact = 0.0;
        for (int j = 0; j <= T; ++j) {
            worst = std::max({worst, std::abs(rec.harmonic[j].x - family[j].x),
                              std::abs(rec.harmonic[j].y - family[j].y)});
            worst_exact = std::max(worst_exact, oscillation(rec.hamiltonian[j]));
        }
        sb.check_le("composition_recovers_family", worst, 2e-3,
                    "8 truncated flows composed, generator recovered");
        sb.check_le("composition_exact_part", worst_exact, 2e-3,
                    "harmonic pieces compose to a harmonic path");
    }
    return sb.finish();
}

SuiteResult twoparam(const RunConfig& cfg) {
    SuiteBuilder sb("twoparam", cfg);
    const TorusGrid grid(cfg.grid.twoparam_n);
    const int S = cfg.grid.s_samples;
    const int T = 32;  // family time grid; (S+1)(T+1) full fields are stored
    Rng rng(cfg.seed ^ 0x2aa7ULL);

    std::ostringstream table;
    table << "family,sup_velocity,gronwall_bound,rate_n,rate_k,osc,osc_bound\n";

    auto harmonic_vf_family = [&](const std::vector<Vec2>& coeffs) {
        std::vector<VectorField> x;
        x.reserve(coeffs.size());
        for (const Vec2& h : coeffs) x.emplace_back(grid, h.y, -h.x);  // sharp of a dx + b dy
        return x;
    };

    bool all_gronwall = true, all_osc = true;
    double const_gap = kInfinity;

    for (int fam_id = 0; fam_id < 10; ++fam_id) {
        std::vector<Vec2> coeffs(static_cast<size_t>(T) + 1);
        const double amp = 0.3 + 0.07 * fam_id;
        for (int j = 0; j <= T; ++j) {
            const double t = static_cast<double>(j) / T;
            if (fam_id == 0) {
                coeffs[j] = {amp, 0.0};  // the constant analytic case
            } else if (fam_id == 1) {
                coeffs[j] = {amp * std::cos(kPi * t), amp * std::sin(kPi * t)};
            } else {
                coeffs[j] = {amp * profile_value(fam_id, t),
                             -0.5 * amp * profile_value(fam_id + 1, t)};
            }
        }
        TwoParamFamily fam = build_drive(grid, harmonic_vf_family(coeffs), S);
        flow_in_s(fam, cfg.grid.substeps);
        extract_velocity(fam);

        const GronwallReport gr = gronwall_check(fam);
        const OscBoundReport ob = osc_bound_check(fam, 1.0, 1.0);
        all_gronwall = all_gronwall && gr.pass;
        all_osc = all_osc && ob.pass;
        table << fam_id << ',' << csv_number(gr.sup_velocity) << ',' << csv_number(gr.bound)
              << ',' << csv_number(gr.rate_n) << ',' << csv_number(gr.rate_k) << ','
              << csv_number(ob.osc_value) << ',' << csv_number(ob.bound) << '\n';

        if (fam_id == 0) {
            // constant drive: velocity is (s - s^2) X, sup at s = 1/2
            const_gap = std::abs(gr.sup_velocity - 0.25 * amp);
            sb.data["constant_case_sup_velocity"] = gr.sup_velocity;
            sb.data["constant_case_quarter_norm"] = 0.25 * amp;

            double v0 = 0.0;
            for (int it = 0; it <= fam.t_samples; ++it)
                v0 = std::max(v0, fam.velocity[fam.index(0, it)].max_norm());
            sb.check_le("velocity_vanishes_at_s0", v0, 1e-15);

            double z0 = 0.0;
            for (int is = 0; is <= fam.s_samples; ++is)
                z0 = std::max(z0, fam.drive[fam.index(is, 0)].max_norm());
            sb.check_le("drive_vanishes_at_t0", z0, 1e-15);
        }
    }
    sb.tables["families.csv"] = table.str();

    sb.check_true("gronwall_pass", all_gronwall, "corpus of 10 harmonic families");
    sb.check_true("oscillation_bound_pass", all_osc);
    sb.check_le("constant_family_exact_velocity", const_gap, 1e-12,
                "sup |velocity| equals ||X|| / 4 for constant input");
    sb.check_le("synthetic_bound_value", std::abs(gronwall_bound(1.0, 1.0) - (std::exp(1.0) - 1.0)),
                1e-15, "N = K = 1 gives e - 1");

    // the documented two-mode case on the finer grid
    {
        const TorusGrid fine(64);
        const int TS = 32;
        std::vector<VectorField> x;
        for (int j = 0; j <= TS; ++j) {
            const double t = static_cast<double>(j) / TS;
            x.emplace_back(fine, std::sin(kPi * t), -std::cos(kPi * t));
        }
        TwoParamFamily fam = build_drive(fine, x, 32);
        flow_in_s(fam, cfg.grid.substeps);
        extract_velocity(fam);
        const GronwallReport gr = gronwall_check(fam);
        const OscBoundReport ob = osc_bound_check(fam, 1.0, 1.0);
        sb.check_true("two_mode_gronwall", gr.pass, "cos/sin family at N = 64, S = T = 32");
        sb.check_true("two_mode_osc_bound", ob.pass);
        sb.data["two_mode_sup_velocity"] = gr.sup_velocity;
        sb.data["two_mode_bound"] = gr.bound;
    }
    return sb.finish();
}

}  // namespace hoferlike::suites
