#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hoferlike/isotopy.hpp"

using namespace hoferlike;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.14159265358979323846;

GeneratorPath shear_generator(const TorusGrid& g, int T, double amp) {
    ScalarField u(g);
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix)
            u.at(ix, iy) = amp * std::cos(kTwoPi * iy / g.n());
    return hamiltonian_generator(g, T, u);
}

double endpoint_loop_residual(const DiffeoPath& p) {
    double m = 0.0;
    const DisplacementField& d = p.endpoint();
    for (size_t k = 0; k < d.vx.size(); ++k) {
        m = std::max(m, std::abs(wrap_symmetric(d.vx[k])));
        m = std::max(m, std::abs(wrap_symmetric(d.vy[k])));
    }
    return m;
}

}  // namespace

TEST_CASE("harmonic dy generator integrates to the unit translation") {
    const TorusGrid g(64);
    const GeneratorPath gen = harmonic_generator(g, 32, {0.0, 1.0});
    const DiffeoPath path = integrate_generator(gen, 2);

    // phi_t = (x + t, y); at t = 1/2 the displacement is (1/2, 0)
    const DisplacementField mid = displacement_at(path, 0.5);
    for (size_t k = 0; k < mid.vx.size(); ++k) {
        CHECK(std::abs(mid.vx[k] - 0.5) <= 1e-12);
        CHECK(std::abs(mid.vy[k]) <= 1e-12);
    }
    CHECK(endpoint_loop_residual(path) <= 1e-12);
    CHECK(is_loop(path, 1e-6));
}

TEST_CASE("zero generator gives the constant identity path") {
    const TorusGrid g(32);
    const DiffeoPath path = integrate_generator(zero_generator(g, 16), 1);
    for (const DisplacementField& d : path.displacement)
        for (size_t k = 0; k < d.vx.size(); ++k) {
            CHECK(d.vx[k] == 0.0);
            CHECK(d.vy[k] == 0.0);
        }
}

TEST_CASE("autonomous shear flow matches its closed form") {
    const TorusGrid g(128);
    const GeneratorPath gen = shear_generator(g, 64, 0.3);
    const DiffeoPath path = integrate_generator(gen, 4);

    // X = (u_y, -u_x) = (-0.6 pi sin(2 pi y), 0), so
    // phi_t(x, y) = (x - 0.6 pi t sin(2 pi y), y)
    double err = 0.0;
    for (int j : {16, 32, 64}) {
        const double t = static_cast<double>(j) / 64;
        const DisplacementField& d = path.displacement[j];
        for (int iy = 0; iy < g.n(); ++iy) {
            const double want = -0.6 * kPi * t * std::sin(kTwoPi * iy / g.n());
            for (int ix = 0; ix < g.n(); ++ix) {
                err = std::max(err, std::abs(d.vx[g.index(ix, iy)] - want));
                err = std::max(err, std::abs(d.vy[g.index(ix, iy)]));
            }
        }
    }
    CHECK(err <= 1e-6);
}

TEST_CASE("integration rejects CFL-violating steps") {
    const TorusGrid g(64);
    const GeneratorPath gen = harmonic_generator(g, 16, {0.0, 2000.0});
    CHECK_THROWS_WITH_AS(integrate_generator(gen, 1), "time step too large", std::runtime_error);
}

TEST_CASE("generator recovery round trips") {
    const TorusGrid g(128);

    // harmonic translation
    {
        const GeneratorPath gen = harmonic_generator(g, 64, {0.0, 1.0});
        const GeneratorPath rec = recover_generator(integrate_generator(gen, 4));
        double herr = 0.0, uerr = 0.0;
        for (int j = 0; j <= 64; ++j) {
            herr = std::max({herr, std::abs(rec.harmonic[j].x),
                             std::abs(rec.harmonic[j].y - 1.0)});
            uerr = std::max(uerr, oscillation(rec.hamiltonian[j]));
        }
        CHECK(herr <= 1e-6);
        CHECK(uerr <= 1e-6);
    }

    // identity
    {
        const GeneratorPath rec =
            recover_generator(integrate_generator(zero_generator(g, 64), 1));
        for (int j = 0; j <= 64; ++j) {
            CHECK(std::abs(rec.harmonic[j].x) <= 1e-12);
            CHECK(std::abs(rec.harmonic[j].y) <= 1e-12);
            CHECK(oscillation(rec.hamiltonian[j]) <= 1e-12);
        }
    }

    // autonomous shear: sup-norm round trip within 1e-4 at N = 128, T = 64
    {
        const GeneratorPath gen = shear_generator(g, 64, 0.3);
        const GeneratorPath rec = recover_generator(integrate_generator(gen, 4));
        double uerr = 0.0, herr = 0.0;
        for (int j = 0; j <= 64; ++j) {
            for (size_t k = 0; k < rec.hamiltonian[j].values.size(); ++k)
                uerr = std::max(uerr, std::abs(rec.hamiltonian[j].values[k] -
                                               gen.hamiltonian[j].values[k]));
            herr = std::max({herr, std::abs(rec.harmonic[j].x), std::abs(rec.harmonic[j].y)});
        }
        CHECK(uerr <= 1e-4);
        CHECK(uerr <= 1e-5);  // the shear stays exact on nodes; expect much better
        CHECK(herr <= 1e-6);
    }
}

TEST_CASE("recovery rejects non-symplectic paths") {
    const TorusGrid g(64);
    DiffeoPath path(g, 16, PathSource::integrated);
    for (int j = 1; j <= 16; ++j) {
        const double t = static_cast<double>(j) / 16;
        for (int iy = 0; iy < g.n(); ++iy)
            for (int ix = 0; ix < g.n(); ++ix)
                path.displacement[j].vx[g.index(ix, iy)] =
                    0.05 * t * std::sin(kTwoPi * ix / g.n());  // compressible
    }
    CHECK_THROWS_AS(recover_generator(path), std::runtime_error);
}

TEST_CASE("displacement inversion") {
    const TorusGrid g(64);

    // identity and rigid translation invert exactly
    const DisplacementField id_inv = invert_displacement(DisplacementField(g));
    CHECK(id_inv.max_norm() <= 1e-15);
    const DisplacementField tr_inv = invert_displacement(DisplacementField(g, 0.3, 0.1));
    for (size_t k = 0; k < tr_inv.vx.size(); ++k) {
        CHECK(std::abs(tr_inv.vx[k] + 0.3) <= 1e-12);
        CHECK(std::abs(tr_inv.vy[k] + 0.1) <= 1e-12);
    }

    // shear (x + 0.3 sin 2 pi y, y) inverts to (x - 0.3 sin 2 pi y, y)
    DisplacementField shear(g);
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix)
            shear.vx[g.index(ix, iy)] = 0.3 * std::sin(kTwoPi * iy / g.n());
    const DisplacementField inv = invert_displacement(shear);
    double err = 0.0;
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix) {
            err = std::max(err, std::abs(inv.vx[g.index(ix, iy)] +
                                         0.3 * std::sin(kTwoPi * iy / g.n())));
            err = std::max(err, std::abs(inv.vy[g.index(ix, iy)]));
        }
    CHECK(err <= 1e-10);

    // a fold (gradient above 1) cannot be inverted
    DisplacementField fold(g);
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix)
            fold.vx[g.index(ix, iy)] = 0.4 * std::sin(kTwoPi * ix / g.n());
    CHECK_THROWS_WITH_AS(invert_displacement(fold), "map not invertible at node",
                         std::runtime_error);
}

TEST_CASE("composition of paths") {
    const TorusGrid g(64);
    const DiffeoPath right = integrate_generator(harmonic_generator(g, 32, {0.0, 1.0}), 2);
    const DiffeoPath up = integrate_generator(harmonic_generator(g, 32, {-1.0, 0.0}), 2);

    // identity acts trivially
    const DiffeoPath same = compose_paths(integrate_generator(zero_generator(g, 32), 1), right);
    double err = 0.0;
    for (int j = 0; j <= 32; ++j)
        for (size_t k = 0; k < same.displacement[j].vx.size(); ++k) {
            err = std::max(err,
                           std::abs(same.displacement[j].vx[k] - right.displacement[j].vx[k]));
            err = std::max(err,
                           std::abs(same.displacement[j].vy[k] - right.displacement[j].vy[k]));
        }
    CHECK(err <= 1e-12);

    // two unit translations give the diagonal flow; the endpoint is a loop
    const DiffeoPath diag = compose_paths(up, right);
    const DisplacementField& d1 = diag.endpoint();
    for (size_t k = 0; k < d1.vx.size(); ++k) {
        CHECK(std::abs(d1.vx[k] - 1.0) <= 1e-12);
        CHECK(std::abs(d1.vy[k] - 1.0) <= 1e-12);
    }
    CHECK(is_loop(diag, 1e-6));

    // a path composed with its reversal ends at the identity
    const TorusGrid gf(128);
    const GeneratorPath gen = shear_generator(gf, 32, 0.25);
    const DiffeoPath path = integrate_generator(gen, 4);
    const DiffeoPath back = reverse_path(path);
    const DiffeoPath round = compose_paths(back, path);
    CHECK(endpoint_loop_residual(round) <= 1e-6);
}

TEST_CASE("left concatenation") {
    const TorusGrid g(64);
    const DiffeoPath phi = integrate_generator(harmonic_generator(g, 32, {0.0, 0.5}), 2);
    const DiffeoPath idp = integrate_generator(zero_generator(g, 32), 1);

    // trivial second factor: a time-reparametrised copy of phi
    const DiffeoPath cat = concatenate_left(idp, phi, 0.1);
    CHECK(cat.tsamples() == 64);
    double err = 0.0;
    const DisplacementField& e1 = cat.endpoint();
    for (size_t k = 0; k < e1.vx.size(); ++k) {
        err = std::max(err, std::abs(e1.vx[k] - phi.endpoint().vx[k]));
        err = std::max(err, std::abs(e1.vy[k] - phi.endpoint().vy[k]));
    }
    CHECK(err <= 1e-12);

    // translations add
    const DiffeoPath psi = integrate_generator(harmonic_generator(g, 32, {0.3, 0.0}), 2);
    const DiffeoPath both = concatenate_left(psi, phi, 0.1);
    const DisplacementField& e2 = both.endpoint();
    for (size_t k = 0; k < e2.vx.size(); ++k) {
        CHECK(std::abs(e2.vx[k] - 0.5) <= 1e-10);
        CHECK(std::abs(e2.vy[k] + 0.3) <= 1e-10);
    }

    CHECK_THROWS_AS(concatenate_left(psi, phi, 0.6), std::invalid_argument);
}

TEST_CASE("path reversal") {
    const TorusGrid g(64);
    const DiffeoPath idp = integrate_generator(zero_generator(g, 16), 1);
    const DiffeoPath rid = reverse_path(idp);
    for (const DisplacementField& d : rid.displacement) CHECK(d.max_norm() <= 1e-12);

    // unit translation reversed ends at the inverse translation, a loop
    const DiffeoPath right = integrate_generator(harmonic_generator(g, 32, {0.0, 1.0}), 2);
    const DiffeoPath left = reverse_path(right);
    const DisplacementField& d = left.endpoint();
    for (size_t k = 0; k < d.vx.size(); ++k) CHECK(std::abs(d.vx[k] + 1.0) <= 1e-10);
    CHECK(is_loop(left, 1e-6));
}

TEST_CASE("cohomological flux of sampled generators") {
    const TorusGrid g(16);

    const GeneratorPath ham = shear_generator(g, 32, 0.4);
    const FluxClass f0 = flux_cohomological(ham);
    CHECK(std::abs(f0.a) <= 1e-15);
    CHECK(std::abs(f0.b) <= 1e-15);

    const FluxClass f1 = flux_cohomological(harmonic_generator(g, 32, {0.0, 1.0}));
    CHECK(f1.a == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(f1.b == doctest::Approx(1.0).epsilon(1e-15));

    // H_t = sin(pi t) dx integrates to 2/pi; the trapezoid rule needs a fine
    // grid to certify the stated 1e-8
    GeneratorPath pulse(g, 8192);
    for (int j = 0; j <= 8192; ++j)
        pulse.harmonic[j] = {std::sin(kPi * j / 8192.0), 0.0};
    const FluxClass f2 = flux_cohomological(pulse);
    CHECK(std::abs(f2.a - 2.0 / kPi) <= 1e-8);
    CHECK(std::abs(f2.b) <= 1e-15);
}

TEST_CASE("flux from the definition agrees with the cohomological route") {
    const TorusGrid g(128);

    const DiffeoPath idp = integrate_generator(zero_generator(g, 64), 1);
    const FluxClass fid = flux_definition(idp);
    CHECK(std::abs(fid.a) <= 1e-12);
    CHECK(std::abs(fid.b) <= 1e-12);

    const DiffeoPath dy_flow = integrate_generator(harmonic_generator(g, 64, {0.0, 1.0}), 4);
    const FluxClass fdy = flux_definition(dy_flow);
    CHECK(std::abs(fdy.a) <= 1e-5);
    CHECK(std::abs(fdy.b - 1.0) <= 1e-5);

    const DiffeoPath shear = integrate_generator(shear_generator(g, 64, 0.3), 4);
    const FluxClass fsh = flux_definition(shear);
    CHECK(std::abs(fsh.a) <= 1e-5);
    CHECK(std::abs(fsh.b) <= 1e-5);
}

TEST_CASE("loop detection over integer and fractional classes") {
    const TorusGrid g(64);
    const DiffeoPath two_one =
        integrate_generator(harmonic_generator(g, 32, {2.0, -1.0}), 2);
    CHECK(is_loop(two_one, 1e-6));

    const DiffeoPath half = integrate_generator(harmonic_generator(g, 32, {0.5, 0.0}), 2);
    CHECK_FALSE(is_loop(half, 1e-6));
    CHECK(endpoint_loop_residual(half) >= 0.1);

    CHECK(is_loop(integrate_generator(zero_generator(g, 16), 1), 1e-6));
}

TEST_CASE("flux negates under path reversal") {
    const TorusGrid g(128);
    const GeneratorPath gen = harmonic_generator(g, 32, {0.3, -0.2});
    const DiffeoPath path = integrate_generator(gen, 2);
    const FluxClass fwd = flux_definition(path);
    const FluxClass bwd = flux_definition(reverse_path(path));
    CHECK(std::abs(fwd.a + bwd.a) <= 1e-6);
    CHECK(std::abs(fwd.b + bwd.b) <= 1e-6);
}

TEST_CASE("plateau ramp boundary behaviour") {
    CHECK(plateau_ramp(0.05, 0.1) == 0.0);
    CHECK(plateau_ramp(0.95, 0.1) == 1.0);
    CHECK(plateau_ramp(0.5, 0.1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(plateau_ramp(0.5, 0.7), std::invalid_argument);
}
