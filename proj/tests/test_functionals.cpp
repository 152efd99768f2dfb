#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hoferlike/functionals.hpp"
#include "hoferlike/rng.hpp"

using namespace hoferlike;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

ScalarField cos_y_field(const TorusGrid& g, double amp) {
    ScalarField u(g);
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix)
            u.at(ix, iy) = amp * std::cos(kTwoPi * iy / g.n());
    return u;
}

GeneratorPath random_hamiltonian(const TorusGrid& g, int T, Rng& rng) {
    GeneratorPath gen(g, T);
    const double a1 = rng.uniform(-0.5, 0.5), a2 = rng.uniform(-0.5, 0.5);
    const int kx = 1 + static_cast<int>(rng.uniform(0.0, 2.999));
    for (int j = 0; j <= T; ++j) {
        const double w = 1.0 + 0.5 * std::sin(kTwoPi * j / T);
        ScalarField& u = gen.hamiltonian[j];
        for (int iy = 0; iy < g.n(); ++iy)
            for (int ix = 0; ix < g.n(); ++ix)
                u.at(ix, iy) = w * (a1 * std::cos(kTwoPi * kx * ix / g.n()) +
                                    a2 * std::sin(kTwoPi * iy / g.n()));
        u.subtract_mean();
    }
    return gen;
}

}  // namespace

TEST_CASE("Hofer length of autonomous and time-linear generators") {
    const TorusGrid g(64);
    const int T = 32;

    const GeneratorPath autonomous = hamiltonian_generator(g, T, cos_y_field(g, 1.0));
    CHECK(hofer_length(autonomous, LengthMode::time_integral).value ==
          doctest::Approx(2.0).epsilon(1e-10));

    CHECK(hofer_length(zero_generator(g, T), LengthMode::time_integral).value == 0.0);

    // U_t = t cos(2 pi y): the (1,inf) length is 1 and the sup length is 2
    GeneratorPath linear(g, T);
    const ScalarField base = cos_y_field(g, 1.0);
    for (int j = 0; j <= T; ++j) {
        linear.hamiltonian[j] = base;
        const double t = static_cast<double>(j) / T;
        for (double& v : linear.hamiltonian[j].values) v *= t;
    }
    CHECK(hofer_length(linear, LengthMode::time_integral).value ==
          doctest::Approx(1.0).epsilon(1e-8));
    CHECK(hofer_length(linear, LengthMode::time_sup).value ==
          doctest::Approx(2.0).epsilon(1e-8));

    const GeneratorPath harmonic = harmonic_generator(g, T, {0.2, 0.0});
    CHECK_THROWS_WITH_AS(hofer_length(harmonic, LengthMode::time_integral),
                         "Hofer length undefined for non-Hamiltonian path", std::runtime_error);
}

TEST_CASE("Hofer-like length: harmonic, Hamiltonian, and mixed cases") {
    const TorusGrid g(64);
    const int T = 32;

    // constant harmonic path realises the L2 norm of its class
    const GeneratorPath h = harmonic_generator(g, T, {0.3, -0.4});
    CHECK(hoferlike_length(h, 2.0, LengthMode::time_integral).value ==
          doctest::Approx(0.5).epsilon(1e-12));

    // Hamiltonian generators reduce to the Hofer length for every p
    const GeneratorPath ham = hamiltonian_generator(g, T, cos_y_field(g, 0.7));
    const double lh = hofer_length(ham, LengthMode::time_integral).value;
    for (double p : {1.0, 2.0, 7.0, kInfinity}) {
        const double v = hoferlike_length(ham, p, LengthMode::time_integral).value;
        CHECK(v == lh);  // harmonic term is exactly zero
    }

    // H = dy, U = cos(2 pi y): sup integrand is 2 + 1
    GeneratorPath mixed = hamiltonian_generator(g, T, cos_y_field(g, 1.0));
    for (Vec2& c : mixed.harmonic) c = {0.0, 1.0};
    CHECK(hoferlike_length(mixed, kInfinity, LengthMode::time_sup).value ==
          doctest::Approx(3.0).epsilon(1e-10));

    CHECK_THROWS_AS(hoferlike_length(mixed, 0.3, LengthMode::time_sup), std::invalid_argument);
}

TEST_CASE("vector field Hofer-like norm") {
    const TorusGrid g(64);

    CHECK(vf_hoferlike_norm(VectorField(g, 1.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(vf_hoferlike_norm(VectorField(g)) == 0.0);

    // Hamiltonian field of cos(2 pi y): purely exact, norm = osc = 2
    const ScalarField u = cos_y_field(g, 1.0);
    const VectorField y = sharp_omega(exterior_derivative(u));
    CHECK(vf_hoferlike_norm(y) == doctest::Approx(2.0).epsilon(1e-9));

    // compressible field: contraction not closed
    VectorField bad(g);
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix)
            bad.vx[g.index(ix, iy)] = std::sin(kTwoPi * ix / g.n());
    CHECK_THROWS_AS(vf_hoferlike_norm(bad), std::runtime_error);
}

TEST_CASE("Calabi integral and its Hofer bound") {
    const TorusGrid g(64);
    const int T = 32;
    Rng rng(99);

    double worst = 0.0, worst_gap = -kInfinity;
    for (int i = 0; i < 25; ++i) {
        const GeneratorPath gen = random_hamiltonian(g, T, rng);
        const double cal = calabi(gen);
        worst = std::max(worst, std::abs(cal));
        worst_gap = std::max(worst_gap,
                             std::abs(cal) - hofer_length(gen, LengthMode::time_integral).value);
    }
    CHECK(worst <= 1e-10);
    CHECK(worst_gap <= 1e-9);

    const GeneratorPath gen = random_hamiltonian(g, T, rng);
    std::vector<ScalarField> offsets(static_cast<size_t>(T) + 1, ScalarField(g, 1.25));
    CHECK(calabi(gen, &offsets) == doctest::Approx(1.25).epsilon(1e-12));

    CHECK_THROWS_AS(calabi(harmonic_generator(g, T, {1.0, 0.0})), std::runtime_error);
}

TEST_CASE("scaling law under omega -> c omega") {
    const TorusGrid g(64);
    const int T = 32;
    GeneratorPath gen = hamiltonian_generator(g, T, cos_y_field(g, 0.5));
    for (Vec2& c : gen.harmonic) c = {0.25, 0.0};
    const double base = hoferlike_length(gen, 2.0, LengthMode::time_integral).value;

    // n = 1: both parts scale by c
    const ScalingLaw dim2 = scaling_law(gen, 2.0, 1);
    CHECK(dim2.exact_dim2);
    CHECK(std::abs(dim2.rescaled - 2.0 * base) <= 1e-12);

    // purely harmonic generator at n = 3: factor c^{(n+1)/2} = c^2
    const GeneratorPath pure = harmonic_generator(g, T, {0.3, 0.4});
    const double pure_base = hoferlike_length(pure, 2.0, LengthMode::time_integral).value;
    const ScalingLaw dim6 = scaling_law(pure, 4.0, 3);
    CHECK(std::abs(dim6.rescaled - 16.0 * pure_base) <= 1e-10);

    // c = 1 is the identity for every n
    for (int n : {1, 2, 3}) {
        const ScalingLaw unit = scaling_law(gen, 1.0, n);
        CHECK(std::abs(unit.rescaled - base) <= 1e-14);
    }

    // brackets hold for mixed generators
    for (double c : {0.5, 2.0, 5.0})
        for (int n : {2, 3}) {
            const ScalingLaw law = scaling_law(gen, c, n);
            CHECK(law.rescaled >= law.predicted_low - 1e-12);
            CHECK(law.rescaled <= law.predicted_high + 1e-12);
        }

    CHECK_THROWS_AS(scaling_law(gen, -1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(scaling_law(gen, 2.0, 0), std::invalid_argument);
}

TEST_CASE("flux floor under the (1,2) length") {
    const TorusGrid g(64);
    Rng rng(5150);
    for (int i = 0; i < 20; ++i) {
        GeneratorPath gen = random_hamiltonian(g, 32, rng);
        for (int j = 0; j <= 32; ++j)
            gen.harmonic[j] = {rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)};
        const double floor = flux_cohomological(gen).l2_norm();
        const double len = hoferlike_length(gen, 2.0, LengthMode::time_integral).value;
        CHECK(floor <= len + 1e-8);
    }
}
