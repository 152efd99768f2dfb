#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hoferlike/hodge.hpp"
#include "hoferlike/rng.hpp"
#include "hoferlike/spectral.hpp"

using namespace hoferlike;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

OneFormField random_closed_form(const TorusGrid& g, Rng& rng, ScalarField* u_out = nullptr,
                                Vec2* h_out = nullptr) {
    // dU + H with U a random low-mode trig polynomial, gradient taken
    // analytically so the test does not lean on the spectral kernels
    struct Mode {
        int kx, ky;
        double c, s;
    };
    std::vector<Mode> modes;
    for (int kx = -4; kx <= 4; ++kx)
        for (int ky = 0; ky <= 4; ++ky) {
            if (ky == 0 && kx <= 0) continue;
            modes.push_back({kx, ky, rng.uniform(-0.5, 0.5) / (1 + kx * kx + ky * ky),
                             rng.uniform(-0.5, 0.5) / (1 + kx * kx + ky * ky)});
        }
    const Vec2 h{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};

    OneFormField alpha(g, h.x, h.y);
    ScalarField u(g);
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix) {
            const Vec2 p = g.node(ix, iy);
            double val = 0.0, gx = 0.0, gy = 0.0;
            for (const Mode& m : modes) {
                const double ang = kTwoPi * (m.kx * p.x + m.ky * p.y);
                val += m.c * std::cos(ang) + m.s * std::sin(ang);
                const double d = -m.c * std::sin(ang) + m.s * std::cos(ang);
                gx += kTwoPi * m.kx * d;
                gy += kTwoPi * m.ky * d;
            }
            u.at(ix, iy) = val;
            const int k = g.index(ix, iy);
            alpha.a[k] += gx;
            alpha.b[k] += gy;
        }
    u.subtract_mean();
    if (u_out) *u_out = u;
    if (h_out) *h_out = h;
    return alpha;
}

}  // namespace

TEST_CASE("decomposition of 3dx + d(sin 2 pi x)") {
    const TorusGrid g(64);
    OneFormField alpha(g, 3.0, 0.0);
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix)
            alpha.a[g.index(ix, iy)] += kTwoPi * std::cos(kTwoPi * ix / g.n());

    const HodgeDecomposition dec = hodge_decompose(alpha, default_closedness_tol(g));
    CHECK(dec.harmonic.x == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(dec.harmonic.y) <= 1e-12);
    CHECK(dec.residual <= 1e-9);

    double err = 0.0;
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix)
            err = std::max(err, std::abs(dec.exact_potential.at(ix, iy) -
                                         std::sin(kTwoPi * ix / g.n())));
    CHECK(err <= 1e-9);
    CHECK(std::abs(dec.exact_potential.mean()) <= 1e-12);
}

TEST_CASE("already harmonic and purely exact inputs") {
    const TorusGrid g(64);
    const HodgeDecomposition flat = hodge_decompose(OneFormField(g, 1.0, 1.0), 1e-6);
    CHECK(flat.harmonic.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(flat.harmonic.y == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(oscillation(flat.exact_potential) <= 1e-12);

    OneFormField exact(g);
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix)
            exact.b[g.index(ix, iy)] = -kTwoPi * std::sin(kTwoPi * iy / g.n());
    const HodgeDecomposition dec = hodge_decompose(exact, default_closedness_tol(g));
    CHECK(std::abs(dec.harmonic.x) <= 1e-12);
    CHECK(std::abs(dec.harmonic.y) <= 1e-12);
    double err = 0.0;
    for (int iy = 0; iy < g.n(); ++iy)
        err = std::max(err, std::abs(dec.exact_potential.at(0, iy) -
                                     std::cos(kTwoPi * iy / g.n())));
    CHECK(err <= 1e-9);
}

TEST_CASE("non-closed input is rejected") {
    const TorusGrid g(64);
    OneFormField saw(g);
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix)
            saw.b[g.index(ix, iy)] = wrap_symmetric(static_cast<double>(ix) / g.n());
    CHECK_THROWS_AS(hodge_decompose(saw, default_closedness_tol(g)), std::runtime_error);
}

TEST_CASE("harmonic projection: examples and idempotence") {
    const TorusGrid g(64);
    const OneFormField dx(g, 1.0, 0.0);
    const OneFormField p = harmonic_projection(dx);
    CHECK(p.a[0] == 1.0);
    CHECK(p.b[0] == 0.0);

    ScalarField s(g);
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix) s.at(ix, iy) = std::sin(kTwoPi * ix / g.n());
    const OneFormField ds = exterior_derivative(s);
    const OneFormField pd = harmonic_projection(ds);
    CHECK(std::abs(pd.a[0]) <= 1e-12);
    CHECK(std::abs(pd.b[0]) <= 1e-12);

    OneFormField mixed(g, 2.0, -5.0);
    for (size_t k = 0; k < mixed.a.size(); ++k) {
        mixed.a[k] += ds.a[k];
        mixed.b[k] += ds.b[k];
    }
    const OneFormField pm = harmonic_projection(mixed);
    CHECK(pm.a[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(pm.b[0] == doctest::Approx(-5.0).epsilon(1e-10));

    const OneFormField pp = harmonic_projection(pm);
    CHECK(pp.a[0] == pm.a[0]);
    CHECK(pp.b[0] == pm.b[0]);
}

TEST_CASE("random closed forms: reconstruction, orthogonality, uniqueness") {
    const TorusGrid g(64);
    Rng rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        ScalarField u_true(g);
        Vec2 h_true;
        const OneFormField alpha = random_closed_form(g, rng, &u_true, &h_true);
        const HodgeDecomposition dec = hodge_decompose(alpha, default_closedness_tol(g));

        CHECK(dec.residual <= 1e-8);
        CHECK(std::abs(dec.harmonic.x - h_true.x) <= 1e-10);
        CHECK(std::abs(dec.harmonic.y - h_true.y) <= 1e-10);
        double uerr = 0.0;
        for (size_t k = 0; k < u_true.values.size(); ++k)
            uerr = std::max(uerr, std::abs(u_true.values[k] - dec.exact_potential.values[k]));
        CHECK(uerr <= 1e-8);

        const OneFormField du = exterior_derivative(dec.exact_potential);
        const OneFormField hf(g, dec.harmonic.x, dec.harmonic.y);
        CHECK(std::abs(l2_inner_product(du, hf)) <= 1e-9);
    }
}

TEST_CASE("harmonic part is additive") {
    const TorusGrid g(64);
    Rng rng(77);
    const OneFormField a = random_closed_form(g, rng);
    const OneFormField b = random_closed_form(g, rng);
    OneFormField sum = a;
    for (size_t k = 0; k < sum.a.size(); ++k) {
        sum.a[k] += b.a[k];
        sum.b[k] += b.b[k];
    }
    const Vec2 ha = hodge_decompose(a, 1e-2).harmonic;
    const Vec2 hb = hodge_decompose(b, 1e-2).harmonic;
    const Vec2 hs = hodge_decompose(sum, 1e-2).harmonic;
    CHECK(std::abs(hs.x - ha.x - hb.x) <= 1e-10);
    CHECK(std::abs(hs.y - ha.y - hb.y) <= 1e-10);
}

TEST_CASE("norm equivalence constants on the flat torus") {
    const auto [l0, l1] = norm_equivalence_constants(1024);
    CHECK(std::abs(l0 - 1.0) <= 1e-12);
    CHECK(std::abs(l1 - 1.0) <= 1e-12);

    const auto [s0, s1] = norm_equivalence_constants(8);
    CHECK(std::abs(s0 - 1.0) <= 1e-12);
    CHECK(std::abs(s1 - 1.0) <= 1e-12);

    CHECK_THROWS_AS(norm_equivalence_constants(4), std::invalid_argument);

    const auto scaled = norm_equivalence_constants_area(4.0);
    CHECK(scaled.first == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(scaled.second == doctest::Approx(0.5).epsilon(1e-14));
}
