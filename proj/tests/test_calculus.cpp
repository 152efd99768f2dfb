#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hoferlike/calculus.hpp"
#include "hoferlike/rng.hpp"

using namespace hoferlike;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

ScalarField make_field(const TorusGrid& g, double (*f)(double, double)) {
    ScalarField out(g);
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix) {
            const Vec2 p = g.node(ix, iy);
            out.at(ix, iy) = f(p.x, p.y);
        }
    return out;
}

}  // namespace

TEST_CASE("oscillation of constant and single-mode fields") {
    const TorusGrid g(64);
    CHECK(oscillation(ScalarField(g, 5.0)) == 0.0);

    // extrema of sin(2 pi x) sit on nodes when 4 | N, so osc is exactly 2
    const ScalarField s = make_field(g, [](double x, double) { return std::sin(kTwoPi * x); });
    CHECK(oscillation(s) == 2.0);

    const ScalarField c = make_field(g, [](double, double y) { return std::cos(kTwoPi * y); });
    CHECK(oscillation(c) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("oscillation rejects non-finite input") {
    const TorusGrid g(8);
    ScalarField f(g);
    f.values[3] = std::nan("");
    CHECK_THROWS_WITH_AS(oscillation(f), "non-finite field", std::runtime_error);
}

TEST_CASE("lp norms of constant forms") {
    const TorusGrid g(32);
    for (double p : {1.0, 2.0, 5.0, kInfinity})
        CHECK(lp_norm_form(OneFormField(g, 1.0, 0.0), p) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lp_norm_form(OneFormField(g, 3.0, 0.0), 2.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(lp_norm_form(OneFormField(g, 1.0, 1.0), 2.0) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(lp_norm_form(OneFormField(g), 0.5), std::invalid_argument);
}

TEST_CASE("lp norm is absolutely homogeneous") {
    const TorusGrid g(32);
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        OneFormField alpha(g);
        for (size_t k = 0; k < alpha.a.size(); ++k) {
            alpha.a[k] = rng.uniform(-2.0, 2.0);
            alpha.b[k] = rng.uniform(-2.0, 2.0);
        }
        const double c = rng.uniform(-3.0, 3.0);
        OneFormField scaled = alpha;
        for (double& v : scaled.a) v *= c;
        for (double& v : scaled.b) v *= c;
        for (double p : {1.0, 2.0, 4.0, kInfinity}) {
            const double lhs = lp_norm_form(scaled, p);
            const double rhs = std::abs(c) * lp_norm_form(alpha, p);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("contraction with the area form and its inverse") {
    const TorusGrid g(16);
    // d/dx maps to dy
    OneFormField a = contract_with_omega(VectorField(g, 1.0, 0.0));
    CHECK(a.a[0] == 0.0);
    CHECK(a.b[0] == 1.0);
    // d/dy maps to -dx
    OneFormField b = contract_with_omega(VectorField(g, 0.0, 1.0));
    CHECK(b.a[0] == -1.0);
    CHECK(b.b[0] == 0.0);
    // n d/dx + m d/dy maps to n dy - m dx
    OneFormField c = contract_with_omega(VectorField(g, 3.0, -2.0));
    CHECK(c.a[0] == 2.0);
    CHECK(c.b[0] == 3.0);

    // sharp is the exact inverse
    VectorField x = sharp_omega(OneFormField(g, 0.0, 1.0));
    CHECK(x.vx[0] == 1.0);
    CHECK(x.vy[0] == 0.0);

    Rng rng(7);
    VectorField v(g);
    for (size_t k = 0; k < v.vx.size(); ++k) {
        v.vx[k] = rng.uniform(-1.0, 1.0);
        v.vy[k] = rng.uniform(-1.0, 1.0);
    }
    const VectorField rt = sharp_omega(contract_with_omega(v));
    for (size_t k = 0; k < v.vx.size(); ++k) {
        CHECK(std::abs(rt.vx[k] - v.vx[k]) <= 1e-14);
        CHECK(std::abs(rt.vy[k] - v.vy[k]) <= 1e-14);
    }
}

TEST_CASE("spectral exterior derivative against analytic gradients") {
    const TorusGrid g(64);
    const OneFormField zero = exterior_derivative(ScalarField(g, 4.2));
    for (size_t k = 0; k < zero.a.size(); ++k) {
        CHECK(std::abs(zero.a[k]) <= 1e-12);
        CHECK(std::abs(zero.b[k]) <= 1e-12);
    }

    const ScalarField s = make_field(g, [](double x, double) { return std::sin(kTwoPi * x); });
    const OneFormField ds = exterior_derivative(s);
    double err = 0.0;
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix) {
            const Vec2 p = g.node(ix, iy);
            err = std::max(err, std::abs(ds.a[g.index(ix, iy)] - kTwoPi * std::cos(kTwoPi * p.x)));
            err = std::max(err, std::abs(ds.b[g.index(ix, iy)]));
        }
    CHECK(err <= 1e-10);

    const ScalarField ss = make_field(
        g, [](double x, double y) { return std::sin(kTwoPi * x) * std::sin(kTwoPi * y); });
    const OneFormField dss = exterior_derivative(ss);
    err = 0.0;
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix) {
            const Vec2 p = g.node(ix, iy);
            const double gx = kTwoPi * std::cos(kTwoPi * p.x) * std::sin(kTwoPi * p.y);
            const double gy = kTwoPi * std::sin(kTwoPi * p.x) * std::cos(kTwoPi * p.y);
            err = std::max(err, std::abs(dss.a[g.index(ix, iy)] - gx));
            err = std::max(err, std::abs(dss.b[g.index(ix, iy)] - gy));
        }
    CHECK(err <= 1e-10);

    CHECK(closedness_residual(dss) <= 1e-9);
}

TEST_CASE("closedness residual flags the sawtooth form") {
    const TorusGrid g(64);
    CHECK(closedness_residual(OneFormField(g, 1.0, 0.0)) <= 1e-12);

    const ScalarField s = make_field(g, [](double x, double) { return std::sin(kTwoPi * x); });
    CHECK(closedness_residual(exterior_derivative(s)) <= 1e-10);

    // b = sawtooth(x): the jump makes the Fourier curl blow up like N
    OneFormField saw(g);
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix)
            saw.b[g.index(ix, iy)] = wrap_symmetric(static_cast<double>(ix) / g.n());
    const double res = closedness_residual(saw);
    CHECK(res > 1.0);
    CHECK(res > default_closedness_tol(g));
}

TEST_CASE("pullback: identity, rigid translation, analytic shear") {
    const TorusGrid g128(128);
    OneFormField alpha(g128, 1.0, 0.0);

    // identity
    const OneFormField same = pullback_oneform(DisplacementField(g128), alpha);
    for (size_t k = 0; k < same.a.size(); ++k) {
        CHECK(std::abs(same.a[k] - 1.0) <= 1e-14);
        CHECK(std::abs(same.b[k]) <= 1e-14);
    }

    // rigid translation of a constant form
    const OneFormField shifted =
        pullback_oneform(DisplacementField(g128, 0.37, -0.11), alpha);
    for (size_t k = 0; k < shifted.a.size(); ++k) {
        CHECK(std::abs(shifted.a[k] - 1.0) <= 1e-14);
        CHECK(std::abs(shifted.b[k]) <= 1e-14);
    }

    // shear (x, y) -> (x + 0.3 sin 2 pi y, y): dx pulls back to
    // dx + 0.6 pi cos(2 pi y) dy
    DisplacementField shear(g128);
    for (int iy = 0; iy < g128.n(); ++iy)
        for (int ix = 0; ix < g128.n(); ++ix)
            shear.vx[g128.index(ix, iy)] = 0.3 * std::sin(kTwoPi * iy / g128.n());
    const OneFormField pulled = pullback_oneform(shear, alpha);
    double err = 0.0;
    for (int iy = 0; iy < g128.n(); ++iy)
        for (int ix = 0; ix < g128.n(); ++ix) {
            const int k = g128.index(ix, iy);
            const double want_b = 0.6 * (kTwoPi / 2.0) * std::cos(kTwoPi * iy / g128.n());
            err = std::max(err, std::abs(pulled.a[k] - 1.0));
            err = std::max(err, std::abs(pulled.b[k] - want_b));
        }
    CHECK(err <= 1e-6);
}

TEST_CASE("oscillation is invariant under composition with a diffeomorphism") {
    const TorusGrid g(64);
    const ScalarField f = make_field(
        g, [](double x, double y) { return std::sin(kTwoPi * x) + 0.5 * std::cos(kTwoPi * y); });

    DisplacementField shear(g);
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix) {
            shear.vx[g.index(ix, iy)] = 0.2 * std::sin(kTwoPi * iy / g.n());
            shear.vy[g.index(ix, iy)] = 0.15;
        }
    const ScalarField composed = compose_scalar(f, shear);
    CHECK(std::abs(oscillation(composed) - oscillation(f)) <= 10.0 * g.spacing());
}
