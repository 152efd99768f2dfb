#include "hoferlike/calculus.hpp"

#include <algorithm>
#include <stdexcept>

#include "hoferlike/spectral.hpp"

namespace hoferlike {

double oscillation(const ScalarField& f) {
    double lo = kInfinity, hi = -kInfinity;
    for (double v : f.values) {
        if (!std::isfinite(v)) throw std::runtime_error("non-finite field");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi - lo;
}

double lp_norm_form(const OneFormField& alpha, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("invalid exponent");
    const size_t m = alpha.a.size();
    if (p == kInfinity) {
        double mx = 0.0;
        for (size_t k = 0; k < m; ++k)
            mx = std::max(mx, std::hypot(alpha.a[k], alpha.b[k]));
        return mx;
    }
    const double h2 = 1.0 / static_cast<double>(m);  // h^2 on the unit torus
    double acc = 0.0;
    if (p == 2.0) {
        for (size_t k = 0; k < m; ++k)
            acc += alpha.a[k] * alpha.a[k] + alpha.b[k] * alpha.b[k];
        return std::sqrt(acc * h2);
    }
    for (size_t k = 0; k < m; ++k)
        acc += std::pow(std::hypot(alpha.a[k], alpha.b[k]), p);
    return std::pow(acc * h2, 1.0 / p);
}

OneFormField contract_with_omega(const VectorField& x) {
    OneFormField alpha(x.grid);
    for (size_t k = 0; k < x.vx.size(); ++k) {
        alpha.a[k] = -x.vy[k];
        alpha.b[k] = x.vx[k];
    }
    return alpha;
}

VectorField sharp_omega(const OneFormField& alpha) {
    VectorField x(alpha.grid);
    for (size_t k = 0; k < alpha.a.size(); ++k) {
        x.vx[k] = alpha.b[k];
        x.vy[k] = -alpha.a[k];
    }
    return x;
}

OneFormField exterior_derivative(const ScalarField& f) {
    if (!f.finite()) throw std::runtime_error("non-finite field");
    OneFormField alpha(f.grid);
    alpha.a = spectral_derivative_x(f).values;
    alpha.b = spectral_derivative_y(f).values;
    return alpha;
}

double closedness_residual(const OneFormField& alpha) {
    ScalarField fa(alpha.grid), fb(alpha.grid);
    fa.values = alpha.a;
    fb.values = alpha.b;
    const ScalarField dbx = spectral_derivative_x(fb);
    const ScalarField day = spectral_derivative_y(fa);
    double mx = 0.0;
    for (size_t k = 0; k < dbx.values.size(); ++k)
        mx = std::max(mx, std::abs(dbx.values[k] - day.values[k]));
    return mx;
}

OneFormField pullback_oneform(const DisplacementField& disp, const OneFormField& alpha) {
    if (!disp.finite()) throw std::runtime_error("non-finite displacement");
    const TorusGrid& g = disp.grid;
    const int n = g.n();
    const double inv2h = 0.5 * n;

    ScalarField fa(alpha.grid), fb(alpha.grid);
    fa.values = alpha.a;
    fb.values = alpha.b;

    OneFormField out(g);
    for (int iy = 0; iy < n; ++iy) {
        const int ym = g.wrap(iy - 1), yp = g.wrap(iy + 1);
        for (int ix = 0; ix < n; ++ix) {
            const int xm = g.wrap(ix - 1), xp = g.wrap(ix + 1);
            const int k = g.index(ix, iy);

            const double dxx = 1.0 + (disp.vx[g.index(xp, iy)] - disp.vx[g.index(xm, iy)]) * inv2h;
            const double dyx = (disp.vy[g.index(xp, iy)] - disp.vy[g.index(xm, iy)]) * inv2h;
            const double dxy = (disp.vx[g.index(ix, yp)] - disp.vx[g.index(ix, ym)]) * inv2h;
            const double dyy = 1.0 + (disp.vy[g.index(ix, yp)] - disp.vy[g.index(ix, ym)]) * inv2h;

            const Vec2 image = g.node(ix, iy) + disp.at(ix, iy);
            const double av = sample_bilinear(fa, image);
            const double bv = sample_bilinear(fb, image);

            out.a[k] = av * dxx + bv * dyx;
            out.b[k] = av * dxy + bv * dyy;
        }
    }
    return out;
}

ScalarField compose_scalar(const ScalarField& f, const DisplacementField& disp) {
    const TorusGrid& g = disp.grid;
    ScalarField out(g);
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix)
            out.at(ix, iy) = sample_bilinear(f, g.node(ix, iy) + disp.at(ix, iy));
    return out;
}

double l2_inner_product(const OneFormField& alpha, const OneFormField& beta) {
    double acc = 0.0;
    for (size_t k = 0; k < alpha.a.size(); ++k)
        acc += alpha.a[k] * beta.a[k] + alpha.b[k] * beta.b[k];
    return acc / static_cast<double>(alpha.a.size());
}

}  // namespace hoferlike
