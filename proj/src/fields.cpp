#include "hoferlike/fields.hpp"

namespace hoferlike {

namespace {

struct Stencil1D {
    int i0, i1;
    double w0, w1;
};

inline Stencil1D linear_stencil(double t, int n) {
    const double s = wrap_unit(t) * n;
    int i = static_cast<int>(std::floor(s));
    double f = s - i;
    if (i >= n) {  // guard against s == n from rounding
        i = 0;
        f = 0.0;
    }
    return {i, (i + 1) % n, 1.0 - f, f};
}

// Catmull-Rom weights for the four support points at offsets -1, 0, 1, 2.
inline void cubic_weights(double f, double w[4]) {
    const double f2 = f * f;
    const double f3 = f2 * f;
    w[0] = 0.5 * (-f3 + 2.0 * f2 - f);
    w[1] = 0.5 * (3.0 * f3 - 5.0 * f2 + 2.0);
    w[2] = 0.5 * (-3.0 * f3 + 4.0 * f2 + f);
    w[3] = 0.5 * (f3 - f2);
}

}  // namespace

double sample_bilinear(const ScalarField& f, Vec2 p) {
    const int n = f.grid.n();
    const Stencil1D sx = linear_stencil(p.x, n);
    const Stencil1D sy = linear_stencil(p.y, n);
    return sx.w0 * sy.w0 * f.values[f.grid.index(sx.i0, sy.i0)] +
           sx.w1 * sy.w0 * f.values[f.grid.index(sx.i1, sy.i0)] +
           sx.w0 * sy.w1 * f.values[f.grid.index(sx.i0, sy.i1)] +
           sx.w1 * sy.w1 * f.values[f.grid.index(sx.i1, sy.i1)];
}

Vec2 sample_bilinear(const VectorField& f, Vec2 p) {
    const int n = f.grid.n();
    const Stencil1D sx = linear_stencil(p.x, n);
    const Stencil1D sy = linear_stencil(p.y, n);
    const int k00 = f.grid.index(sx.i0, sy.i0);
    const int k10 = f.grid.index(sx.i1, sy.i0);
    const int k01 = f.grid.index(sx.i0, sy.i1);
    const int k11 = f.grid.index(sx.i1, sy.i1);
    const double w00 = sx.w0 * sy.w0, w10 = sx.w1 * sy.w0;
    const double w01 = sx.w0 * sy.w1, w11 = sx.w1 * sy.w1;
    return {w00 * f.vx[k00] + w10 * f.vx[k10] + w01 * f.vx[k01] + w11 * f.vx[k11],
            w00 * f.vy[k00] + w10 * f.vy[k10] + w01 * f.vy[k01] + w11 * f.vy[k11]};
}

namespace {

template <class Get>
double bicubic_eval(const TorusGrid& grid, Vec2 p, Get&& get) {
    const int n = grid.n();
    const double sx = wrap_unit(p.x) * n;
    const double sy = wrap_unit(p.y) * n;
    int ix = static_cast<int>(std::floor(sx));
    int iy = static_cast<int>(std::floor(sy));
    double fx = sx - ix;
    double fy = sy - iy;
    if (ix >= n) {
        ix = 0;
        fx = 0.0;
    }
    if (iy >= n) {
        iy = 0;
        fy = 0.0;
    }
    double wx[4], wy[4];
    cubic_weights(fx, wx);
    cubic_weights(fy, wy);
    double acc = 0.0;
    for (int dy = -1; dy <= 2; ++dy) {
        const int jy = grid.wrap(iy + dy);
        double row = 0.0;
        for (int dx = -1; dx <= 2; ++dx)
            row += wx[dx + 1] * get(grid.wrap(ix + dx), jy);
        acc += wy[dy + 1] * row;
    }
    return acc;
}

}  // namespace

double sample_bicubic(const ScalarField& f, Vec2 p) {
    return bicubic_eval(f.grid, p, [&](int ix, int iy) {
        return f.values[f.grid.index(ix, iy)];
    });
}

Vec2 sample_bicubic(const VectorField& f, Vec2 p) {
    const double x = bicubic_eval(f.grid, p, [&](int ix, int iy) {
        return f.vx[f.grid.index(ix, iy)];
    });
    const double y = bicubic_eval(f.grid, p, [&](int ix, int iy) {
        return f.vy[f.grid.index(ix, iy)];
    });
    return {x, y};
}

}  // namespace hoferlike
