#pragma once

#include <cmath>
#include <vector>

#include "hoferlike/grid.hpp"

namespace hoferlike {

// Real-valued function sampled at grid nodes.
struct ScalarField {
    TorusGrid grid;
    std::vector<double> values;

    explicit ScalarField(const TorusGrid& g, double fill = 0.0)
        : grid(g), values(static_cast<size_t>(g.size()), fill) {}

    double& at(int ix, int iy) { return values[grid.index(ix, iy)]; }
    double at(int ix, int iy) const { return values[grid.index(ix, iy)]; }

    double mean() const {
        double s = 0.0;
        for (double v : values) s += v;
        return s / values.size();
    }

    void subtract_mean() {
        const double m = mean();
        for (double& v : values) v -= m;
    }

    bool finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

// 1-form a dx + b dy sampled at grid nodes.
struct OneFormField {
    TorusGrid grid;
    std::vector<double> a;  // coefficient of dx
    std::vector<double> b;  // coefficient of dy

    explicit OneFormField(const TorusGrid& g, double ca = 0.0, double cb = 0.0)
        : grid(g),
          a(static_cast<size_t>(g.size()), ca),
          b(static_cast<size_t>(g.size()), cb) {}

    bool finite() const {
        for (double v : a)
            if (!std::isfinite(v)) return false;
        for (double v : b)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

// Velocity field (vx, vy) sampled at grid nodes. Displacement fields of torus
// maps use the same carrier: phi(x) = x + D(x) with D periodic and windings
// kept unreduced.
struct VectorField {
    TorusGrid grid;
    std::vector<double> vx;
    std::vector<double> vy;

    explicit VectorField(const TorusGrid& g, double cx = 0.0, double cy = 0.0)
        : grid(g),
          vx(static_cast<size_t>(g.size()), cx),
          vy(static_cast<size_t>(g.size()), cy) {}

    Vec2 at(int ix, int iy) const {
        const int k = grid.index(ix, iy);
        return {vx[k], vy[k]};
    }

    void set(int ix, int iy, Vec2 v) {
        const int k = grid.index(ix, iy);
        vx[k] = v.x;
        vy[k] = v.y;
    }

    bool finite() const {
        for (double v : vx)
            if (!std::isfinite(v)) return false;
        for (double v : vy)
            if (!std::isfinite(v)) return false;
        return true;
    }

    double max_norm() const {
        double m = 0.0;
        for (size_t k = 0; k < vx.size(); ++k)
            m = std::max(m, std::hypot(vx[k], vy[k]));
        return m;
    }
};

using DisplacementField = VectorField;

// Periodic bilinear interpolation.
double sample_bilinear(const ScalarField& f, Vec2 p);
Vec2 sample_bilinear(const VectorField& f, Vec2 p);

// Periodic Catmull-Rom bicubic interpolation; used where fourth-order
// accuracy is needed (map inversion, velocity recovery).
double sample_bicubic(const ScalarField& f, Vec2 p);
Vec2 sample_bicubic(const VectorField& f, Vec2 p);

}  // namespace hoferlike
