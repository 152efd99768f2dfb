#pragma once

#include <cmath>
#include <stdexcept>

namespace hoferlike {

// 2-vector used for points, displacements, and constant 1-form coefficients.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    Vec2& operator-=(const Vec2& o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }
    Vec2& operator*=(double c) {
        x *= c;
        y *= c;
        return *this;
    }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
inline Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
inline Vec2 operator*(double c, Vec2 a) { return a *= c; }
inline Vec2 operator*(Vec2 a, double c) { return a *= c; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }

// Reduce a coordinate to [0, 1).
inline double wrap_unit(double t) {
    double r = t - std::floor(t);
    if (r >= 1.0) r -= 1.0;
    return r;
}

// Reduce to (-1/2, 1/2]; used when integer windings must be discarded.
inline double wrap_symmetric(double t) {
    double r = t - std::round(t);
    if (r <= -0.5) r += 1.0;
    return r;
}

// Uniform N x N sampling of the unit torus R^2/Z^2 with the flat metric and
// area form dx ^ dy. Node (ix, iy) sits at (ix/N, iy/N); total area is 1.
// N must be even (the spectral kernels drop the unpaired Nyquist mode) and
// at least 8.
class TorusGrid {
public:
    explicit TorusGrid(int n) : n_(n) {
        if (n < 8 || n % 2 != 0)
            throw std::invalid_argument("grid resolution must be even and >= 8");
    }

    int n() const { return n_; }
    int size() const { return n_ * n_; }
    double spacing() const { return 1.0 / n_; }

    // Row-major storage, x fastest.
    int index(int ix, int iy) const { return iy * n_ + ix; }

    int wrap(int i) const {
        int r = i % n_;
        return r < 0 ? r + n_ : r;
    }

    Vec2 node(int ix, int iy) const {
        return {ix * spacing(), iy * spacing()};
    }

    bool operator==(const TorusGrid& o) const { return n_ == o.n_; }
    bool operator!=(const TorusGrid& o) const { return n_ != o.n_; }

private:
    int n_;
};

}  // namespace hoferlike
