#include "hoferlike/isotopy.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hoferlike {

GeneratorPath::GeneratorPath(const TorusGrid& g, int tsamples) : grid(g) {
    if (tsamples < 16) throw std::invalid_argument("generator needs at least 16 time intervals");
    hamiltonian.assign(static_cast<size_t>(tsamples) + 1, ScalarField(g));
    harmonic.assign(static_cast<size_t>(tsamples) + 1, Vec2{});
}

void GeneratorPath::normalize() {
    for (ScalarField& u : hamiltonian) u.subtract_mean();
}

bool GeneratorPath::is_hamiltonian(double tol) const {
    for (const Vec2& h : harmonic)
        if (std::abs(h.x) > tol || std::abs(h.y) > tol) return false;
    return true;
}

VectorField GeneratorPath::velocity(int j) const {
    OneFormField alpha = exterior_derivative(hamiltonian[j]);
    const Vec2 h = harmonic[j];
    for (double& v : alpha.a) v += h.x;
    for (double& v : alpha.b) v += h.y;
    return sharp_omega(alpha);
}

GeneratorPath zero_generator(const TorusGrid& g, int tsamples) {
    return GeneratorPath(g, tsamples);
}

GeneratorPath harmonic_generator(const TorusGrid& g, int tsamples, Vec2 coeffs) {
    GeneratorPath gen(g, tsamples);
    for (Vec2& h : gen.harmonic) h = coeffs;
    return gen;
}

GeneratorPath hamiltonian_generator(const TorusGrid& g, int tsamples, const ScalarField& u) {
    GeneratorPath gen(g, tsamples);
    ScalarField v = u;
    v.subtract_mean();
    for (ScalarField& s : gen.hamiltonian) s = v;
    return gen;
}

DiffeoPath::DiffeoPath(const TorusGrid& g, int tsamples, PathSource s) : grid(g), source(s) {
    if (tsamples < 1) throw std::invalid_argument("path needs at least one time interval");
    displacement.assign(static_cast<size_t>(tsamples) + 1, DisplacementField(g));
}

DisplacementField displacement_at(const DiffeoPath& path, double t) {
    const int T = path.tsamples();
    double s = std::clamp(t, 0.0, 1.0) * T;
    int j = std::min(static_cast<int>(s), T - 1);
    const double f = s - j;
    const DisplacementField& lo = path.displacement[j];
    const DisplacementField& hi = path.displacement[j + 1];
    DisplacementField out(path.grid);
    for (size_t k = 0; k < out.vx.size(); ++k) {
        out.vx[k] = (1.0 - f) * lo.vx[k] + f * hi.vx[k];
        out.vy[k] = (1.0 - f) * lo.vy[k] + f * hi.vy[k];
    }
    return out;
}

namespace {

// Velocity of the generator at arbitrary (t, point): linear interpolation
// between the precomputed sample fields, bilinear in space.
struct GeneratorVelocity {
    const std::vector<VectorField>& samples;
    int T;

    Vec2 operator()(double t, Vec2 p) const {
        double s = std::clamp(t, 0.0, 1.0) * T;
        int j = std::min(static_cast<int>(s), T - 1);
        const double f = s - j;
        const Vec2 lo = sample_bilinear(samples[j], p);
        const Vec2 hi = sample_bilinear(samples[j + 1], p);
        return {(1.0 - f) * lo.x + f * hi.x, (1.0 - f) * lo.y + f * hi.y};
    }
};

}  // namespace

DiffeoPath integrate_generator(const GeneratorPath& gen, int substeps) {
    if (substeps < 1) throw std::invalid_argument("substeps must be >= 1");
    const TorusGrid& g = gen.grid;
    const int T = gen.tsamples();
    const int n = g.n();

    std::vector<VectorField> vel;
    vel.reserve(T + 1);
    for (int j = 0; j <= T; ++j) vel.push_back(gen.velocity(j));
    const GeneratorVelocity field{vel, T};

    const double cfl_limit = 5.0 * g.spacing();
    const double dt = 1.0 / (static_cast<double>(T) * substeps);

    DiffeoPath path(g, T, PathSource::integrated);
    std::vector<Vec2> pos(static_cast<size_t>(g.size()));
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) pos[g.index(ix, iy)] = g.node(ix, iy);

    for (int j = 0; j < T; ++j) {
        for (int s = 0; s < substeps; ++s) {
            const double t0 = (static_cast<double>(j) * substeps + s) * dt;
            for (Vec2& p : pos) {
                const Vec2 k1 = field(t0, p);
                const Vec2 k2 = field(t0 + 0.5 * dt, p + 0.5 * dt * k1);
                const Vec2 k3 = field(t0 + 0.5 * dt, p + 0.5 * dt * k2);
                const Vec2 k4 = field(t0 + dt, p + dt * k3);
                const Vec2 step =
                    (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                if (step.norm() > cfl_limit) throw std::runtime_error("time step too large");
                p += step;
            }
        }
        DisplacementField& d = path.displacement[j + 1];
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix)
                d.set(ix, iy, pos[g.index(ix, iy)] - g.node(ix, iy));
    }
    return path;
}

DisplacementField invert_displacement(const DisplacementField& disp, double tol,
                                      const DisplacementField* guess) {
    const TorusGrid& g = disp.grid;
    const int n = g.n();
    DisplacementField inv(g);
    if (guess && guess->grid == g) {
        inv = *guess;
    } else {
        for (size_t k = 0; k < inv.vx.size(); ++k) {
            inv.vx[k] = -disp.vx[k];
            inv.vy[k] = -disp.vy[k];
        }
    }
    for (int iter = 0; iter < 50; ++iter) {
        double residual = 0.0;
        for (int iy = 0; iy < n; ++iy) {
            for (int ix = 0; ix < n; ++ix) {
                const int k = g.index(ix, iy);
                const Vec2 x = g.node(ix, iy);
                const Vec2 e{inv.vx[k], inv.vy[k]};
                const Vec2 d = sample_bicubic(disp, x + e);
                // phi(x + E(x)) - x = E(x) + D(x + E(x)); drive it to zero.
                const Vec2 r = e + d;
                residual = std::max(residual, std::max(std::abs(r.x), std::abs(r.y)));
                inv.vx[k] = -d.x;
                inv.vy[k] = -d.y;
            }
        }
        if (residual <= tol) return inv;
    }
    throw std::runtime_error("map not invertible at node");
}

DiffeoPath compose_paths(const DiffeoPath& psi, const DiffeoPath& phi) {
    if (psi.grid != phi.grid || psi.tsamples() != phi.tsamples())
        throw std::invalid_argument("paths must share grid and time sampling");
    const TorusGrid& g = phi.grid;
    const int n = g.n();
    DiffeoPath out(g, phi.tsamples(), PathSource::composed);
    for (int j = 0; j <= phi.tsamples(); ++j) {
        const DisplacementField& dphi = phi.displacement[j];
        const DisplacementField& dpsi = psi.displacement[j];
        DisplacementField& d = out.displacement[j];
        for (int iy = 0; iy < n; ++iy) {
            for (int ix = 0; ix < n; ++ix) {
                const int k = g.index(ix, iy);
                const Vec2 mid{dphi.vx[k], dphi.vy[k]};
                const Vec2 tail = sample_bicubic(dpsi, g.node(ix, iy) + mid);
                d.vx[k] = mid.x + tail.x;
                d.vy[k] = mid.y + tail.y;
            }
        }
    }
    return out;
}

double plateau_ramp(double u, double delta) {
    if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("delta must be in (0, 1/2)");
    if (u <= delta) return 0.0;
    if (u >= 1.0 - delta) return 1.0;
    const double v = (u - delta) / (1.0 - 2.0 * delta);
    return v * v * v * (10.0 + v * (-15.0 + 6.0 * v));
}

DiffeoPath concatenate_left(const DiffeoPath& psi, const DiffeoPath& phi, double delta) {
    if (psi.grid != phi.grid || psi.tsamples() != phi.tsamples())
        throw std::invalid_argument("paths must share grid and time sampling");
    if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("delta must be in (0, 1/2)");

    const TorusGrid& g = phi.grid;
    const int n = g.n();
    const int T_out = 2 * phi.tsamples();
    DiffeoPath out(g, T_out, PathSource::concatenated);
    const DisplacementField& phi1 = phi.endpoint();

    for (int j = 0; j <= T_out; ++j) {
        const double t = static_cast<double>(j) / T_out;
        if (2 * j <= T_out) {
            out.displacement[j] = displacement_at(phi, plateau_ramp(2.0 * t, delta));
        } else {
            const DisplacementField dpsi =
                displacement_at(psi, plateau_ramp(2.0 * t - 1.0, delta));
            DisplacementField& d = out.displacement[j];
            for (int iy = 0; iy < n; ++iy) {
                for (int ix = 0; ix < n; ++ix) {
                    const int k = g.index(ix, iy);
                    const Vec2 mid{phi1.vx[k], phi1.vy[k]};
                    const Vec2 tail = sample_bicubic(dpsi, g.node(ix, iy) + mid);
                    d.vx[k] = mid.x + tail.x;
                    d.vy[k] = mid.y + tail.y;
                }
            }
        }
    }
    return out;
}

DiffeoPath reverse_path(const DiffeoPath& phi) {
    const TorusGrid& g = phi.grid;
    const int n = g.n();
    const int T = phi.tsamples();
    const DisplacementField inv = invert_displacement(phi.endpoint());

    DiffeoPath out(g, T, PathSource::composed);
    for (int j = 1; j <= T; ++j) {
        const DisplacementField& dsrc = phi.displacement[T - j];
        DisplacementField& d = out.displacement[j];
        for (int iy = 0; iy < n; ++iy) {
            for (int ix = 0; ix < n; ++ix) {
                const int k = g.index(ix, iy);
                const Vec2 e{inv.vx[k], inv.vy[k]};
                const Vec2 tail = sample_bicubic(dsrc, g.node(ix, iy) + e);
                d.vx[k] = e.x + tail.x;
                d.vy[k] = e.y + tail.y;
            }
        }
    }
    return out;
}

namespace {

// Eulerian velocity fields of a path: central time differences of the
// displacement composed with the inverse maps (one-sided at the endpoints).
std::vector<VectorField> path_velocities(const DiffeoPath& path) {
    const TorusGrid& g = path.grid;
    const int n = g.n();
    const int T = path.tsamples();
    const double inv2dt = 0.5 * T;

    std::vector<VectorField> out;
    out.reserve(T + 1);
    DisplacementField prev_inv(g);
    for (int j = 0; j <= T; ++j) {
        VectorField lag(g);  // d/dt of the trajectory through each node label
        const auto& D = path.displacement;
        for (size_t k = 0; k < lag.vx.size(); ++k) {
            double vx, vy;
            if (j == 0) {
                vx = (-3.0 * D[0].vx[k] + 4.0 * D[1].vx[k] - D[2].vx[k]) * inv2dt;
                vy = (-3.0 * D[0].vy[k] + 4.0 * D[1].vy[k] - D[2].vy[k]) * inv2dt;
            } else if (j == T) {
                vx = (3.0 * D[T].vx[k] - 4.0 * D[T - 1].vx[k] + D[T - 2].vx[k]) * inv2dt;
                vy = (3.0 * D[T].vy[k] - 4.0 * D[T - 1].vy[k] + D[T - 2].vy[k]) * inv2dt;
            } else {
                vx = (D[j + 1].vx[k] - D[j - 1].vx[k]) * inv2dt;
                vy = (D[j + 1].vy[k] - D[j - 1].vy[k]) * inv2dt;
            }
            lag.vx[k] = vx;
            lag.vy[k] = vy;
        }

        prev_inv = invert_displacement(path.displacement[j], 1e-11,
                                       j == 0 ? nullptr : &prev_inv);
        const DisplacementField& inv = prev_inv;
        VectorField eul(g);
        for (int iy = 0; iy < n; ++iy) {
            for (int ix = 0; ix < n; ++ix) {
                const int k = g.index(ix, iy);
                const Vec2 pre = g.node(ix, iy) + Vec2{inv.vx[k], inv.vy[k]};
                eul.set(ix, iy, sample_bicubic(lag, pre));
            }
        }
        out.push_back(std::move(eul));
    }
    return out;
}

}  // namespace

GeneratorPath recover_generator(const DiffeoPath& path, double closed_tol) {
    const int T = path.tsamples();
    if (closed_tol <= 0.0) closed_tol = 40.0 * default_closedness_tol(path.grid);

    const std::vector<VectorField> vel = path_velocities(path);
    GeneratorPath gen(path.grid, T);
    for (int j = 0; j <= T; ++j) {
        const OneFormField alpha = contract_with_omega(vel[j]);
        const double res = closedness_residual(alpha);
        if (res > closed_tol) {
            std::ostringstream msg;
            msg << "path not symplectic to tolerance (residual " << res << " > " << closed_tol
                << " at sample " << j << ")";
            throw std::runtime_error(msg.str());
        }
        HodgeDecomposition dec = hodge_decompose(alpha, closed_tol);
        gen.hamiltonian[j] = std::move(dec.exact_potential);
        gen.harmonic[j] = dec.harmonic;
    }
    return gen;
}

FluxClass flux_cohomological(const GeneratorPath& gen) {
    const int T = gen.tsamples();
    double a = 0.0, b = 0.0;
    for (int j = 0; j <= T; ++j) {
        const double w = (j == 0 || j == T) ? 0.5 : 1.0;
        a += w * gen.harmonic[j].x;
        b += w * gen.harmonic[j].y;
    }
    return {a / T, b / T};
}

FluxClass flux_definition(const DiffeoPath& path) {
    const int T = path.tsamples();
    const std::vector<VectorField> vel = path_velocities(path);

    OneFormField acc(path.grid);
    for (int j = 0; j <= T; ++j) {
        const OneFormField alpha = contract_with_omega(vel[j]);
        const OneFormField pulled = pullback_oneform(path.displacement[j], alpha);
        const double w = ((j == 0 || j == T) ? 0.5 : 1.0) / T;
        for (size_t k = 0; k < acc.a.size(); ++k) {
            acc.a[k] += w * pulled.a[k];
            acc.b[k] += w * pulled.b[k];
        }
    }
    const Vec2 h = harmonic_mean(acc);
    return {h.x, h.y};
}

bool is_loop(const DiffeoPath& path, double tol) {
    const DisplacementField& d = path.endpoint();
    double mx = 0.0;
    for (size_t k = 0; k < d.vx.size(); ++k) {
        mx = std::max(mx, std::abs(wrap_symmetric(d.vx[k])));
        mx = std::max(mx, std::abs(wrap_symmetric(d.vy[k])));
    }
    return mx <= tol;
}

}  // namespace hoferlike
