#include "hoferlike/constructions.hpp"

#include <algorithm>
#include <stdexcept>

#include "hoferlike/functionals.hpp"

namespace hoferlike {

TwoParamFamily::TwoParamFamily(const TorusGrid& g, int S, int T)
    : grid(g), s_samples(S), t_samples(T) {
    if (S < 4 || T < 4) throw std::invalid_argument("parameter grid needs at least 4 intervals");
}

namespace {

VectorField lerp_field(const VectorField& lo, const VectorField& hi, double f) {
    VectorField out(lo.grid);
    for (size_t k = 0; k < out.vx.size(); ++k) {
        out.vx[k] = (1.0 - f) * lo.vx[k] + f * hi.vx[k];
        out.vy[k] = (1.0 - f) * lo.vy[k] + f * hi.vy[k];
    }
    return out;
}

// Sample the input family at parameter value in [0,1].
VectorField family_at(const std::vector<VectorField>& fam, double t) {
    const int T = static_cast<int>(fam.size()) - 1;
    double s = std::clamp(t, 0.0, 1.0) * T;
    int j = std::min(static_cast<int>(s), T - 1);
    return lerp_field(fam[j], fam[j + 1], s - j);
}

}  // namespace

TwoParamFamily build_drive(const TorusGrid& g, const std::vector<VectorField>& x_family,
                           int s_samples) {
    if (x_family.size() < 3) throw std::invalid_argument("input family needs >= 3 time samples");
    const int T = static_cast<int>(x_family.size()) - 1;
    TwoParamFamily fam(g, s_samples, T);
    fam.input = x_family;

    // Trapezoidal running integrals of the input along t.
    std::vector<VectorField> prefix(static_cast<size_t>(T) + 1, VectorField(g));
    for (int j = 1; j <= T; ++j) {
        const double w = 0.5 / T;
        VectorField& p = prefix[j];
        p = prefix[j - 1];
        for (size_t k = 0; k < p.vx.size(); ++k) {
            p.vx[k] += w * (x_family[j - 1].vx[k] + x_family[j].vx[k]);
            p.vy[k] += w * (x_family[j - 1].vy[k] + x_family[j].vy[k]);
        }
    }

    fam.drive.assign(static_cast<size_t>(s_samples + 1) * (T + 1), VectorField(g));
    for (int is = 0; is <= s_samples; ++is) {
        const double s = static_cast<double>(is) / s_samples;
        const VectorField xs = family_at(x_family, s);
        for (int it = 0; it <= T; ++it) {
            const double t = static_cast<double>(it) / T;
            VectorField& z = fam.drive[fam.index(is, it)];
            for (size_t k = 0; k < z.vx.size(); ++k) {
                z.vx[k] = t * xs.vx[k] - 2.0 * s * prefix[it].vx[k];
                z.vy[k] = t * xs.vy[k] - 2.0 * s * prefix[it].vy[k];
            }
        }
    }
    return fam;
}

void flow_in_s(TwoParamFamily& fam, int substeps) {
    if (fam.drive.empty()) throw std::logic_error("drive not built");
    if (substeps < 1) throw std::invalid_argument("substeps must be >= 1");
    const TorusGrid& g = fam.grid;
    const int n = g.n();
    const int S = fam.s_samples, T = fam.t_samples;
    const double cfl_limit = 5.0 * g.spacing();

    fam.flow.assign(static_cast<size_t>(S + 1) * (T + 1), DisplacementField(g));
    std::vector<Vec2> pos(static_cast<size_t>(g.size()));

    for (int it = 0; it <= T; ++it) {
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) pos[g.index(ix, iy)] = g.node(ix, iy);

        const double ds = 1.0 / (static_cast<double>(S) * substeps);
        auto drive_at = [&](double s, Vec2 p) -> Vec2 {
            double r = std::clamp(s, 0.0, 1.0) * S;
            int i = std::min(static_cast<int>(r), S - 1);
            const double f = r - i;
            const Vec2 lo = sample_bilinear(fam.drive[fam.index(i, it)], p);
            const Vec2 hi = sample_bilinear(fam.drive[fam.index(i + 1, it)], p);
            return {(1.0 - f) * lo.x + f * hi.x, (1.0 - f) * lo.y + f * hi.y};
        };

        for (int is = 0; is < S; ++is) {
            for (int sub = 0; sub < substeps; ++sub) {
                const double s0 = (static_cast<double>(is) * substeps + sub) * ds;
                for (Vec2& p : pos) {
                    const Vec2 k1 = drive_at(s0, p);
                    const Vec2 k2 = drive_at(s0 + 0.5 * ds, p + 0.5 * ds * k1);
                    const Vec2 k3 = drive_at(s0 + 0.5 * ds, p + 0.5 * ds * k2);
                    const Vec2 k4 = drive_at(s0 + ds, p + ds * k3);
                    const Vec2 step = (ds / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                    if (step.norm() > cfl_limit) throw std::runtime_error("time step too large");
                    p += step;
                }
            }
            DisplacementField& d = fam.flow[fam.index(is + 1, it)];
            for (int iy = 0; iy < n; ++iy)
                for (int ix = 0; ix < n; ++ix)
                    d.set(ix, iy, pos[g.index(ix, iy)] - g.node(ix, iy));
        }
    }

    // Grid estimates of the drive rates used by the Gronwall envelope.
    double sup_dt = 0.0, sup_jac = 0.0;
    const double inv2h = 0.5 * n;
    for (int is = 0; is <= S; ++is) {
        for (int it = 0; it <= T; ++it) {
            const VectorField& z = fam.drive[fam.index(is, it)];
            const VectorField& zm = fam.drive[fam.index(is, std::max(it - 1, 0))];
            const VectorField& zp = fam.drive[fam.index(is, std::min(it + 1, T))];
            const double tspan = (std::min(it + 1, T) - std::max(it - 1, 0)) / static_cast<double>(T);
            for (int iy = 0; iy < n; ++iy) {
                for (int ix = 0; ix < n; ++ix) {
                    const int k = g.index(ix, iy);
                    const double dvx = (zp.vx[k] - zm.vx[k]) / tspan;
                    const double dvy = (zp.vy[k] - zm.vy[k]) / tspan;
                    sup_dt = std::max(sup_dt, std::hypot(dvx, dvy));

                    const int xp = g.index(g.wrap(ix + 1), iy), xm = g.index(g.wrap(ix - 1), iy);
                    const int yp = g.index(ix, g.wrap(iy + 1)), ym = g.index(ix, g.wrap(iy - 1));
                    const double axx = (z.vx[xp] - z.vx[xm]) * inv2h;
                    const double axy = (z.vx[yp] - z.vx[ym]) * inv2h;
                    const double ayx = (z.vy[xp] - z.vy[xm]) * inv2h;
                    const double ayy = (z.vy[yp] - z.vy[ym]) * inv2h;
                    // Largest singular value of the 2x2 Jacobian.
                    const double q = axx * axx + axy * axy + ayx * ayx + ayy * ayy;
                    const double det = axx * ayy - axy * ayx;
                    const double disc = std::sqrt(std::max(q * q - 4.0 * det * det, 0.0));
                    sup_jac = std::max(sup_jac, std::sqrt(0.5 * (q + disc)));
                }
            }
        }
    }
    fam.drive_dt_sup = sup_dt;
    fam.drive_jac_sup = sup_jac;
}

void extract_velocity(TwoParamFamily& fam) {
    if (!fam.has_flow()) throw std::logic_error("flow not built");
    const TorusGrid& g = fam.grid;
    const int n = g.n();
    const int S = fam.s_samples, T = fam.t_samples;
    const double inv2dt = 0.5 * T;

    fam.velocity.assign(static_cast<size_t>(S + 1) * (T + 1), VectorField(g));
    VectorField lag(g);
    DisplacementField prev_inv(g);
    for (int is = 0; is <= S; ++is) {
        for (int it = 0; it <= T; ++it) {
            const auto at = [&](int jt) -> const DisplacementField& {
                return fam.flow[fam.index(is, jt)];
            };
            for (size_t k = 0; k < lag.vx.size(); ++k) {
                double vx, vy;
                if (it == 0) {
                    vx = (-3.0 * at(0).vx[k] + 4.0 * at(1).vx[k] - at(2).vx[k]) * inv2dt;
                    vy = (-3.0 * at(0).vy[k] + 4.0 * at(1).vy[k] - at(2).vy[k]) * inv2dt;
                } else if (it == T) {
                    vx = (3.0 * at(T).vx[k] - 4.0 * at(T - 1).vx[k] + at(T - 2).vx[k]) * inv2dt;
                    vy = (3.0 * at(T).vy[k] - 4.0 * at(T - 1).vy[k] + at(T - 2).vy[k]) * inv2dt;
                } else {
                    vx = (at(it + 1).vx[k] - at(it - 1).vx[k]) * inv2dt;
                    vy = (at(it + 1).vy[k] - at(it - 1).vy[k]) * inv2dt;
                }
                lag.vx[k] = vx;
                lag.vy[k] = vy;
            }
            VectorField& v = fam.velocity[fam.index(is, it)];
            if (is == 0) continue;  // flow is the identity there, velocity zero
            prev_inv = invert_displacement(fam.flow[fam.index(is, it)], 1e-11,
                                           it == 0 ? nullptr : &prev_inv);
            const DisplacementField& inv = prev_inv;
            for (int iy = 0; iy < n; ++iy) {
                for (int ix = 0; ix < n; ++ix) {
                    const int k = g.index(ix, iy);
                    const Vec2 pre = g.node(ix, iy) + Vec2{inv.vx[k], inv.vy[k]};
                    v.set(ix, iy, sample_bicubic(lag, pre));
                }
            }
        }
    }
}

double gronwall_bound(double rate_n, double rate_k, double s) {
    if (rate_k < 1e-12) return rate_n * s;
    return rate_n / rate_k * (std::exp(rate_k * s) - 1.0);
}

GronwallReport gronwall_check(const TwoParamFamily& fam) {
    if (!fam.has_velocity()) throw std::logic_error("velocity not built");
    GronwallReport rep;
    for (const VectorField& v : fam.velocity)
        rep.sup_velocity = std::max(rep.sup_velocity, v.max_norm());
    rep.rate_n = 1.1 * fam.drive_dt_sup;
    rep.rate_k = 1.1 * fam.drive_jac_sup;
    rep.degenerate_rate = rep.rate_k < 1e-12;
    rep.bound = gronwall_bound(rep.rate_n, rep.rate_k);
    rep.pass = rep.sup_velocity <= rep.bound + 1e-6;
    return rep;
}

CorrectionField correction_hamiltonian(const TwoParamFamily& fam, double u, int t_index) {
    if (!fam.has_velocity()) throw std::logic_error("velocity not built");
    if (t_index < 0 || t_index > fam.t_samples) throw std::out_of_range("t index out of range");
    u = std::clamp(u, 0.0, 1.0);
    const TorusGrid& g = fam.grid;
    const int S = fam.s_samples;

    // omega(drive, velocity) per s node at this t.
    auto wedge = [&](int is, ScalarField& out) {
        const VectorField& z = fam.drive[fam.index(is, t_index)];
        const VectorField& v = fam.velocity[fam.index(is, t_index)];
        for (size_t k = 0; k < out.values.size(); ++k)
            out.values[k] = z.vx[k] * v.vy[k] - z.vy[k] * v.vx[k];
    };

    ScalarField acc(g), cur(g), prev(g);
    const double ds = 1.0 / S;
    wedge(0, prev);
    for (int is = 1; is <= S; ++is) {
        const double s_lo = (is - 1) * ds;
        if (s_lo >= u) break;
        wedge(is, cur);
        const double span = std::min(u, is * ds) - s_lo;
        if (span >= ds) {
            for (size_t k = 0; k < acc.values.size(); ++k)
                acc.values[k] += 0.5 * ds * (prev.values[k] + cur.values[k]);
        } else {
            // partial last interval, integrand linear in s
            const double f = span / ds;
            for (size_t k = 0; k < acc.values.size(); ++k) {
                const double end = (1.0 - f) * prev.values[k] + f * cur.values[k];
                acc.values[k] += 0.5 * span * (prev.values[k] + end);
            }
        }
        std::swap(prev, cur);
    }

    CorrectionField out{acc, acc};
    out.normalized.subtract_mean();
    return out;
}

OscBoundReport osc_bound_check(const TwoParamFamily& fam, double u, double l0) {
    if (!fam.has_velocity()) throw std::logic_error("velocity not built");
    OscBoundReport rep;
    for (const VectorField& v : fam.velocity)
        rep.sup_velocity = std::max(rep.sup_velocity, v.max_norm());
    for (const VectorField& x : fam.input)
        rep.sup_input_norm = std::max(rep.sup_input_norm, vf_hoferlike_norm(x));
    for (int it = 0; it <= fam.t_samples; ++it) {
        const CorrectionField corr = correction_hamiltonian(fam, u, it);
        rep.osc_value = std::max(rep.osc_value, oscillation(corr.raw));
    }
    rep.bound = 4.0 * l0 * rep.sup_velocity * rep.sup_input_norm;
    rep.pass = rep.osc_value <= rep.bound + 1e-6;
    return rep;
}

FragmentationPlan fragment(int pieces, double epsilon) {
    if (pieces < 2) throw std::invalid_argument("fragmentation needs at least 2 pieces");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");

    FragmentationPlan plan;
    plan.epsilon = epsilon;
    plan.weights.resize(pieces);
    double total = 0.0;
    for (int k = 0; k < pieces; ++k) {
        plan.weights[k] = 1.0 / (static_cast<double>(k + 1) * (k + 1));
        total += plan.weights[k];
    }
    for (double& w : plan.weights) w /= total;

    // Least index with both the tail mass and the per-piece weights <= eps.
    plan.cutoff_index = pieces;
    double tail = 0.0;
    std::vector<double> tails(pieces + 1, 0.0);
    for (int k = pieces - 1; k >= 0; --k) {
        tail += plan.weights[k];
        tails[k] = tail;
    }
    for (int k = 0; k < pieces; ++k) {
        if (tails[k] <= epsilon && plan.weights[k] <= epsilon) {
            plan.cutoff_index = k;
            break;
        }
    }
    return plan;
}

std::vector<Vec2> fragment_piece(const FragmentationPlan& plan, int k,
                                 const std::vector<Vec2>& family) {
    if (k < 0 || k >= plan.pieces()) throw std::out_of_range("piece index out of range");
    std::vector<Vec2> out(family.size());
    for (size_t j = 0; j < family.size(); ++j) out[j] = plan.weights[k] * family[j];
    return out;
}

std::vector<PieceFluxRow> fragment_flux_check(const FragmentationPlan& plan,
                                              const std::vector<Vec2>& family) {
    const int T = static_cast<int>(family.size()) - 1;
    Vec2 total{};
    for (int j = 0; j <= T; ++j) {
        const double w = ((j == 0 || j == T) ? 0.5 : 1.0) / T;
        total += w * family[j];
    }
    std::vector<PieceFluxRow> rows;
    rows.reserve(plan.pieces());
    for (int k = 0; k < plan.pieces(); ++k) {
        const Vec2 f = plan.weights[k] * total;
        PieceFluxRow row;
        row.piece = k;
        row.flux = {f.x, f.y};
        row.lattice_distance = std::hypot(f.x - std::round(f.x), f.y - std::round(f.y));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hoferlike
