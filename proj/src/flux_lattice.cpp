#include "hoferlike/flux_lattice.hpp"

#include <stdexcept>

namespace hoferlike {

double lattice_min_norm(const LatticeSpec& spec) {
    if (spec.rank == 0) throw std::runtime_error("trivial lattice has no nonzero element");
    if (spec.rank != 2) throw std::invalid_argument("only rank 0 or 2 lattices are modelled");
    double best = kInfinity;
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) {
            if (i == 0 && j == 0) continue;
            best = std::min(best, spec.basis_scale * std::hypot(i, j));
        }
    return best;
}

double distance_to_lattice(FluxClass v, const LatticeSpec& spec) {
    if (spec.rank == 0) return v.l2_norm();
    const double s = spec.basis_scale;
    const double da = v.a - s * std::round(v.a / s);
    const double db = v.b - s * std::round(v.b / s);
    return std::hypot(da, db);
}

bool is_in_lattice(FluxClass v, double tol, const LatticeSpec& spec) {
    if (!(tol < 0.5 * spec.basis_scale))
        throw std::invalid_argument("tolerance exceeds lattice packing radius");
    return distance_to_lattice(v, spec) <= tol;
}

DualityBounds duality_bounds(FluxClass flux, const std::vector<double>& candidate_energies) {
    const double nf = flux.l2_norm();
    if (nf == 0.0) throw std::runtime_error("duality bounds undefined at zero flux");
    if (candidate_energies.empty())
        throw std::invalid_argument("duality bounds need at least one candidate energy");
    double lo = kInfinity, hi = -kInfinity;
    for (double e : candidate_energies) {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    return {lo / nf, hi / nf};
}

std::vector<double> iterate_lower_bound(FluxClass flux, int k_max, const LatticeSpec& spec) {
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    if (distance_to_lattice(flux, spec) <= 1e-6)
        throw std::runtime_error("bound vacuous for trivial quotient flux");
    std::vector<double> floors;
    floors.reserve(k_max);
    for (int k = 1; k <= k_max; ++k)
        floors.push_back(distance_to_lattice(static_cast<double>(k) * flux, spec));
    return floors;
}

FluxFloor flux_floor(FluxClass flux) {
    const double raw = flux.l2_norm();
    return {raw, 0.5 * raw};
}

}  // namespace hoferlike
