#include "hoferlike/functionals.hpp"

#include <sstream>
#include <stdexcept>

namespace hoferlike {

namespace {

double reduce(const std::vector<double>& integrand, LengthMode mode) {
    const int T = static_cast<int>(integrand.size()) - 1;
    if (mode == LengthMode::time_sup) {
        double m = 0.0;
        for (double v : integrand) m = std::max(m, v);
        return m;
    }
    double acc = 0.0;
    for (int j = 0; j <= T; ++j) acc += ((j == 0 || j == T) ? 0.5 : 1.0) * integrand[j];
    return acc / T;
}

OneFormField constant_form(const TorusGrid& g, Vec2 h) { return OneFormField(g, h.x, h.y); }

}  // namespace

std::string length_tag(const LengthReport& r) {
    std::ostringstream s;
    s << (r.mode == LengthMode::time_integral ? "(1," : "(inf,");
    if (r.p == kInfinity)
        s << "inf)";
    else
        s << r.p << ")";
    return s.str();
}

LengthReport hofer_length(const GeneratorPath& gen, LengthMode mode, const std::string& path_id) {
    if (!gen.is_hamiltonian())
        throw std::runtime_error("Hofer length undefined for non-Hamiltonian path");
    const int T = gen.tsamples();
    std::vector<double> integrand(T + 1);
    for (int j = 0; j <= T; ++j) integrand[j] = oscillation(gen.hamiltonian[j]);
    return {reduce(integrand, mode), mode, kInfinity, gen.grid.n(), T, path_id};
}

LengthReport hoferlike_length(const GeneratorPath& gen, double p, LengthMode mode,
                              const std::string& path_id) {
    if (!(p >= 1.0)) throw std::invalid_argument("invalid exponent");
    const int T = gen.tsamples();
    std::vector<double> integrand(T + 1);
    for (int j = 0; j <= T; ++j)
        integrand[j] = oscillation(gen.hamiltonian[j]) +
                       lp_norm_form(constant_form(gen.grid, gen.harmonic[j]), p);
    return {reduce(integrand, mode), mode, p, gen.grid.n(), T, path_id};
}

double vf_hoferlike_norm(const VectorField& y, double closed_tol) {
    if (closed_tol <= 0.0) closed_tol = default_closedness_tol(y.grid);
    const OneFormField alpha = contract_with_omega(y);
    const double res = closedness_residual(alpha);
    if (res > closed_tol) {
        std::ostringstream msg;
        msg << "vector field not symplectic (closedness residual " << res << " > " << closed_tol
            << ")";
        throw std::runtime_error(msg.str());
    }
    HodgeDecomposition dec = hodge_decompose(alpha, closed_tol);
    return oscillation(dec.exact_potential) +
           lp_norm_form(constant_form(y.grid, dec.harmonic), 2.0);
}

double calabi(const GeneratorPath& gen, const std::vector<ScalarField>* offsets) {
    if (!gen.is_hamiltonian())
        throw std::runtime_error("Calabi invariant undefined for non-Hamiltonian path");
    const int T = gen.tsamples();
    if (offsets && static_cast<int>(offsets->size()) != T + 1)
        throw std::invalid_argument("offsets must match the time sampling");
    double acc = 0.0;
    for (int j = 0; j <= T; ++j) {
        double space = gen.hamiltonian[j].mean();  // area integral on the unit torus
        if (offsets) space += (*offsets)[j].mean();
        acc += ((j == 0 || j == T) ? 0.5 : 1.0) * space;
    }
    return acc / T;
}

ScalingLaw scaling_law(const GeneratorPath& gen, double c, int n) {
    if (!(c > 0.0)) throw std::invalid_argument("scale factor must be positive");
    if (n < 1) throw std::invalid_argument("half-dimension must be >= 1");

    const double harmonic_factor = (n == 1) ? c : std::pow(c, 0.5 * (n + 1));
    const int T = gen.tsamples();
    double rescaled = 0.0, base = 0.0;
    for (int j = 0; j <= T; ++j) {
        const double w = ((j == 0 || j == T) ? 0.5 : 1.0) / T;
        const double osc = oscillation(gen.hamiltonian[j]);
        const double hn = lp_norm_form(constant_form(gen.grid, gen.harmonic[j]), 2.0);
        rescaled += w * (c * osc + harmonic_factor * hn);
        base += w * (osc + hn);
    }
    ScalingLaw law;
    law.rescaled = rescaled;
    law.predicted_low = std::min(c, harmonic_factor) * base;
    law.predicted_high = std::max(c, harmonic_factor) * base;
    law.exact_dim2 = (n == 1);
    return law;
}

}  // namespace hoferlike
