#include "hoferlike/hodge.hpp"

#include <sstream>
#include <stdexcept>

#include "hoferlike/spectral.hpp"

namespace hoferlike {

Vec2 harmonic_mean(const OneFormField& alpha) {
    double sa = 0.0, sb = 0.0;
    for (double v : alpha.a) sa += v;
    for (double v : alpha.b) sb += v;
    const double m = static_cast<double>(alpha.a.size());
    return {sa / m, sb / m};
}

OneFormField harmonic_projection(const OneFormField& alpha) {
    const Vec2 h = harmonic_mean(alpha);
    return OneFormField(alpha.grid, h.x, h.y);
}

HodgeDecomposition hodge_decompose(const OneFormField& alpha, double tol) {
    const double closed = closedness_residual(alpha);
    if (closed > tol) {
        std::ostringstream msg;
        msg << "form not closed (residual " << closed << " > " << tol << ")";
        throw std::runtime_error(msg.str());
    }

    HodgeDecomposition dec{spectral_gradient_potential(alpha), harmonic_mean(alpha), 0.0};

    const OneFormField du = exterior_derivative(dec.exact_potential);
    double res = 0.0;
    for (size_t k = 0; k < alpha.a.size(); ++k) {
        res = std::max(res, std::abs(alpha.a[k] - du.a[k] - dec.harmonic.x));
        res = std::max(res, std::abs(alpha.b[k] - du.b[k] - dec.harmonic.y));
    }
    dec.residual = res;
    return dec;
}

std::pair<double, double> norm_equivalence_constants(int sample_count) {
    if (sample_count < 8) throw std::invalid_argument("sample_count must be >= 8");
    const TorusGrid grid(8);  // constants are resolution independent for constant forms
    double hi = -kInfinity, lo = kInfinity;
    for (int k = 0; k < sample_count; ++k) {
        const double theta = 2.0 * 3.14159265358979323846 * k / sample_count;
        const OneFormField alpha(grid, std::cos(theta), std::sin(theta));
        const double sup = lp_norm_form(alpha, kInfinity);
        const double l2 = lp_norm_form(alpha, 2.0);
        hi = std::max(hi, sup / l2);
        lo = std::min(lo, sup / l2);
    }
    return {hi, lo};
}

std::pair<double, double> norm_equivalence_constants_area(double area) {
    if (!(area > 0.0)) throw std::invalid_argument("area must be positive");
    const double c = 1.0 / std::sqrt(area);
    return {c, c};
}

}  // namespace hoferlike
