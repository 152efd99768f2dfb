#pragma once

// Internal helpers shared by the suite translation units; not installed.

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hoferlike/rng.hpp"
#include "hoferlike/suites.hpp"
#include "hoferlike/version.hpp"

namespace hoferlike::suites_detail {

struct SuiteBuilder {
    std::string suite;
    const RunConfig& cfg;
    std::vector<SuiteCheck> checks;
    nlohmann::json data = nlohmann::json::object();
    std::map<std::string, std::string> tables;

    SuiteBuilder(std::string name, const RunConfig& c) : suite(std::move(name)), cfg(c) {}

    void check_le(const std::string& name, double value, double threshold,
                  const std::string& detail = "") {
        checks.push_back({name, value, threshold, value <= threshold, detail});
    }

    void check_ge(const std::string& name, double value, double threshold,
                  const std::string& detail = "") {
        checks.push_back({name, value, threshold, value >= threshold, detail});
    }

    void check_true(const std::string& name, bool ok, const std::string& detail = "") {
        checks.push_back({name, ok ? 1.0 : 0.0, 1.0, ok, detail});
    }

    SuiteResult finish();
};

std::string csv_number(double v);

inline constexpr double kPi = 3.14159265358979323846;

// Trigonometric polynomial with analytically known gradient; the independent
// oracle used to build smooth test fields.
struct TrigPoly {
    struct Mode {
        int kx, ky;
        double c_amp, s_amp;
    };
    std::vector<Mode> modes;

    static TrigPoly random(Rng& rng, int max_mode, double amplitude) {
        TrigPoly p;
        for (int kx = -max_mode; kx <= max_mode; ++kx) {
            for (int ky = 0; ky <= max_mode; ++ky) {
                if (ky == 0 && kx <= 0) continue;  // one representative per +/- pair
                const double fall = 1.0 + kx * kx + ky * ky;
                p.modes.push_back({kx, ky, amplitude * rng.uniform(-1.0, 1.0) / fall,
                                   amplitude * rng.uniform(-1.0, 1.0) / fall});
            }
        }
        return p;
    }

    double eval(Vec2 q) const {
        double v = 0.0;
        for (const Mode& m : modes) {
            const double ang = 2.0 * kPi * (m.kx * q.x + m.ky * q.y);
            v += m.c_amp * std::cos(ang) + m.s_amp * std::sin(ang);
        }
        return v;
    }

    ScalarField sample(const TorusGrid& g) const {
        ScalarField f(g);
        for (int iy = 0; iy < g.n(); ++iy)
            for (int ix = 0; ix < g.n(); ++ix) f.at(ix, iy) = eval(g.node(ix, iy));
        return f;
    }

    OneFormField gradient(const TorusGrid& g) const {
        OneFormField alpha(g);
        for (int iy = 0; iy < g.n(); ++iy) {
            for (int ix = 0; ix < g.n(); ++ix) {
                const Vec2 q = g.node(ix, iy);
                double gx = 0.0, gy = 0.0;
                for (const Mode& m : modes) {
                    const double ang = 2.0 * kPi * (m.kx * q.x + m.ky * q.y);
                    const double d = -m.c_amp * std::sin(ang) + m.s_amp * std::cos(ang);
                    gx += 2.0 * kPi * m.kx * d;
                    gy += 2.0 * kPi * m.ky * d;
                }
                const int k = g.index(ix, iy);
                alpha.a[k] = gx;
                alpha.b[k] = gy;
            }
        }
        return alpha;
    }
};

// Time profiles with matching end slopes; they keep the second-order
// differencing bias of path recovery out of the flux integrals.
double profile_value(int kind, double t);

GeneratorPath profiled_hamiltonian(const TorusGrid& g, int T, const TrigPoly& shape, int profile);
GeneratorPath profiled_harmonic(const TorusGrid& g, int T, Vec2 coeffs, int profile);
GeneratorPath merge_generators(const GeneratorPath& a, const GeneratorPath& b);

double closed_tol_for(const RunConfig& cfg, const TorusGrid& g);

}  // namespace hoferlike::suites_detail

namespace hoferlike::suites {

SuiteResult hodge(const RunConfig& cfg);
SuiteResult flux(const RunConfig& cfg);
SuiteResult lengths(const RunConfig& cfg);
SuiteResult loop(const RunConfig& cfg);
SuiteResult scaling(const RunConfig& cfg);
SuiteResult fragment(const RunConfig& cfg);
SuiteResult twoparam(const RunConfig& cfg);
SuiteResult flux0(const RunConfig& cfg);
SuiteResult displace(const RunConfig& cfg);
SuiteResult duality(const RunConfig& cfg);
SuiteResult iterates(const RunConfig& cfg);

}  // namespace hoferlike::suites
