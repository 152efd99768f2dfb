#include "hoferlike/suites.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hoferlike/flux_lattice.hpp"
#include "suites_internal.hpp"

namespace hoferlike {

using nlohmann::json;

// ---------------------------------------------------------------------------
// configuration
// ---------------------------------------------------------------------------

namespace {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& scope) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) known = true;
        if (!known) throw std::runtime_error("unknown config key: " + scope + it.key());
    }
}

void validate_config(const RunConfig& cfg) {
    if (cfg.grid.n < 8 || cfg.grid.n > 512 || cfg.grid.n % 2 != 0)
        throw std::runtime_error("grid.n must be even and within [8, 512]");
    if (cfg.grid.tsamples < 16 || cfg.grid.tsamples > 512)
        throw std::runtime_error("grid.tsamples must lie in [16, 512]");
    if (cfg.grid.s_samples < 4 || cfg.grid.s_samples > 256)
        throw std::runtime_error("grid.s_samples must lie in [4, 256]");
    if (cfg.grid.substeps < 1 || cfg.grid.substeps > 64)
        throw std::runtime_error("grid.substeps must lie in [1, 64]");
    if (cfg.grid.twoparam_n < 8 || cfg.grid.twoparam_n > 128 || cfg.grid.twoparam_n % 2 != 0)
        throw std::runtime_error("grid.twoparam_n must be even and within [8, 128]");
    if (!(cfg.tolerances.endpoint > 0.0) || !(cfg.tolerances.loop > 0.0))
        throw std::runtime_error("tolerances must be positive");
    if (cfg.estimator.budget < 10 || cfg.estimator.restarts < 1)
        throw std::runtime_error("estimator budget/restarts out of range");
    if (cfg.parallel < 1 || cfg.parallel > 64)
        throw std::runtime_error("parallel must lie in [1, 64]");
}

}  // namespace

RunConfig load_config_json(const std::string& text) {
    const json j = json::parse(text);
    RunConfig cfg;
    reject_unknown_keys(j, {"grid", "tolerances", "estimator", "seed", "out_dir", "parallel"}, "");

    if (j.contains("grid")) {
        const json& g = j["grid"];
        reject_unknown_keys(g, {"n", "tsamples", "s_samples", "substeps", "twoparam_n"}, "grid.");
        cfg.grid.n = g.value("n", cfg.grid.n);
        cfg.grid.tsamples = g.value("tsamples", cfg.grid.tsamples);
        cfg.grid.s_samples = g.value("s_samples", cfg.grid.s_samples);
        cfg.grid.substeps = g.value("substeps", cfg.grid.substeps);
        cfg.grid.twoparam_n = g.value("twoparam_n", cfg.grid.twoparam_n);
    }
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        reject_unknown_keys(t, {"closed", "endpoint", "loop"}, "tolerances.");
        cfg.tolerances.closed = t.value("closed", cfg.tolerances.closed);
        cfg.tolerances.endpoint = t.value("endpoint", cfg.tolerances.endpoint);
        cfg.tolerances.loop = t.value("loop", cfg.tolerances.loop);
    }
    if (j.contains("estimator")) {
        const json& e = j["estimator"];
        reject_unknown_keys(e,
                            {"modes_per_axis", "temporal_coeffs", "budget", "restarts",
                             "eval_grid", "eval_tsamples", "probe_grid", "probe_steps",
                             "simplex_scale"},
                            "estimator.");
        cfg.estimator.param.modes_per_axis =
            e.value("modes_per_axis", cfg.estimator.param.modes_per_axis);
        cfg.estimator.param.temporal_coeffs =
            e.value("temporal_coeffs", cfg.estimator.param.temporal_coeffs);
        cfg.estimator.budget = e.value("budget", cfg.estimator.budget);
        cfg.estimator.restarts = e.value("restarts", cfg.estimator.restarts);
        cfg.estimator.eval_grid = e.value("eval_grid", cfg.estimator.eval_grid);
        cfg.estimator.eval_tsamples = e.value("eval_tsamples", cfg.estimator.eval_tsamples);
        cfg.estimator.probe_grid = e.value("probe_grid", cfg.estimator.probe_grid);
        cfg.estimator.probe_steps = e.value("probe_steps", cfg.estimator.probe_steps);
        cfg.estimator.simplex_scale = e.value("simplex_scale", cfg.estimator.simplex_scale);
    }
    cfg.seed = j.value("seed", cfg.seed);
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    cfg.parallel = j.value("parallel", cfg.parallel);

    cfg.estimator.endpoint_tol = cfg.tolerances.endpoint;
    cfg.estimator.seed = cfg.seed;
    validate_config(cfg);
    return cfg;
}

RunConfig load_config_file(const std::string& filename) {
    std::ifstream is(filename);
    if (!is) throw std::runtime_error("cannot open config file " + filename);
    std::stringstream ss;
    ss << is.rdbuf();
    return load_config_json(ss.str());
}

std::string config_to_json(const RunConfig& cfg) {
    json j;
    j["grid"] = {{"n", cfg.grid.n},
                 {"tsamples", cfg.grid.tsamples},
                 {"s_samples", cfg.grid.s_samples},
                 {"substeps", cfg.grid.substeps},
                 {"twoparam_n", cfg.grid.twoparam_n}};
    j["tolerances"] = {{"closed", cfg.tolerances.closed},
                       {"endpoint", cfg.tolerances.endpoint},
                       {"loop", cfg.tolerances.loop}};
    j["estimator"] = {{"modes_per_axis", cfg.estimator.param.modes_per_axis},
                      {"temporal_coeffs", cfg.estimator.param.temporal_coeffs},
                      {"budget", cfg.estimator.budget},
                      {"restarts", cfg.estimator.restarts},
                      {"eval_grid", cfg.estimator.eval_grid},
                      {"eval_tsamples", cfg.estimator.eval_tsamples},
                      {"probe_grid", cfg.estimator.probe_grid},
                      {"probe_steps", cfg.estimator.probe_steps},
                      {"simplex_scale", cfg.estimator.simplex_scale}};
    j["seed"] = cfg.seed;
    j["out_dir"] = cfg.out_dir;
    j["parallel"] = cfg.parallel;
    return j.dump(1);
}

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
    json j = json::parse(config_to_json(cfg));
    json* node = &j;
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        const size_t dot = key.find('.', start);
        parts.push_back(key.substr(start, dot == std::string::npos ? dot : dot - start));
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    for (size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!node->contains(parts[i])) throw std::runtime_error("unknown config key: " + key);
        node = &(*node)[parts[i]];
    }
    const std::string& leaf = parts.back();
    if (!node->contains(leaf)) throw std::runtime_error("unknown config key: " + key);

    json& slot = (*node)[leaf];
    if (slot.is_string()) {
        slot = value;
    } else {
        try {
            slot = json::parse(value);
        } catch (const json::parse_error&) {
            throw std::runtime_error("cannot parse value for " + key + ": " + value);
        }
    }
    cfg = load_config_json(j.dump());
}

std::uint64_t config_hash(const RunConfig& cfg) {
    const std::string dump = config_to_json(cfg);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// ---------------------------------------------------------------------------
// shared suite machinery
// ---------------------------------------------------------------------------

namespace suites_detail {

SuiteResult SuiteBuilder::finish() {
    SuiteResult res;
    res.suite = suite;
    res.checks = checks;
    res.tables = tables;
    res.pass = std::all_of(checks.begin(), checks.end(),
                           [](const SuiteCheck& c) { return c.pass; });

    json rep;
    rep["schema_version"] = kReportSchemaVersion;
    rep["toolkit_version"] = kToolkitVersion;
    rep["suite"] = suite;
    std::ostringstream hash;
    hash << "0x" << std::hex << config_hash(cfg);
    rep["config_hash"] = hash.str();
    rep["seed"] = cfg.seed;
    rep["config"] = json::parse(config_to_json(cfg));
    json jchecks = json::array();
    for (const SuiteCheck& c : checks)
        jchecks.push_back({{"name", c.name},
                           {"value", c.value},
                           {"threshold", c.threshold},
                           {"pass", c.pass},
                           {"detail", c.detail}});
    rep["checks"] = std::move(jchecks);
    rep["data"] = data;
    rep["pass"] = res.pass;
    res.report_json = rep.dump(1);
    return res;
}

std::string csv_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

double profile_value(int kind, double t) {
    switch (kind & 3) {
        case 0: return 1.0;
        case 1: return 1.0 + 0.5 * std::sin(2.0 * kPi * t);
        case 2: return plateau_ramp(t, 0.1);
        default: return 1.0 - 0.4 * std::cos(2.0 * kPi * t);
    }
}

GeneratorPath profiled_hamiltonian(const TorusGrid& g, int T, const TrigPoly& shape, int profile) {
    GeneratorPath gen(g, T);
    const ScalarField base = shape.sample(g);
    for (int j = 0; j <= T; ++j) {
        const double w = profile_value(profile, static_cast<double>(j) / T);
        gen.hamiltonian[j] = base;
        for (double& v : gen.hamiltonian[j].values) v *= w;
        gen.hamiltonian[j].subtract_mean();
    }
    return gen;
}

GeneratorPath profiled_harmonic(const TorusGrid& g, int T, Vec2 coeffs, int profile) {
    GeneratorPath gen(g, T);
    for (int j = 0; j <= T; ++j)
        gen.harmonic[j] = profile_value(profile, static_cast<double>(j) / T) * coeffs;
    return gen;
}

GeneratorPath merge_generators(const GeneratorPath& a, const GeneratorPath& b) {
    GeneratorPath out = a;
    for (int j = 0; j <= a.tsamples(); ++j) {
        for (size_t k = 0; k < out.hamiltonian[j].values.size(); ++k)
            out.hamiltonian[j].values[k] += b.hamiltonian[j].values[k];
        out.harmonic[j] += b.harmonic[j];
        out.hamiltonian[j].subtract_mean();
    }
    return out;
}

double closed_tol_for(const RunConfig& cfg, const TorusGrid& g) {
    return cfg.tolerances.closed > 0.0 ? cfg.tolerances.closed : 40.0 * default_closedness_tol(g);
}

}  // namespace suites_detail

// ---------------------------------------------------------------------------
// registry
// ---------------------------------------------------------------------------

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"hodge",    "flux",     "lengths", "loop",
                                                   "scaling",  "fragment", "twoparam",
                                                   "flux0",    "displace", "duality", "iterates"};
    return names;
}

bool is_suite_name(const std::string& name) {
    const auto& names = suite_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

SuiteResult run_suite(const std::string& name, const RunConfig& cfg) {
    if (name == "hodge") return suites::hodge(cfg);
    if (name == "flux") return suites::flux(cfg);
    if (name == "lengths") return suites::lengths(cfg);
    if (name == "loop") return suites::loop(cfg);
    if (name == "scaling") return suites::scaling(cfg);
    if (name == "fragment") return suites::fragment(cfg);
    if (name == "twoparam") return suites::twoparam(cfg);
    if (name == "flux0") return suites::flux0(cfg);
    if (name == "displace") return suites::displace(cfg);
    if (name == "duality") return suites::duality(cfg);
    if (name == "iterates") return suites::iterates(cfg);
    throw std::invalid_argument("unknown suite: " + name);
}

void write_artifacts(const SuiteResult& result, const std::string& dir) {
    namespace fs = std::filesystem;
    const fs::path base = fs::path(dir) / result.suite;
    fs::create_directories(base);
    {
        std::ofstream os(base / "report.json", std::ios::binary);
        if (!os) throw std::runtime_error("cannot write report under " + base.string());
        os << result.report_json;
    }
    for (const auto& [name, content] : result.tables) {
        std::ofstream os(base / name, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write table " + name);
        os << content;
    }
}

}  // namespace hoferlike
