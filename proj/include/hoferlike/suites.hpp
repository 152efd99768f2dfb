#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hoferlike/estimator.hpp"

namespace hoferlike {

// Experiment configuration. Field names double as the JSON schema; defaults
// mirror the module defaults. Unknown keys are rejected on load.
struct RunConfig {
    struct Grid {
        int n = 128;
        int tsamples = 64;
        int s_samples = 32;
        int substeps = 4;
        int twoparam_n = 32;  // the two-parameter family carries (S+1)(T+1) full grids
    } grid;

    struct Tolerances {
        double closed = 0.0;  // 0 = per-grid default 1e-6 * N
        double endpoint = 1e-3;
        double loop = 1e-6;
    } tolerances;

    EstimatorConfig estimator;

    std::uint64_t seed = 20250801;
    std::string out_dir = "out";
    int parallel = 1;
};

RunConfig load_config_json(const std::string& text);
RunConfig load_config_file(const std::string& filename);

// Applies a dotted-path override such as "grid.n=64" on top of a config.
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

std::string config_to_json(const RunConfig& cfg);
std::uint64_t config_hash(const RunConfig& cfg);

// One assertion made by a suite; value/threshold give the measured margin.
struct SuiteCheck {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    bool pass = false;
    std::vector<SuiteCheck> checks;
    std::string report_json;                      // full report document
    std::map<std::string, std::string> tables;    // csv name -> content
};

const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

// Runs one suite; deterministic given the config (including seed).
SuiteResult run_suite(const std::string& name, const RunConfig& cfg);

// Writes report.json and the CSV tables under dir/<suite>/.
void write_artifacts(const SuiteResult& result, const std::string& dir);

}  // namespace hoferlike
