// Batch front-end: runs verification suites from a config file and converts
// path containers between the binary and JSON forms.
//
//   hoferlike <suite> [--config FILE] [--set key=value]... [--out DIR]
//             [--seed INT] [--parallel K]
//   hoferlike convert INPUT --to {json|container} [--out-file FILE]
//
// Exit codes: 0 all assertions pass, 1 assertion failure, 2 usage/config
// error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hoferlike/serialize.hpp"
#include "hoferlike/suites.hpp"
#include "hoferlike/version.hpp"

namespace {

int run_suite_command(const std::string& suite, const std::string& config_file,
                      const std::vector<std::string>& overrides, const std::string& out_dir,
                      long long seed, int parallel) {
    using namespace hoferlike;
    if (!is_suite_name(suite)) {
        std::cerr << "unknown suite: " << suite << "\nknown suites:";
        for (const std::string& s : suite_names()) std::cerr << ' ' << s;
        std::cerr << '\n';
        return 2;
    }

    RunConfig cfg;
    try {
        if (!config_file.empty()) cfg = load_config_file(config_file);
        for (const std::string& kv : overrides) {
            const size_t eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("--set expects key=value, got: " + kv);
            apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed >= 0) {
            cfg.seed = static_cast<std::uint64_t>(seed);
            cfg.estimator.seed = cfg.seed;
        }
        if (parallel > 0) cfg.parallel = parallel;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    try {
        const SuiteResult result = run_suite(suite, cfg);
        write_artifacts(result, cfg.out_dir);
        for (const SuiteCheck& c : result.checks) {
            std::cout << (c.pass ? "PASS" : "FAIL") << "  " << suite << '.' << c.name
                      << "  value=" << c.value << " threshold=" << c.threshold;
            if (!c.detail.empty()) std::cout << "  (" << c.detail << ')';
            std::cout << '\n';
        }
        std::cout << (result.pass ? "suite passed: " : "suite FAILED: ") << suite
                  << "  [report: " << cfg.out_dir << '/' << suite << "/report.json]\n";
        return result.pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "suite error: " << e.what() << '\n';
        return 2;
    }
}

int run_convert(const std::string& input, const std::string& to, std::string out_file) {
    using namespace hoferlike;
    try {
        std::ifstream probe(input, std::ios::binary);
        if (!probe) throw std::runtime_error("cannot open " + input);
        char first = 0;
        probe.get(first);
        probe.close();

        PathFile path = (first == '{') ? path_from_json([&] {
            std::ifstream is(input);
            std::stringstream ss;
            ss << is.rdbuf();
            return ss.str();
        }())
                                       : read_path_file(input);

        if (to == "json") {
            if (out_file.empty()) out_file = input + ".json";
            std::ofstream os(out_file, std::ios::binary);
            os << path_to_json(path);
        } else if (to == "container") {
            if (out_file.empty()) out_file = input + ".hlp";
            write_path_file(out_file, path);
        } else {
            std::cerr << "unknown conversion target: " << to << '\n';
            return 2;
        }
        std::cout << "wrote " << out_file << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "convert error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("hoferlike ") + hoferlike::kToolkitVersion +
                 " - torus symplectic-isotopy verification suites"};
    app.require_subcommand(0, 1);

    std::string config_file, out_dir, convert_input, convert_to = "json", convert_out;
    std::vector<std::string> overrides;
    long long seed = -1;
    int parallel = 0;

    std::string suite;
    app.add_option("suite", suite, "suite to run (see --list)");
    app.add_option("--config", config_file, "JSON config file");
    app.add_option("--set", overrides, "override config values, key=value");
    app.add_option("--out", out_dir, "output directory for reports");
    app.add_option("--seed", seed, "random seed override");
    app.add_option("--parallel", parallel, "worker count for independent targets");
    bool list = false;
    app.add_flag("--list", list, "list suite names and exit");

    CLI::App* conv = app.add_subcommand("convert", "convert a path container");
    conv->add_option("input", convert_input, "input file (binary container or JSON)")
        ->required();
    conv->add_option("--to", convert_to, "target format: json | container");
    conv->add_option("--out-file", convert_out, "output filename");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (list) {
        for (const std::string& s : hoferlike::suite_names()) std::cout << s << '\n';
        return 0;
    }
    if (conv->parsed()) return run_convert(convert_input, convert_to, convert_out);
    if (suite.empty()) {
        std::cerr << app.help();
        return 2;
    }
    return run_suite_command(suite, config_file, overrides, out_dir, seed, parallel);
}
