#include "bitrade/run.hpp"
#include "bitrade/version.hpp"

#include <cstdio>
#include <cstring>
#include <iostream>
#include <string>

namespace {

constexpr const char* kUsage =
    "usage: bitrade <mode> --config <path> [--out <dir>] [--seed N]\n"
    "  modes: equilibrium | zones | discrete | ode | sde | sweep\n"
    "exit codes: 0 ok, 1 usage/config error, 2 orientation violated,\n"
    "            3 unresolved classification, 4 numeric/domain error, 5 i/o error\n";

} // namespace

int main(int argc, char** argv) {
    std::string mode, config_path, out_dir = ".";
    bool have_seed = false;
    unsigned long long seed = 0;

    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--help" || arg == "-h") {
            std::cout << kUsage;
            return 0;
        }
        if (arg == "--version") {
            std::cout << "bitrade " << bitrade::kVersion << '\n';
            return 0;
        }
        if (arg == "--config" || arg == "--out" || arg == "--seed") {
            if (i + 1 >= argc) {
                std::cerr << "missing value for " << arg << '\n' << kUsage;
                return 1;
            }
            const std::string val = argv[++i];
            if (arg == "--config") config_path = val;
            else if (arg == "--out") out_dir = val;
            else {
                seed = std::stoull(val);
                have_seed = true;
            }
            continue;
        }
        if (!arg.empty() && arg[0] == '-') {
            std::cerr << "unknown flag " << arg << '\n' << kUsage;
            return 1;
        }
        if (!mode.empty()) {
            std::cerr << "more than one mode given\n" << kUsage;
            return 1;
        }
        mode = arg;
    }

    if (config_path.empty()) {
        std::cerr << "--config is required\n" << kUsage;
        return 1;
    }

    try {
        bitrade::RunConfig cfg = bitrade::load_config(config_path);
        if (!mode.empty()) cfg.mode = mode;
        if (cfg.mode.empty()) {
            std::cerr << "no mode given on the command line or in the config\n";
            return 1;
        }
        if (have_seed) cfg.seed = seed;
        cfg.resolved["mode"] = cfg.mode;
        if (have_seed) {
            if (cfg.mode == "sde") cfg.resolved["sde"]["seed"] = seed;
            if (cfg.mode == "sweep") cfg.resolved["sweep"]["seed"] = seed;
        }

        const bitrade::OutputBundle bundle = bitrade::run(cfg);
        bitrade::write_bundle(bundle, out_dir);

        if (cfg.mode == "discrete" &&
            bundle.summary["result"]["classification"] == "unresolved") {
            std::cerr << "price process unresolved after " << cfg.max_steps << " steps\n";
            return 3;
        }
        return 0;
    } catch (const bitrade::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const bitrade::OrientationViolatedError& e) {
        std::cerr << "orientation violated: " << e.what() << '\n';
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}
