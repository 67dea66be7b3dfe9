#pragma once
#include "bitrade/model.hpp"

#include <cstdint>
#include <string>

#include <json.hpp>

namespace bitrade {

/// Parsed and validated run configuration. The file is JSON (","-free
/// comments allowed); unknown keys anywhere are rejected.
struct RunConfig {
    std::string mode; // equilibrium | zones | discrete | ode | sde | sweep
    ModelParams params;
    PriceState initial;
    bool has_initial = false;

    // discrete
    int max_steps = 100000;
    double tol = 1e-10;

    // ode / sde
    double dt = 1e-3;
    double horizon = 50.0;
    std::string method = "rk4"; // rk4 | euler
    bool portrait = false;
    double portrait_min = 0.1;
    double portrait_max = 3.0;
    int portrait_n = 50;

    // sde
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    std::uint64_t seed = 1;
    std::string shock_mode = "symmetric";

    // equilibrium / sweep
    int grid_n = 0; // > 0 enables the brute-force cross-check
    int draws = 1000;

    nlohmann::json resolved; // full effective config, embedded in summaries
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

} // namespace bitrade
