#include "bitrade/config.hpp"

#include "bitrade/errors.hpp"

#include <fstream>
#include <set>

namespace bitrade {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

double num(const json& obj, const char* key, double fallback, bool required = false) {
    if (!obj.contains(key)) {
        if (required) throw ConfigError(std::string("missing required key '") + key + "'");
        return fallback;
    }
    if (!obj[key].is_number()) throw ConfigError(std::string("key '") + key + "' must be a number");
    return obj[key].get<double>();
}

} // namespace

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config root must be an object");
    reject_unknown(j, {"mode", "params", "initial", "discrete", "ode", "sde", "equilibrium",
                       "sweep", "zones"},
                   "config root");

    RunConfig cfg;
    if (j.contains("mode")) {
        if (!j["mode"].is_string()) throw ConfigError("'mode' must be a string");
        cfg.mode = j["mode"].get<std::string>();
    }

    if (!j.contains("params") || !j["params"].is_object())
        throw ConfigError("missing 'params' object");
    const json& p = j["params"];
    reject_unknown(p, {"Y1", "Y2", "q1", "q2", "rho"}, "params");
    cfg.params.Y1 = num(p, "Y1", 0.0, true);
    cfg.params.Y2 = num(p, "Y2", 0.0, true);
    cfg.params.q1 = num(p, "q1", 0.0, true);
    cfg.params.q2 = num(p, "q2", 0.0, true);
    cfg.params.rho = num(p, "rho", 0.0, true);
    if (!cfg.params.valid()) throw ConfigError("params: Y1,Y2,q1,q2,rho must all be > 0");

    if (j.contains("initial")) {
        const json& in = j["initial"];
        if (!in.is_object()) throw ConfigError("'initial' must be an object");
        reject_unknown(in, {"p1", "p2"}, "initial");
        cfg.initial.p1 = num(in, "p1", 0.0, true);
        cfg.initial.p2 = num(in, "p2", 0.0, true);
        if (cfg.initial.p1 < 0.0 || cfg.initial.p2 < 0.0)
            throw ConfigError("initial prices must be >= 0");
        if (cfg.initial.p1 == 0.0 && cfg.initial.p2 == 0.0)
            throw ConfigError("initial prices cannot both be zero");
        cfg.has_initial = true;
    }

    if (j.contains("discrete")) {
        const json& d = j["discrete"];
        reject_unknown(d, {"max_steps", "tol"}, "discrete");
        cfg.max_steps = static_cast<int>(num(d, "max_steps", cfg.max_steps));
        cfg.tol = num(d, "tol", cfg.tol);
        if (cfg.max_steps < 1) throw ConfigError("discrete.max_steps must be >= 1");
        if (cfg.tol <= 0.0) throw ConfigError("discrete.tol must be > 0");
    }

    if (j.contains("ode")) {
        const json& o = j["ode"];
        reject_unknown(o, {"dt", "horizon", "method", "portrait"}, "ode");
        cfg.dt = num(o, "dt", cfg.dt);
        cfg.horizon = num(o, "horizon", cfg.horizon);
        if (o.contains("method")) {
            cfg.method = o["method"].get<std::string>();
            if (cfg.method != "rk4" && cfg.method != "euler")
                throw ConfigError("ode.method must be 'rk4' or 'euler'");
        }
        if (o.contains("portrait")) {
            const json& g = o["portrait"];
            reject_unknown(g, {"min", "max", "n"}, "ode.portrait");
            cfg.portrait = true;
            cfg.portrait_min = num(g, "min", cfg.portrait_min);
            cfg.portrait_max = num(g, "max", cfg.portrait_max);
            cfg.portrait_n = static_cast<int>(num(g, "n", cfg.portrait_n));
            if (cfg.portrait_n < 2 || cfg.portrait_min <= 0.0 ||
                cfg.portrait_max <= cfg.portrait_min)
                throw ConfigError("ode.portrait: need 0 < min < max and n >= 2");
        }
    }

    if (j.contains("sde")) {
        const json& s = j["sde"];
        reject_unknown(s, {"dt", "horizon", "sigma1", "sigma2", "seed", "shock_mode"}, "sde");
        cfg.dt = num(s, "dt", cfg.dt);
        cfg.horizon = num(s, "horizon", cfg.horizon);
        cfg.sigma1 = num(s, "sigma1", 0.0);
        cfg.sigma2 = num(s, "sigma2", 0.0);
        if (cfg.sigma1 < 0.0 || cfg.sigma2 < 0.0) throw ConfigError("sde.sigma must be >= 0");
        if (s.contains("seed")) cfg.seed = s["seed"].get<std::uint64_t>();
        if (s.contains("shock_mode")) {
            cfg.shock_mode = s["shock_mode"].get<std::string>();
            if (cfg.shock_mode != "symmetric" && cfg.shock_mode != "positive_only" &&
                cfg.shock_mode != "negative_only")
                throw ConfigError("sde.shock_mode must be symmetric|positive_only|negative_only");
        }
    }
    if (cfg.dt <= 0.0 || cfg.horizon <= 0.0) throw ConfigError("dt and horizon must be > 0");

    if (j.contains("equilibrium")) {
        const json& e = j["equilibrium"];
        reject_unknown(e, {"grid_n"}, "equilibrium");
        cfg.grid_n = static_cast<int>(num(e, "grid_n", 0.0));
        if (cfg.grid_n != 0 && cfg.grid_n < 50)
            throw ConfigError("equilibrium.grid_n must be 0 or >= 50");
    }
    if (j.contains("zones")) {
        reject_unknown(j["zones"], {}, "zones");
    }

    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        reject_unknown(s, {"draws", "seed", "grid_n"}, "sweep");
        cfg.draws = static_cast<int>(num(s, "draws", cfg.draws));
        if (cfg.draws < 1 || cfg.draws > 1000000)
            throw ConfigError("sweep.draws must be in [1, 1e6]");
        if (s.contains("seed")) cfg.seed = s["seed"].get<std::uint64_t>();
        cfg.grid_n = static_cast<int>(num(s, "grid_n", cfg.grid_n));
        if (cfg.grid_n != 0 && cfg.grid_n < 50)
            throw ConfigError("sweep.grid_n must be 0 or >= 50");
    }

    cfg.resolved = j;
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_config(j);
}

} // namespace bitrade
