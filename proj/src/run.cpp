#include "bitrade/run.hpp"

#include "bitrade/discrete.hpp"
#include "bitrade/sampler.hpp"
#include "bitrade/stochastic.hpp"
#include "bitrade/version.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace bitrade {

namespace {

using nlohmann::json;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string zone_string(const ZoneLabel& z, bool swapped) {
    std::string s = to_string(z.zone);
    if (swapped) s += "'"; // mirrored frame
    return s;
}

json profile_json(const StrategyProfile& s) {
    return json{{"alpha", s.alpha}, {"beta", s.beta}, {"gamma", s.gamma}, {"delta", s.delta}};
}

json equilibrium_json(const EquilibriumResult& eq, const ModelParams& m) {
    json e;
    e["zone"] = zone_string(eq.zone, eq.swapped);
    if (eq.zone.zone == Zone::Boundary) e["zone_detail"] = eq.zone.detail;
    e["branch"] = to_string(eq.branch);
    e["profile"] = profile_json(eq.profile);
    e["payoff1"] = payoff1(eq.profile, m);
    e["payoff2"] = payoff2(eq.profile, m);
    e["degenerate"] = eq.degenerate;
    e["swapped"] = eq.swapped;
    e["aggregates"] = json{{"q1_cons", eq.agg.q1_cons}, {"q2_cons", eq.agg.q2_cons},
                           {"Y1_res", eq.agg.Y1_res},   {"Y2_res", eq.agg.Y2_res},
                           {"Y1_cons", eq.agg.Y1_cons}, {"Y2_cons", eq.agg.Y2_cons}};
    return e;
}

json base_summary(const RunConfig& cfg) {
    json s;
    s["version"] = kVersion;
    s["csv_schema"] = kCsvSchemaVersion;
    s["mode"] = cfg.mode;
    s["config"] = cfg.resolved;
    return s;
}

void trajectory_row(std::ostringstream& out, double t, const PriceState& p,
                    const StrategyProfile& s, const std::string& zone,
                    const std::string& event) {
    out << fmt(t) << ',' << fmt(p.p1) << ',' << fmt(p.p2) << ',' << fmt(s.alpha) << ','
        << fmt(s.beta) << ',' << fmt(s.gamma) << ',' << fmt(s.delta) << ',' << zone << ','
        << event << '\n';
}

OutputBundle run_equilibrium(const RunConfig& cfg) {
    OutputBundle out;
    const EquilibriumResult eq = solve_nash(cfg.initial, cfg.params);
    json s = base_summary(cfg);
    s["result"] = equilibrium_json(eq, cfg.params);
    if (cfg.grid_n > 0) {
        const BruteForceResult bf = brute_force_nash(cfg.initial, cfg.params, cfg.grid_n);
        const double tol1 = 2.0 * bf.diam1 / cfg.grid_n;
        const double tol2 = 2.0 * bf.diam2 / cfg.grid_n;
        const double gap1 = std::abs(payoff1(eq.profile, cfg.params) - bf.pay1);
        const double gap2 = std::abs(payoff2(eq.profile, cfg.params) - bf.pay2);
        s["oracle"] = json{{"grid_n", cfg.grid_n},
                           {"profile", profile_json(bf.profile)},
                           {"pay1", bf.pay1},
                           {"pay2", bf.pay2},
                           {"gap1", gap1},
                           {"gap2", gap2},
                           {"converged", bf.converged},
                           {"agree", gap1 <= tol1 && gap2 <= tol2}};
    }
    out.summary = s;
    return out;
}

OutputBundle run_zones(const RunConfig& cfg) {
    OutputBundle out;
    json s = base_summary(cfg);
    const ZoneLabel z = classify(cfg.initial, cfg.params);
    const LineValues v = line_values(cfg.initial, cfg.params);
    const PriceSpaceLoci loci = price_space_loci(cfg.params);
    const TheoremAggregates ta = theorem_aggregates(cfg.initial, cfg.params);
    json r;
    r["zone"] = zone_string(z, false);
    if (z.zone == Zone::Boundary) r["zone_detail"] = z.detail;
    r["branch"] = to_string(delta_p_branch(cfg.initial, cfg.params));
    r["lines"] = json{{"l1", v.l1}, {"l2", v.l2}, {"l3", v.l3}, {"l4", v.l4}};
    r["p1_star"] = loci.p1_star;
    r["p2_star"] = loci.p2_star;
    r["E_tilde"] = json{{"p1", cfg.params.Y1 / cfg.params.q1}, {"p2", cfg.params.Y2 / cfg.params.q2}};
    r["terms"] = json{{"RLS1", ta.RLS1},   {"RLS2", ta.RLS2},   {"NLS1", ta.NLS1},
                      {"NLS2", ta.NLS2},   {"NFR1", ta.NFR1},   {"NFR2", ta.NFR2},
                      {"TRFR1", ta.TRFR1}, {"TRFR2", ta.TRFR2}, {"T1", ta.T1},
                      {"T2", ta.T2}};
    s["result"] = r;
    out.summary = s;
    return out;
}

std::string event_string(const std::vector<AdjustmentEvent>& events) {
    std::string s;
    for (const AdjustmentEvent& e : events) {
        if (!s.empty()) s += ';';
        s += 'p';
        s += std::to_string(e.region);
        s += e.direction == AdjustmentEvent::Direction::Up ? "-up" : "-down";
    }
    return s;
}

OutputBundle run_discrete(const RunConfig& cfg) {
    OutputBundle out;
    const Trajectory tr = iterate(cfg.initial, cfg.params, cfg.max_steps, cfg.tol);
    std::ostringstream csv;
    csv << kTrajectoryHeader << '\n';
    for (const TrajectoryRecord& rec : tr.records)
        trajectory_row(csv, rec.t, rec.prices, rec.equilibrium.profile,
                       zone_string(rec.equilibrium.zone, rec.equilibrium.swapped),
                       event_string(rec.events));
    out.trajectory_csv = csv.str();

    json s = base_summary(cfg);
    json r;
    r["classification"] = to_string(tr.classification.kind);
    if (tr.classification.kind == SteadyStateClass::Kind::DegenerateL1 ||
        tr.classification.kind == SteadyStateClass::Kind::DegenerateL2 ||
        tr.classification.kind == SteadyStateClass::Kind::DegenerateL3 ||
        tr.classification.kind == SteadyStateClass::Kind::DegenerateL4)
        r["limit"] = tr.classification.limit;
    if (tr.converged_at) r["converged_at"] = *tr.converged_at;
    r["steps"] = tr.records.size() - 1;
    r["final"] = json{{"p1", tr.records.back().prices.p1}, {"p2", tr.records.back().prices.p2}};
    r["final_equilibrium"] = equilibrium_json(tr.records.back().equilibrium, cfg.params);
    s["result"] = r;
    out.summary = s;
    return out;
}

std::string portrait_csv(const RunConfig& cfg) {
    std::ostringstream csv;
    csv << kPortraitHeader << '\n';
    const int n = cfg.portrait_n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double p1 =
                cfg.portrait_min + (cfg.portrait_max - cfg.portrait_min) * i / (n - 1);
            const double p2 =
                cfg.portrait_min + (cfg.portrait_max - cfg.portrait_min) * j / (n - 1);
            const RhsValue v = rhs({p1, p2}, cfg.params);
            csv << fmt(p1) << ',' << fmt(p2) << ',' << fmt(v.f1) << ',' << fmt(v.f2) << ','
                << zone_string(v.zone, v.swapped) << '\n';
        }
    }
    return csv.str();
}

OutputBundle run_ode(const RunConfig& cfg) {
    OutputBundle out;
    const IntegrationMethod method =
        cfg.method == "euler" ? IntegrationMethod::Euler : IntegrationMethod::Rk4;
    const ContinuousTrajectory tr = integrate(cfg.initial, cfg.params, cfg.dt, cfg.horizon, method);

    std::ostringstream csv;
    csv << kTrajectoryHeader << '\n';
    for (const ContinuousSample& s : tr.samples) {
        StrategyProfile prof;
        if (s.prices.p1 > 0.0 || s.prices.p2 > 0.0) {
            try {
                prof = solve_nash(s.prices, cfg.params).profile;
            } catch (const OrientationViolatedError&) {
                prof = swap_regions(
                    solve_nash(swap_regions(s.prices), swap_regions(cfg.params)).profile);
            }
        }
        trajectory_row(csv, s.t, s.prices, prof, zone_string(s.zone, false),
                       s.sliding ? "sliding" : "");
    }
    out.trajectory_csv = csv.str();
    if (cfg.portrait) out.portrait_csv = portrait_csv(cfg);

    json s = base_summary(cfg);
    const PriceSpaceLoci loci = price_space_loci(cfg.params);
    json r;
    r["terminal"] = tr.terminal == ContinuousTrajectory::Terminal::StationaryPoint
                        ? "stationary"
                        : "horizon";
    r["samples"] = tr.samples.size();
    r["final"] = json{{"p1", tr.samples.back().prices.p1}, {"p2", tr.samples.back().prices.p2}};
    r["E_tilde"] = json{{"p1", cfg.params.Y1 / cfg.params.q1}, {"p2", cfg.params.Y2 / cfg.params.q2}};
    r["p1_star"] = loci.p1_star;
    r["p2_star"] = loci.p2_star;
    s["result"] = r;
    out.summary = s;
    return out;
}

OutputBundle run_sde(const RunConfig& cfg) {
    OutputBundle out;
    NoiseSpec noise;
    noise.sigma1 = cfg.sigma1;
    noise.sigma2 = cfg.sigma2;
    noise.seed = cfg.seed;
    noise.shock_mode = cfg.shock_mode == "positive_only"  ? ShockMode::PositiveOnly
                       : cfg.shock_mode == "negative_only" ? ShockMode::NegativeOnly
                                                            : ShockMode::Symmetric;
    const SamplePath path = euler_maruyama(cfg.initial, cfg.params, noise, cfg.dt, cfg.horizon);

    std::ostringstream csv;
    csv << kTrajectoryHeader << '\n';
    for (const SamplePath::Point& pt : path.samples) {
        StrategyProfile prof;
        std::string zone = "boundary";
        try {
            EquilibriumResult eq = solve_nash(pt.prices, cfg.params);
            prof = eq.profile;
            zone = zone_string(eq.zone, eq.swapped);
        } catch (const OrientationViolatedError&) {
            EquilibriumResult eq = solve_nash(swap_regions(pt.prices), swap_regions(cfg.params));
            prof = swap_regions(eq.profile);
            zone = zone_string(eq.zone, true);
        }
        trajectory_row(csv, pt.t, pt.prices, prof, zone, "");
    }
    out.trajectory_csv = csv.str();

    json s = base_summary(cfg);
    json r;
    r["steps"] = path.samples.size() - 1;
    r["reflections"] = path.reflections;
    r["max_distance_from_start"] = path.max_distance_from_start;
    r["fraction_within_01"] = path.fraction_within(0.1);
    r["final"] = json{{"p1", path.samples.back().prices.p1},
                      {"p2", path.samples.back().prices.p2}};
    if (noise.shock_mode != ShockMode::Symmetric) {
        const DriftReport drift =
            one_sided_drift_experiment(cfg.initial, cfg.params, noise, cfg.dt, cfg.horizon);
        r["locus_drift"] = drift.locus_drift;
        r["toward_E"] = drift.toward_E;
        r["max_locus_dist"] = drift.max_locus_dist;
    }
    s["result"] = r;
    out.summary = s;
    return out;
}

struct SweepRow {
    Instance in;
    EquilibriumResult eq;
    double pay1 = 0.0, pay2 = 0.0;
    double bf_pay1 = 0.0, bf_pay2 = 0.0, bf_tol1 = 0.0, bf_tol2 = 0.0;
    bool has_oracle = false;
    bool agree = true;
};

OutputBundle run_sweep(const RunConfig& cfg) {
    OutputBundle out;
    const std::vector<Zone>& targets = stratification_targets();
    std::vector<SweepRow> rows(cfg.draws);

    const auto work = [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            Rng rng(cfg.seed + static_cast<std::uint64_t>(i));
            SweepRow& row = rows[i];
            row.in = sample_zone(targets[i % targets.size()], rng);
            row.eq = solve_nash(row.in.prices, row.in.params);
            row.pay1 = payoff1(row.eq.profile, row.in.params);
            row.pay2 = payoff2(row.eq.profile, row.in.params);
            if (cfg.grid_n > 0) {
                const BruteForceResult bf =
                    brute_force_nash(row.in.prices, row.in.params, cfg.grid_n);
                row.has_oracle = true;
                row.bf_pay1 = bf.pay1;
                row.bf_pay2 = bf.pay2;
                row.bf_tol1 = 2.0 * bf.diam1 / cfg.grid_n;
                row.bf_tol2 = 2.0 * bf.diam2 / cfg.grid_n;
                row.agree = std::abs(row.pay1 - bf.pay1) <= row.bf_tol1 &&
                            std::abs(row.pay2 - bf.pay2) <= row.bf_tol2;
            }
        }
    };

    const int nthreads = std::max(1, std::min(worker_threads(), cfg.draws));
    if (nthreads == 1) {
        work(0, cfg.draws);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (cfg.draws + nthreads - 1) / nthreads;
        for (int k = 0; k < nthreads; ++k)
            pool.emplace_back(work, k * chunk, std::min(cfg.draws, (k + 1) * chunk));
        for (std::thread& th : pool) th.join();
    }

    std::ostringstream csv;
    csv << kSweepHeader << '\n';
    std::map<std::string, int> zone_counts;
    int disagreements = 0;
    for (int i = 0; i < cfg.draws; ++i) {
        const SweepRow& r = rows[i];
        const std::string zone = zone_string(r.eq.zone, r.eq.swapped);
        ++zone_counts[zone];
        if (!r.agree) ++disagreements;
        csv << i << ',' << zone << ',' << to_string(r.eq.branch) << ',' << fmt(r.in.params.Y1)
            << ',' << fmt(r.in.params.Y2) << ',' << fmt(r.in.params.q1) << ','
            << fmt(r.in.params.q2) << ',' << fmt(r.in.params.rho) << ',' << fmt(r.in.prices.p1)
            << ',' << fmt(r.in.prices.p2) << ',' << fmt(r.eq.profile.alpha) << ','
            << fmt(r.eq.profile.beta) << ',' << fmt(r.eq.profile.gamma) << ','
            << fmt(r.eq.profile.delta) << ',' << fmt(r.pay1) << ',' << fmt(r.pay2) << ',';
        if (r.has_oracle)
            csv << fmt(r.bf_pay1) << ',' << fmt(r.bf_pay2) << ',' << fmt(r.bf_tol1) << ','
                << fmt(r.bf_tol2) << ',' << (r.agree ? 1 : 0);
        else
            csv << ",,,,";
        csv << '\n';
    }
    out.sweep_csv = csv.str();

    json s = base_summary(cfg);
    json r;
    r["draws"] = cfg.draws;
    r["seed"] = cfg.seed;
    r["zone_counts"] = zone_counts;
    if (cfg.grid_n > 0) {
        r["oracle_grid_n"] = cfg.grid_n;
        r["disagreements"] = disagreements;
        r["agreement"] = cfg.draws > 0 ? 1.0 - static_cast<double>(disagreements) / cfg.draws : 1.0;
    }
    s["result"] = r;
    out.summary = s;
    return out;
}

} // namespace

int worker_threads() {
    if (const char* env = std::getenv("BITRADE_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

OutputBundle run(const RunConfig& cfg) {
    if (cfg.mode != "sweep" && !cfg.has_initial)
        throw ConfigError("mode '" + cfg.mode + "' requires an 'initial' section");
    if (cfg.mode == "equilibrium") return run_equilibrium(cfg);
    if (cfg.mode == "zones") return run_zones(cfg);
    if (cfg.mode == "discrete") return run_discrete(cfg);
    if (cfg.mode == "ode") return run_ode(cfg);
    if (cfg.mode == "sde") return run_sde(cfg);
    if (cfg.mode == "sweep") return run_sweep(cfg);
    throw ConfigError("unknown mode '" + cfg.mode + "'");
}

void write_bundle(const OutputBundle& bundle, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    {
        std::ofstream f(fs::path(out_dir) / "summary.json");
        f << bundle.summary.dump(2) << '\n';
    }
    const auto dump = [&](const std::string& name, const std::string& content) {
        if (content.empty()) return;
        std::ofstream f(fs::path(out_dir) / name);
        f << content;
    };
    dump("trajectory.csv", bundle.trajectory_csv);
    dump("portrait.csv", bundle.portrait_csv);
    dump("sweep.csv", bundle.sweep_csv);
}

} // namespace bitrade
