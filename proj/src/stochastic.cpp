#include "bitrade/stochastic.hpp"

#include "bitrade/rng.hpp"

#include <algorithm>
#include <cmath>

namespace bitrade {

const char* to_string(ShockMode mode) {
    switch (mode) {
        case ShockMode::Symmetric: return "symmetric";
        case ShockMode::PositiveOnly: return "positive_only";
        case ShockMode::NegativeOnly: return "negative_only";
    }
    return "?";
}

double SamplePath::fraction_within(double radius) const {
    if (samples.empty()) return 0.0;
    const PriceState& ref = samples.front().prices;
    std::size_t inside = 0;
    for (const Point& s : samples)
        if (std::hypot(s.prices.p1 - ref.p1, s.prices.p2 - ref.p2) <= radius) ++inside;
    return static_cast<double>(inside) / samples.size();
}

SamplePath euler_maruyama(const PriceState& p0, const ModelParams& m, const NoiseSpec& noise,
                          double dt, double horizon) {
    m.require_valid();
    if (dt <= 0.0 || horizon <= 0.0)
        throw PreconditionViolatedError("euler_maruyama: dt and horizon must be > 0");
    if (noise.sigma1 < 0.0 || noise.sigma2 < 0.0)
        throw PreconditionViolatedError("euler_maruyama: sigma must be >= 0");

    Rng rng(noise.seed);
    const double sqrt_dt = std::sqrt(dt);
    const int n = static_cast<int>(std::llround(horizon / dt));

    SamplePath path;
    PriceState p = p0;
    path.samples.push_back({0.0, p});
    path.samples.reserve(n + 1);

    for (int i = 1; i <= n; ++i) {
        double z1 = rng.gaussian();
        double z2 = rng.gaussian();
        if (noise.shock_mode == ShockMode::PositiveOnly) {
            z1 = std::abs(z1);
            z2 = std::abs(z2);
        } else if (noise.shock_mode == ShockMode::NegativeOnly) {
            z1 = -std::abs(z1);
            z2 = -std::abs(z2);
        }
        const RhsValue f = rhs(p, m);
        p.p1 += f.f1 * dt + noise.sigma1 * p.p1 * z1 * sqrt_dt;
        p.p2 += f.f2 * dt + noise.sigma2 * p.p2 * z2 * sqrt_dt;
        if (p.p1 < 0.0) {
            p.p1 = -p.p1;
            ++path.reflections;
        }
        if (p.p2 < 0.0) {
            p.p2 = -p.p2;
            ++path.reflections;
        }
        if (!std::isfinite(p.p1) || !std::isfinite(p.p2) || p.p1 > 1e6 || p.p2 > 1e6)
            throw NonFiniteError("euler_maruyama: state left [0, 1e6]^2");
        path.samples.push_back({i * dt, p});
        path.max_distance_from_start = std::max(
            path.max_distance_from_start, std::hypot(p.p1 - p0.p1, p.p2 - p0.p2));
    }
    return path;
}

namespace {

// Stationary loci as polylines with arclength measured from E~.
struct LocusChart {
    std::vector<PriceState> pts;
    std::vector<double> arc; // distance from E~ along the polyline
};

LocusChart chart(const std::vector<PriceState>& pts) {
    LocusChart c;
    c.pts = pts;
    c.arc.resize(pts.size(), 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i)
        c.arc[i] = c.arc[i - 1] +
                   std::hypot(pts[i].p1 - pts[i - 1].p1, pts[i].p2 - pts[i - 1].p2);
    return c;
}

struct Projection {
    double arc = 0.0;  // distance from E~ along the owning locus
    double dist = 0.0; // distance from the sample to the locus
};

Projection project(const PriceState& p, const LocusChart& a, const LocusChart& b) {
    Projection best{0.0, 1e300};
    for (const LocusChart* c : {&a, &b}) {
        for (std::size_t i = 0; i < c->pts.size(); ++i) {
            const double d = std::hypot(p.p1 - c->pts[i].p1, p.p2 - c->pts[i].p2);
            if (d < best.dist) best = {c->arc[i], d};
        }
    }
    return best;
}

} // namespace

DriftReport one_sided_drift_experiment(const PriceState& p0, const ModelParams& m,
                                       const NoiseSpec& noise, double dt, double horizon) {
    if (noise.shock_mode == ShockMode::Symmetric)
        throw PreconditionViolatedError("one_sided_drift_experiment: needs a one-sided mode");

    const SamplePath path = euler_maruyama(p0, m, noise, dt, horizon);
    const StationarySet set = stationary_set(m, 1024);
    const LocusChart h3c = chart(set.h3_points);
    const LocusChart h4c = chart(set.h4_points);

    DriftReport rep;
    const std::size_t stride = std::max<std::size_t>(1, path.samples.size() / 2000);
    Projection first = project(path.samples.front().prices, h3c, h4c);
    Projection last = first;
    for (std::size_t i = 0; i < path.samples.size(); i += stride) {
        const Projection pr = project(path.samples[i].prices, h3c, h4c);
        rep.max_locus_dist = std::max(rep.max_locus_dist, pr.dist);
        last = pr;
    }
    {
        const Projection pr = project(path.samples.back().prices, h3c, h4c);
        rep.max_locus_dist = std::max(rep.max_locus_dist, pr.dist);
        last = pr;
    }
    rep.locus_drift = first.arc - last.arc; // positive toward E~
    rep.toward_E = rep.locus_drift > 0.0;
    return rep;
}

} // namespace bitrade
