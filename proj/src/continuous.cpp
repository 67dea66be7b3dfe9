#include "bitrade/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bitrade {

namespace {

struct Field {
    double f1 = 0.0;
    double f2 = 0.0;
};

// Vector field cell for an oriented state with positive prices.
Field cell(Zone zone, DeltaPBranch branch, const PriceState& p, const ModelParams& m) {
    const double p1p = p1_prime(p, m);
    const double p2p = p2_prime(p, m);

    const auto both_clear = [&]() -> Field {
        return {(m.Y1 - p.p1 * m.q1) / m.q1, (m.Y2 - p.p2 * m.q2) / m.q2};
    };
    const auto fill_2_from_1 = [&]() -> Field { // II-3 style: p2 absorbs the spillover
        return {0.0, (m.Y2 - p.p2 * m.q2 - p1p * (m.q1 - m.Y1 / p.p1)) / m.q2};
    };
    const auto drain_1 = [&]() -> Field { // spill NE, p1 contracts along g
        return {m.Y1 / m.q1 + (m.Y2 - p.p2 * m.q2) * p.p1 / (m.q1 * p1p) - p.p1, 0.0};
    };
    const auto drain_2_reach = [&]() -> Field { // reach-into-1 NE, p2 contracts
        return {0.0, (m.Y2 - p1p * (m.q1 - m.Y1 / p.p1)) / m.q2 - p.p2};
    };
    const auto split_1 = [&]() -> Field { // both incomes spent in region 1
        return {(m.Y1 / p.p1 + m.Y2 / p1p - m.q1) * p.p1 / m.q1, -p.p2};
    };
    const auto split_2 = [&]() -> Field {
        return {-p.p1, (m.Y1 / p2p + m.Y2 / p.p2 - m.q2) * p.p2 / m.q2};
    };
    const auto drain_1_reach = [&]() -> Field { // reach-into-2 NE, p1 contracts
        return {(m.Y1 - p2p * (m.q2 - m.Y2 / p.p2)) / m.q1 - p.p1, 0.0};
    };
    const auto fill_1_from_2 = [&]() -> Field { // IV-1 style
        return {(m.Y1 - p.p1 * m.q1 - p2p * (m.q2 - m.Y2 / p.p2)) / m.q1, 0.0};
    };
    const auto drain_2 = [&]() -> Field { // IV-2 symmetric of drain_1
        return {0.0, (m.Y1 - p.p1 * m.q1) * p.p2 / (m.q2 * p2p) + m.Y2 / m.q2 - p.p2};
    };

    switch (zone) {
        case Zone::III:
            return both_clear();
        case Zone::II_3:
            return fill_2_from_1();
        case Zone::II_2:
            return ge_minus_rho(branch) ? drain_1() : drain_2_reach();
        case Zone::II_1:
            return ge_minus_rho(branch) ? drain_1() : split_1();
        case Zone::I_1:
        case Zone::Z1_4:
            if (inside_closed(branch)) return both_clear();
            return branch == DeltaPBranch::LtMinusRho ? drain_2_reach() : drain_1_reach();
        case Zone::I_2:
        case Zone::Z1_3:
            if (inside_closed(branch)) return both_clear();
            return branch == DeltaPBranch::LtMinusRho ? split_1() : drain_1_reach();
        case Zone::I_3:
        case Zone::Z1_1:
            if (inside_closed(branch)) return both_clear();
            return branch == DeltaPBranch::LtMinusRho ? split_1() : split_2();
        case Zone::Z1_2:
            if (inside_closed(branch)) return both_clear();
            return branch == DeltaPBranch::LtMinusRho ? drain_2_reach() : split_2();
        case Zone::IV_1:
            return fill_1_from_2();
        case Zone::IV_2:
            return le_plus_rho(branch) ? drain_2() : drain_1_reach();
        default:
            throw std::logic_error("cell: unhandled zone");
    }
}

// Field on the zero-price boundary, from the degenerate equilibrium's books.
Field axis_field(const PriceState& p, const ModelParams& m) {
    const EquilibriumResult eq = solve_nash(p, m);
    Field f;
    f.f1 = -p.p1 * (m.q1 - eq.agg.q1_cons) / m.q1 + (m.Y1 - eq.agg.Y1_cons) / m.q1;
    f.f2 = -p.p2 * (m.q2 - eq.agg.q2_cons) / m.q2 + (m.Y2 - eq.agg.Y2_cons) / m.q2;
    return f;
}

// Evaluate the field forcing a particular price-gap branch (used for the
// one-sided limits on the discontinuity lines).
RhsValue rhs_forced(const PriceState& p, const ModelParams& m, DeltaPBranch forced) {
    RhsValue out;
    out.branch = forced;
    if (p.p1 == 0.0 || p.p2 == 0.0) {
        const Field f = axis_field(p, m);
        out.f1 = f.f1;
        out.f2 = f.f2;
        out.zone = {Zone::Boundary, "zero-price axis"};
        return out;
    }
    const bool oriented = p.p2 * m.q2 <= p.p1 * m.q1 + kEpsNum;
    if (oriented) {
        out.zone = classify(p, m);
        const Field f = cell(out.zone.zone, forced, p, m);
        out.f1 = f.f1;
        out.f2 = f.f2;
        return out;
    }
    const PriceState ps = swap_regions(p);
    const ModelParams ms = swap_regions(m);
    out.zone = classify(ps, ms);
    out.swapped = true;
    DeltaPBranch fs = forced;
    if (forced == DeltaPBranch::LtMinusRho) fs = DeltaPBranch::GtPlusRho;
    else if (forced == DeltaPBranch::GtPlusRho) fs = DeltaPBranch::LtMinusRho;
    else if (forced == DeltaPBranch::EqMinusRho) fs = DeltaPBranch::EqPlusRho;
    else if (forced == DeltaPBranch::EqPlusRho) fs = DeltaPBranch::EqMinusRho;
    const Field f = cell(out.zone.zone, fs, ps, ms);
    out.f1 = f.f2;
    out.f2 = f.f1;
    return out;
}

} // namespace

RhsValue rhs(const PriceState& p, const ModelParams& m) {
    m.require_valid();
    if (p.p1 < 0.0 || p.p2 < 0.0 || (p.p1 == 0.0 && p.p2 == 0.0))
        throw DegeneratePriceError("rhs: invalid price state");
    return rhs_forced(p, m, delta_p_branch(p, m));
}

namespace {

struct LineGeom {
    double offset; // p2 = p1 + offset
    double s(const PriceState& p) const { return p.p2 - p.p1 - offset; }
};

Field eval_field(const PriceState& p, const ModelParams& m) {
    const RhsValue v = rhs(p, m);
    return {v.f1, v.f2};
}

PriceState advance(const PriceState& p, const ModelParams& m, double dt,
                   IntegrationMethod method) {
    if (method == IntegrationMethod::Euler) {
        const Field f = eval_field(p, m);
        return {p.p1 + f.f1 * dt, p.p2 + f.f2 * dt};
    }
    const auto clip = [](PriceState q) {
        q.p1 = std::max(q.p1, 0.0);
        q.p2 = std::max(q.p2, 0.0);
        return q;
    };
    const Field k1 = eval_field(p, m);
    const Field k2 = eval_field(clip({p.p1 + 0.5 * dt * k1.f1, p.p2 + 0.5 * dt * k1.f2}), m);
    const Field k3 = eval_field(clip({p.p1 + 0.5 * dt * k2.f1, p.p2 + 0.5 * dt * k2.f2}), m);
    const Field k4 = eval_field(clip({p.p1 + dt * k3.f1, p.p2 + dt * k3.f2}), m);
    return {p.p1 + dt / 6.0 * (k1.f1 + 2.0 * k2.f1 + 2.0 * k3.f1 + k4.f1),
            p.p2 + dt / 6.0 * (k1.f2 + 2.0 * k2.f2 + 2.0 * k3.f2 + k4.f2)};
}

// One-sided fields at a point on line p2 = p1 + offset. Side +: s > 0.
void one_sided(const PriceState& p, const ModelParams& m, double offset, Field& plus,
               Field& minus) {
    DeltaPBranch bplus, bminus;
    if (offset > 0.0) { // p2 = p1 + rho, i.e. dp = -rho
        bplus = DeltaPBranch::LtMinusRho;
        bminus = DeltaPBranch::Inside;
    } else { // p2 = p1 - rho, i.e. dp = +rho
        bplus = DeltaPBranch::Inside;
        bminus = DeltaPBranch::GtPlusRho;
    }
    const RhsValue vp = rhs_forced(p, m, bplus);
    const RhsValue vm = rhs_forced(p, m, bminus);
    plus = {vp.f1, vp.f2};
    minus = {vm.f1, vm.f2};
}

double normal_component(const Field& f) { return f.f2 - f.f1; } // grad s = (-1, 1)

} // namespace

ContinuousTrajectory integrate(const PriceState& p0, const ModelParams& m, double dt,
                               double horizon, IntegrationMethod method) {
    m.require_valid();
    if (dt <= 0.0 || horizon <= 0.0)
        throw PreconditionViolatedError("integrate: dt and horizon must be > 0");
    if (p0.p1 < 0.0 || p0.p2 < 0.0 || (p0.p1 == 0.0 && p0.p2 == 0.0))
        throw DegeneratePriceError("integrate: invalid initial prices");

    const LineGeom lines[2] = {{m.rho}, {-m.rho}};
    const double dt_min = dt * std::pow(2.0, -24);
    const double stat_tol = 1e-12 * std::max({1.0, p0.p1, p0.p2});

    ContinuousTrajectory traj;
    PriceState p = p0;
    double t = 0.0;
    bool sliding = false;
    int on_line = -1;

    const auto record = [&](bool slide) {
        ZoneLabel z{Zone::Boundary, "zero-price axis"};
        if (p.p1 > 0.0 && p.p2 > 0.0) {
            const bool oriented = p.p2 * m.q2 <= p.p1 * m.q1 + kEpsNum;
            z = oriented ? classify(p, m) : classify(swap_regions(p), swap_regions(m));
        }
        traj.samples.push_back({t, p, z, slide});
    };
    record(false);

    while (t < horizon - 1e-15) {
        double h = std::min(dt, horizon - t);

        if (sliding) {
            Field plus, minus;
            one_sided(p, m, lines[on_line].offset, plus, minus);
            const double np = normal_component(plus);
            const double nm = normal_component(minus);
            if (!(nm > 0.0 && np < 0.0)) {
                sliding = false; // field now leads away; leave along the outward side
                on_line = -1;
                continue;
            }
            const double lambda = nm / (nm - np);
            const Field fs{lambda * plus.f1 + (1.0 - lambda) * minus.f1,
                           lambda * plus.f2 + (1.0 - lambda) * minus.f2};
            if (std::hypot(fs.f1, fs.f2) < stat_tol) {
                traj.terminal = ContinuousTrajectory::Terminal::StationaryPoint;
                record(true);
                return traj;
            }
            p = {p.p1 + fs.f1 * h, p.p2 + fs.f2 * h};
            // project back onto the line to cancel normal drift
            const double c = -lines[on_line].s(p) / 2.0;
            p = {p.p1 - c, p.p2 + c};
            if (p.p1 < 0.0) p.p1 = 0.0;
            if (p.p2 < 0.0) p.p2 = 0.0;
            t += h;
            record(true);
            continue;
        }

        const Field f0 = eval_field(p, m);
        if (std::hypot(f0.f1, f0.f2) < stat_tol) {
            traj.terminal = ContinuousTrajectory::Terminal::StationaryPoint;
            return traj;
        }

        // a step may not cross more than one discontinuity line; halve until so
        PriceState pn;
        int crossings = 2;
        int which = -1;
        while (true) {
            pn = advance(p, m, h, method);
            crossings = 0;
            for (int i = 0; i < 2; ++i) {
                const double s0 = lines[i].s(p);
                const double s1 = lines[i].s(pn);
                if (std::abs(s0) > kEpsNum && s0 * s1 < 0.0) {
                    ++crossings;
                    which = i;
                }
            }
            if (crossings <= 1) break;
            if (h / 2.0 < dt_min)
                throw PreconditionViolatedError("integrate: dt underflow at a double crossing");
            h /= 2.0;
        }
        if (crossings == 1) {
            // bisect the substep length until the crossing time is pinned
            double lo = 0.0, hi = h;
            const double s0 = lines[which].s(p);
            for (int it = 0; it < 60 && hi - lo > 1e-10 * dt; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double smid = lines[which].s(advance(p, m, mid, method));
                (s0 * smid > 0.0 ? lo : hi) = mid;
            }
            pn = advance(p, m, hi, method);
            // land exactly on the line
            const double c = -lines[which].s(pn) / 2.0;
            pn = {pn.p1 - c, pn.p2 + c};
            t += hi;
            p = pn;
            Field plus, minus;
            one_sided(p, m, lines[which].offset, plus, minus);
            if (normal_component(minus) > 0.0 && normal_component(plus) < 0.0) {
                sliding = true;
                on_line = which;
            }
            record(sliding);
            continue;
        }

        if (pn.p1 < 0.0) pn.p1 = 0.0;
        if (pn.p2 < 0.0) pn.p2 = 0.0;
        t += h;
        p = pn;
        record(false);
    }
    return traj;
}

StationarySet stationary_set(const ModelParams& m, int resolution) {
    m.require_valid();
    if (resolution < 2) throw PreconditionViolatedError("stationary_set: resolution >= 2");
    const PriceSpaceLoci loci = price_space_loci(m);
    StationarySet set;
    set.E_tilde = {m.Y1 / m.q1, m.Y2 / m.q2};
    for (int i = 0; i < resolution; ++i) {
        const double u = static_cast<double>(i) / (resolution - 1);
        const double p2 = set.E_tilde.p2 + u * (loci.p2_star - set.E_tilde.p2);
        set.h3_points.push_back({h3(p2, m), p2});
        const double p1 = set.E_tilde.p1 + u * (loci.p1_star - set.E_tilde.p1);
        set.h4_points.push_back({p1, h4(p1, m)});
    }
    return set;
}

StabilityReport stability_probe(const PriceState& point, const ModelParams& m, double radius,
                                int n_probes, double horizon, double dt) {
    m.require_valid();
    if (radius <= 0.0 || n_probes < 1)
        throw PreconditionViolatedError("stability_probe: radius > 0 and n_probes >= 1");

    StabilityReport rep;
    constexpr double pi = 3.14159265358979323846;
    for (int i = 0; i < n_probes; ++i) {
        const double a = 2.0 * pi * i / n_probes;
        PriceState start{std::max(point.p1 + radius * std::cos(a), 1e-12),
                         std::max(point.p2 + radius * std::sin(a), 1e-12)};
        const ContinuousTrajectory tr = integrate(start, m, dt, horizon);
        for (const ContinuousSample& s : tr.samples)
            rep.max_excursion = std::max(
                rep.max_excursion, std::hypot(s.prices.p1 - point.p1, s.prices.p2 - point.p2));
        rep.limit_points.push_back(tr.samples.back().prices);
    }
    rep.lyapunov_evidence = rep.max_excursion <= 5.0 * radius;
    rep.asymptotic_evidence = true;
    for (const PriceState& lp : rep.limit_points) {
        if (std::hypot(lp.p1 - point.p1, lp.p2 - point.p2) > std::max(20.0 * dt * radius, 1e-7))
            rep.asymptotic_evidence = false;
    }
    return rep;
}

} // namespace bitrade
