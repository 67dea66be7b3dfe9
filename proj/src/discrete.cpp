#include "bitrade/discrete.hpp"

#include <cmath>
#include <stdexcept>

namespace bitrade {

const char* to_string(SteadyStateClass::Kind k) {
    using K = SteadyStateClass::Kind;
    switch (k) {
        case K::TypeE: return "type-E";
        case K::L3: return "l3";
        case K::L4: return "l4";
        case K::DegenerateL1: return "degenerate-l1";
        case K::DegenerateL2: return "degenerate-l2";
        case K::DegenerateL3: return "degenerate-l3";
        case K::DegenerateL4: return "degenerate-l4";
        case K::Unresolved: return "unresolved";
    }
    return "?";
}

namespace {

// Solve the period game, mirroring the economy first if the canonical
// orientation fails for positive prices.
EquilibriumResult solve_oriented(const PriceState& p, const ModelParams& m) {
    if (p.p1 > 0.0 && p.p2 > 0.0 && p.p2 * m.q2 > p.p1 * m.q1 + kEpsNum) {
        EquilibriumResult mirrored = solve_nash(swap_regions(p), swap_regions(m));
        EquilibriumResult res;
        res.profile = swap_regions(mirrored.profile);
        res.zone = mirrored.zone;
        res.branch = delta_p_branch(p, m);
        res.degenerate = mirrored.degenerate;
        res.swapped = true;
        res.agg = aggregates(res.profile, p, m);
        return res;
    }
    return solve_nash(p, m);
}

void apply_rules(int region, double price, double q, double q_cons, double y_res,
                 PriceState& next, std::vector<AdjustmentEvent>& events) {
    const bool unsold = q_cons < q - kEpsNum;
    const bool unspent = y_res > price * q + kEpsNum;
    if (unsold && unspent)
        throw std::logic_error("step: both price rules fired in one region");
    double np = price;
    AdjustmentEvent::Rule rule = AdjustmentEvent::Rule::PriceDown;
    if (unsold) {
        np = q_cons <= kEpsNum ? 0.0 : price * q_cons / q;
    } else if (unspent) {
        np = y_res / q;
        rule = AdjustmentEvent::Rule::PriceUp;
    }
    if (np != price) {
        events.push_back({region,
                          np < price ? AdjustmentEvent::Direction::Down
                                     : AdjustmentEvent::Direction::Up,
                          price, np, rule});
        (region == 1 ? next.p1 : next.p2) = np;
    }
}

} // namespace

StepResult step(const PriceState& p, const ModelParams& m) {
    m.require_valid();
    if (p.p1 < 0.0 || p.p2 < 0.0 || (p.p1 == 0.0 && p.p2 == 0.0))
        throw DegeneratePriceError("step: invalid price state");

    StepResult r;
    r.equilibrium = solve_oriented(p, m);
    r.next = p;
    const Aggregates& a = r.equilibrium.agg;
    apply_rules(1, p.p1, m.q1, a.q1_cons, a.Y1_res, r.next, r.events);
    apply_rules(2, p.p2, m.q2, a.q2_cons, a.Y2_res, r.next, r.events);
    return r;
}

double g_map(double x, const PriceState& p0, const ModelParams& m) {
    if (x < 0.0) throw DomainError("g_map: requires x >= 0");
    return (m.Y1 + (m.Y2 - p0.p2 * m.q2) * x / (x + m.rho)) / m.q1;
}

double h_map(double x, const ModelParams& m) {
    if (x < 0.0) throw DomainError("h_map: requires x >= 0");
    return (m.Y1 + x / (x + m.rho) * m.Y2) / m.q1;
}

double limit_k(const PriceState& p0, const ModelParams& m) {
    m.require_valid();
    const double c = m.rho * m.q1 - m.Y1 - m.Y2 + p0.p2 * m.q2;
    return (std::sqrt(c * c + 4.0 * m.q1 * m.rho * m.Y1) - c) / (2.0 * m.q1);
}

double p1_infinity(const ModelParams& m) {
    m.require_valid();
    const double b = m.Y1 + m.Y2 - m.rho * m.q1;
    return (b + std::sqrt(b * b + 4.0 * m.rho * m.q1 * m.Y1)) / (2.0 * m.q1);
}

int switch_steps(const PriceState& p0, const ModelParams& m) {
    m.require_valid();
    const double target = p0.p2 - m.rho;
    if (target >= p0.p1)
        throw PreconditionViolatedError("switch_steps: requires p2_0 - rho < p1_0");
    if (target <= limit_k(p0, m))
        throw PreconditionViolatedError(
            "switch_steps: the contraction never crosses p2_0 - rho (infinite regime)");
    double x = p0.p1;
    int s = 0;
    while (x > target) {
        x = g_map(x, p0, m);
        ++s;
    }
    return s;
}

namespace {

struct PendingLimit {
    SteadyStateClass::Kind kind = SteadyStateClass::Kind::Unresolved;
    double limit = 0.0;
    bool active = false;
};

// Recognize the provably infinite contractions from the current state.
PendingLimit detect_infinite(const PriceState& p, const ModelParams& m,
                             const EquilibriumResult& eq) {
    PendingLimit out;
    if (p.p2 == 0.0 && p.p1 > 0.0) {
        out = {SteadyStateClass::Kind::DegenerateL1, p1_infinity(m), true};
        return out;
    }
    if (p.p1 == 0.0 && p.p2 > 0.0) {
        out = {SteadyStateClass::Kind::DegenerateL2, p1_infinity(swap_regions(m)), true};
        return out;
    }
    if (p.p1 <= 0.0 || p.p2 <= 0.0) return out;

    // Contraction of one price toward a positive limit: the spill NE keeps
    // feeding the other region's surplus income into a shrinking price.
    const bool oriented = p.p2 * m.q2 <= p.p1 * m.q1 + kEpsNum;
    const PriceState po = oriented ? p : swap_regions(p);
    const ModelParams mo = oriented ? m : swap_regions(m);
    const ZoneLabel zone = eq.swapped == !oriented ? eq.zone : classify(po, mo);
    const bool spill_zone = zone.zone == Zone::II_1 || zone.zone == Zone::II_2;
    if (spill_zone && ge_minus_rho(delta_p_branch(po, mo)) &&
        mo.Y2 > po.p2 * mo.q2 + kEpsNum) {
        const double k = limit_k(po, mo);
        if (po.p2 - mo.rho <= k + kEpsNum) {
            out.kind = oriented ? SteadyStateClass::Kind::DegenerateL4
                                : SteadyStateClass::Kind::DegenerateL3;
            out.limit = k;
            out.active = true;
        }
    }
    // The symmetric contraction arises natively in zone IV-2.
    if (zone.zone == Zone::IV_2 && le_plus_rho(delta_p_branch(po, mo)) &&
        mo.Y1 > po.p1 * mo.q1 + kEpsNum) {
        const double k = limit_k(swap_regions(po), swap_regions(mo));
        if (po.p1 - mo.rho <= k + kEpsNum) {
            out.kind = oriented ? SteadyStateClass::Kind::DegenerateL3
                                : SteadyStateClass::Kind::DegenerateL4;
            out.limit = k;
            out.active = true;
        }
    }
    return out;
}

SteadyStateClass classify_settled(const PriceState& p, const ModelParams& m,
                                  const PendingLimit& pending, double tol) {
    SteadyStateClass c;
    const double scale = std::max({1.0, p.p1, p.p2});
    const double near = std::max(1e4 * tol, 1e3 * kEpsNum) * scale;
    if (p.p2 == 0.0) {
        c.kind = SteadyStateClass::Kind::DegenerateL1;
        c.limit = p1_infinity(m);
        return c;
    }
    if (p.p1 == 0.0) {
        c.kind = SteadyStateClass::Kind::DegenerateL2;
        c.limit = p1_infinity(swap_regions(m));
        return c;
    }
    if (pending.active) {
        c.kind = pending.kind;
        c.limit = pending.limit;
        return c;
    }
    if (std::abs(p.p1 - m.Y1 / m.q1) <= near && std::abs(p.p2 - m.Y2 / m.q2) <= near) {
        c.kind = SteadyStateClass::Kind::TypeE;
        return c;
    }
    const LineValues v = line_values(p, m);
    if (std::abs(v.l4) <= near) {
        c.kind = SteadyStateClass::Kind::L4;
        return c;
    }
    if (std::abs(v.l3) <= near) {
        c.kind = SteadyStateClass::Kind::L3;
        return c;
    }
    c.kind = SteadyStateClass::Kind::Unresolved;
    return c;
}

} // namespace

Trajectory iterate(const PriceState& p0, const ModelParams& m, int max_steps, double tol) {
    m.require_valid();
    if (max_steps < 1) throw PreconditionViolatedError("iterate: max_steps must be >= 1");
    if (tol <= 0.0) throw PreconditionViolatedError("iterate: tol must be > 0");

    Trajectory traj;
    PriceState p = p0;
    PendingLimit pending;

    for (int t = 0; t <= max_steps; ++t) {
        StepResult s = step(p, m);
        traj.records.push_back({t, p, s.equilibrium, s.events});

        const PendingLimit det = detect_infinite(p, m, s.equilibrium);
        if (det.active) pending = det;

        const double moved = std::abs(s.next.p1 - p.p1) + std::abs(s.next.p2 - p.p2);
        if (moved < tol) {
            traj.classification = classify_settled(p, m, pending, tol);
            const bool finite = traj.classification.kind == SteadyStateClass::Kind::TypeE ||
                                traj.classification.kind == SteadyStateClass::Kind::L3 ||
                                traj.classification.kind == SteadyStateClass::Kind::L4;
            if (finite) traj.converged_at = t;
            return traj;
        }
        p = s.next;
    }

    if (pending.active) {
        traj.classification.kind = pending.kind;
        traj.classification.limit = pending.limit;
    } else {
        traj.classification.kind = SteadyStateClass::Kind::Unresolved;
        traj.classification.max_steps = max_steps;
    }
    return traj;
}

} // namespace bitrade
