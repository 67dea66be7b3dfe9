#include "bitrade/model.hpp"

#include <algorithm>
#include <cmath>

namespace bitrade {

bool feasible(const StrategyProfile& s, const PriceState& p, const ModelParams& m) {
    const double spend1 = s.alpha * p.p1 + s.beta * p2_prime(p, m);
    const double spend2 = s.gamma * p1_prime(p, m) + s.delta * p.p2;
    return spend1 <= m.Y1 + kEpsNum && spend2 <= m.Y2 + kEpsNum;
}

double payoff1(const StrategyProfile& s, const ModelParams& m) {
    return std::min(s.alpha, m.q1) + std::min(s.beta, std::max(0.0, m.q2 - s.delta));
}

double payoff2(const StrategyProfile& s, const ModelParams& m) {
    return std::min(s.delta, m.q2) + std::min(s.gamma, std::max(0.0, m.q1 - s.alpha));
}

Aggregates aggregates(const StrategyProfile& s, const PriceState& p, const ModelParams& m) {
    if (!feasible(s, p, m)) throw InfeasibleProfileError("aggregates: profile violates a budget");
    Aggregates a;
    // Delivered consumption under local dominance; orders beyond supply are cut.
    a.q1_cons = std::min(s.alpha + s.gamma, m.q1);
    a.q2_cons = std::min(s.beta + s.delta, m.q2);
    // Free disposal: a zero-price region hands out its whole supply.
    if (p.p1 == 0.0) a.q1_cons = m.q1;
    if (p.p2 == 0.0) a.q2_cons = m.q2;
    a.Y1_res = m.Y1 - p2_prime(p, m) * s.beta;
    a.Y2_res = m.Y2 - p1_prime(p, m) * s.gamma;
    a.Y1_cons = p.p1 * s.alpha + p2_prime(p, m) * s.beta;
    a.Y2_cons = p1_prime(p, m) * s.gamma + p.p2 * s.delta;
    return a;
}

TheoremAggregates theorem_aggregates(const PriceState& p, const ModelParams& m) {
    if (p.p1 <= 0.0 || p.p2 <= 0.0)
        throw DegeneratePriceError("theorem_aggregates: undefined at a zero price");
    TheoremAggregates t;
    t.RLS1 = m.q1;
    t.RLS2 = m.q2;
    t.NLS1 = p.p1 * m.q1;
    t.NLS2 = p.p2 * m.q2;
    t.NFR1 = m.Y1;
    t.NFR2 = m.Y2;
    t.TRFR1 = m.Y1 / p.p1 + m.Y2 / p1_prime(p, m);
    t.TRFR2 = m.Y1 / p2_prime(p, m) + m.Y2 / p.p2;
    t.T1 = t.NLS2 / p1_prime(p, m) + m.q1;
    t.T2 = t.NLS1 / p2_prime(p, m) + m.q2;
    return t;
}

ModelParams swap_regions(const ModelParams& m) { return {m.Y2, m.Y1, m.q2, m.q1, m.rho}; }
PriceState swap_regions(const PriceState& p) { return {p.p2, p.p1}; }
StrategyProfile swap_regions(const StrategyProfile& s) { return {s.delta, s.gamma, s.beta, s.alpha}; }

} // namespace bitrade
