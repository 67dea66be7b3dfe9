#pragma once
#include "bitrade/errors.hpp"

namespace bitrade {

// Absolute tolerance for equality/feasibility comparisons on money and goods.
inline constexpr double kEpsNum = 1e-9;

/// Exogenous constants of the two-region economy. Region i receives money
/// income Yi each period and supplies a fixed quantity qi of its local good;
/// rho is the per-unit shipping cost between regions.
struct ModelParams {
    double Y1 = 0.0;
    double Y2 = 0.0;
    double q1 = 0.0;
    double q2 = 0.0;
    double rho = 0.0;

    bool valid() const {
        return Y1 > 0.0 && Y2 > 0.0 && q1 > 0.0 && q2 > 0.0 && rho > 0.0;
    }
    void require_valid() const {
        if (!valid()) throw DomainError("ModelParams: all of Y1,Y2,q1,q2,rho must be > 0");
    }
};

/// Local prices (p1, p2) at one time index/instant.
struct PriceState {
    double p1 = 0.0;
    double p2 = 0.0;
};

// Delivered prices: what a consumer pays per unit shipped from the other region.
inline double p1_prime(const PriceState& p, const ModelParams& m) { return p.p1 + m.rho; }
inline double p2_prime(const PriceState& p, const ModelParams& m) { return p.p2 + m.rho; }

/// Orders (alpha, beta) of consumer I and (gamma, delta) of consumer II.
/// alpha/delta are home-region orders, beta/gamma foreign-region orders.
struct StrategyProfile {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
};

/// Consumption and residual-income accounting for one period.
struct Aggregates {
    double q1_cons = 0.0;
    double q2_cons = 0.0;
    double Y1_res = 0.0;
    double Y2_res = 0.0;
    double Y1_cons = 0.0;
    double Y2_cons = 0.0;
};

/// Supply/resource comparison terms: real and nominal local supply, nominal
/// financial resources, total real financial resources and total real supply,
/// each valued at one region's delivered prices.
struct TheoremAggregates {
    double RLS1 = 0.0, RLS2 = 0.0;
    double NLS1 = 0.0, NLS2 = 0.0;
    double NFR1 = 0.0, NFR2 = 0.0;
    double TRFR1 = 0.0, TRFR2 = 0.0;
    double T1 = 0.0, T2 = 0.0;
};

/// Budget feasibility of a profile at given prices (within kEpsNum).
bool feasible(const StrategyProfile& s, const PriceState& p, const ModelParams& m);

/// Consumer I's payoff: home consumption capped by supply plus foreign
/// consumption capped by what consumer II leaves behind.
double payoff1(const StrategyProfile& s, const ModelParams& m);

/// Consumer II's payoff, symmetric to payoff1 under local dominance.
double payoff2(const StrategyProfile& s, const ModelParams& m);

/// Per-period accounting for a feasible profile. Consumed quantities are the
/// delivered amounts under local dominance; a zero-price region reports its
/// full supply as consumed (free disposal).
Aggregates aggregates(const StrategyProfile& s, const PriceState& p, const ModelParams& m);

/// The ten comparison terms; requires both prices strictly positive.
TheoremAggregates theorem_aggregates(const PriceState& p, const ModelParams& m);

/// Mirror the economy: swap region labels 1 and 2 everywhere.
ModelParams swap_regions(const ModelParams& m);
PriceState swap_regions(const PriceState& p);
StrategyProfile swap_regions(const StrategyProfile& s);

} // namespace bitrade
