#pragma once
#include "bitrade/model.hpp"
#include "bitrade/zones.hpp"

#include <string>

namespace bitrade {

/// One consumer's selected best reply, with the pre-selection solution set.
/// `first`/`second` are (alpha, beta) for consumer I or (gamma, delta) for
/// consumer II. The raw set is a segment or band described per component;
/// where the set is a band, the dependent component's interval is evaluated
/// at the selected value of the other one.
struct BestReply {
    double first = 0.0;
    double second = 0.0;
    struct Interval {
        double lo = 0.0;
        double hi = 0.0;
    };
    Interval raw_first;
    Interval raw_second;
    std::string selection_note; // "unique", "SR1", "SR2", "SR3"
};

/// Consumer I's best reply to consumer II's orders (only delta matters).
/// Handles the zero-price variants: p1 = 0 switches to the free-home-good
/// table, p2 = 0 reduces the foreign price to rho in the regular table.
BestReply best_reply_1(const StrategyProfile& opponent, const PriceState& p, const ModelParams& m);

/// Consumer II's best reply to consumer I's orders (only alpha matters).
BestReply best_reply_2(const StrategyProfile& opponent, const PriceState& p, const ModelParams& m);

/// Selected Nash equilibrium of the one-period game plus its context.
struct EquilibriumResult {
    StrategyProfile profile;
    ZoneLabel zone;
    DeltaPBranch branch = DeltaPBranch::Inside;
    Aggregates agg;
    bool degenerate = false; // one price is exactly zero
    bool swapped = false;    // solved on the mirrored economy to restore orientation
};

/// Closed-form selected NE for the current zone and price-gap branch.
/// Requires at most one zero price; the orientation p2*q2 < p1*q1 must hold
/// for positive prices (callers that cannot guarantee it pre-swap regions).
EquilibriumResult solve_nash(const PriceState& p, const ModelParams& m);

/// Grid-search differential-test oracle: discretizes both budget sets and
/// iterates simultaneous best responses until a fixed point or cycle.
struct BruteForceResult {
    StrategyProfile profile;
    double pay1 = 0.0;
    double pay2 = 0.0;
    bool converged = false; // false: stopped on a cycle or sweep limit
    int sweeps = 0;
    double diam1 = 0.0; // extent of consumer I's searched box (goods)
    double diam2 = 0.0;
};

BruteForceResult brute_force_nash(const PriceState& p, const ModelParams& m, int grid_n,
                                  int max_sweeps = 200);

} // namespace bitrade
