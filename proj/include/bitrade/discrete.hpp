#pragma once
#include "bitrade/equilibrium.hpp"

#include <optional>
#include <vector>

namespace bitrade {

/// One price change applied after a period's trade.
struct AdjustmentEvent {
    int region = 0; // 1 or 2
    enum class Direction { Up, Down } direction = Direction::Down;
    double old_price = 0.0;
    double new_price = 0.0;
    enum class Rule { PriceDown, PriceUp } rule = Rule::PriceDown;
};

/// Terminal behaviour of the adjustment process.
struct SteadyStateClass {
    enum class Kind {
        TypeE,        // both markets clear at p_i = Y_i / q_i
        L3,           // rests on the l3 line (region 1 absorbs 2's surplus value)
        L4,           // rests on the l4 line
        DegenerateL1, // p2 = 0, p1 tends to the closed-form limit
        DegenerateL2, // p1 = 0, p2 tends to the closed-form limit
        DegenerateL3, // infinite contraction of p2 toward a positive limit
        DegenerateL4, // infinite contraction of p1 toward a positive limit
        Unresolved,
    };
    Kind kind = Kind::Unresolved;
    double limit = 0.0; // p1_inf / p2_inf / k for the degenerate kinds
    int max_steps = 0;  // set for Unresolved
};

const char* to_string(SteadyStateClass::Kind k);

struct TrajectoryRecord {
    int t = 0;
    PriceState prices;
    EquilibriumResult equilibrium;
    std::vector<AdjustmentEvent> events; // events that produced the NEXT state
};

struct Trajectory {
    std::vector<TrajectoryRecord> records;
    SteadyStateClass classification;
    std::optional<int> converged_at; // unset for provably infinite processes
};

/// One period: solve the current game, then apply at most one price rule per
/// region (down when supply is unsold, up when residual income exceeds the
/// value of local supply; zero consumption sends the price to exactly 0).
struct StepResult {
    PriceState next;
    EquilibriumResult equilibrium;
    std::vector<AdjustmentEvent> events;
};

StepResult step(const PriceState& p, const ModelParams& m);

/// Iterate `step` until prices move less than `tol` (sum of absolute
/// changes) or `max_steps` is reached, classifying the terminal or limiting
/// state. Provably infinite contractions are recognized analytically and
/// reported with their closed-form limits.
Trajectory iterate(const PriceState& p0, const ModelParams& m, int max_steps = 100000,
                   double tol = 1e-10);

/// Contraction map of p1 in the spill-to-region-1 regime (p2 fixed at its
/// start value).
double g_map(double x, const PriceState& p0, const ModelParams& m);

/// Contraction map of p1 in the p2 = 0 regime.
double h_map(double x, const ModelParams& m);

/// Fixed point of g_map: the positive limit of the infinite p1 contraction.
double limit_k(const PriceState& p0, const ModelParams& m);

/// Fixed point of h_map; coincides with the vertical stationary line p1*.
double p1_infinity(const ModelParams& m);

/// Number of p1 contractions after which the price gap crosses -rho and the
/// equilibrium switches branch. Requires the finite-switch regime
/// k < p2_0 - rho < p1_0.
int switch_steps(const PriceState& p0, const ModelParams& m);

} // namespace bitrade
