#pragma once
#include "bitrade/equilibrium.hpp"

#include <functional>
#include <vector>

namespace bitrade {

/// Right-hand side (dp1/dt, dp2/dt) of the continuous price system at a
/// state, with the zone/branch cell it came from.
struct RhsValue {
    double f1 = 0.0;
    double f2 = 0.0;
    ZoneLabel zone;
    DeltaPBranch branch = DeltaPBranch::Inside;
    bool swapped = false;
};

/// Cell-by-cell evaluation of the piecewise vector field. Positive prices;
/// zero-price axis states use the degenerate continuation field.
RhsValue rhs(const PriceState& p, const ModelParams& m);

enum class IntegrationMethod { Euler, Rk4 };

struct ContinuousSample {
    double t = 0.0;
    PriceState prices;
    ZoneLabel zone;
    bool sliding = false;
};

struct ContinuousTrajectory {
    std::vector<ContinuousSample> samples;
    enum class Terminal { Horizon, StationaryPoint } terminal = Terminal::Horizon;
};

/// Advance the state to `horizon` with fixed step `dt`. The integrator
/// bisects crossings of the discontinuity lines p2 = p1 +- rho; when both
/// one-sided fields point into such a line it switches to the sliding field
/// (the convex combination with zero normal component). Prices are clipped
/// at zero, where the axis is absorbing if the field points outward.
ContinuousTrajectory integrate(const PriceState& p0, const ModelParams& m, double dt,
                               double horizon, IntegrationMethod method = IntegrationMethod::Rk4);

/// Stationary set of the system: the point E~ = (Y1/q1, Y2/q2) plus the two
/// hyperbola branches h3 (from E~ to (0, p2*)) and h4 (from E~ to (p1*, 0)).
struct StationarySet {
    PriceState E_tilde;
    std::vector<PriceState> h3_points;
    std::vector<PriceState> h4_points;
};

StationarySet stationary_set(const ModelParams& m, int resolution);

/// Empirical stability evidence around a stationary point: integrate from
/// n_probes perturbed starts and report excursions and limit points.
struct StabilityReport {
    double max_excursion = 0.0;        // max distance from the probed point
    bool lyapunov_evidence = false;    // excursions stayed bounded by the probe scale
    bool asymptotic_evidence = false;  // every probe returned to the probed point
    std::vector<PriceState> limit_points;
};

StabilityReport stability_probe(const PriceState& point, const ModelParams& m, double radius,
                                int n_probes, double horizon = 40.0, double dt = 1e-3);

} // namespace bitrade
