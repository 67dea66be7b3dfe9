#pragma once
#include "bitrade/continuous.hpp"

#include <cstdint>
#include <vector>

namespace bitrade {

enum class ShockMode { Symmetric, PositiveOnly, NegativeOnly };

const char* to_string(ShockMode mode);

/// Multiplicative price noise: volatility scales per region plus the seed
/// that fully determines the path for fixed (dt, horizon).
struct NoiseSpec {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    std::uint64_t seed = 0;
    ShockMode shock_mode = ShockMode::Symmetric;
};

struct SamplePath {
    struct Point {
        double t = 0.0;
        PriceState prices;
    };
    std::vector<Point> samples;
    int reflections = 0; // times a price was reflected at zero
    double max_distance_from_start = 0.0;

    /// Fraction of samples within `radius` of the starting point.
    double fraction_within(double radius) const;
};

/// Explicit first-order scheme for the noisy price system: drift from the
/// deterministic field, diffusion sigma_i * p_i * dW_i with independent
/// Gaussian increments of variance dt. One-sided modes replace dW by +|dW|
/// or -|dW|. Prices are reflected at zero.
SamplePath euler_maruyama(const PriceState& p0, const ModelParams& m, const NoiseSpec& noise,
                          double dt, double horizon);

/// Drift of the rest point along a stationary locus under one-sided shocks:
/// every sample is projected onto the nearest locus point and the signed
/// arc displacement (positive toward E~) is accumulated.
struct DriftReport {
    double locus_drift = 0.0;    // net signed arc displacement, + toward E~
    double max_locus_dist = 0.0; // largest distance from the locus
    bool toward_E = false;
};

DriftReport one_sided_drift_experiment(const PriceState& p0, const ModelParams& m,
                                       const NoiseSpec& noise, double dt, double horizon);

} // namespace bitrade
