#pragma once
#include "bitrade/rng.hpp"
#include "bitrade/zones.hpp"

#include <vector>

namespace bitrade {

struct Instance {
    ModelParams params;
    PriceState prices;
};

/// The non-degenerate subzone labels a stratified sweep cycles through.
const std::vector<Zone>& stratification_targets();

/// Rejection-sample an instance whose classification equals `target`.
/// Deterministic given the generator state; throws after `max_attempts`.
Instance sample_zone(Zone target, Rng& rng, int max_attempts = 20000);

/// Any oriented instance (classification unconstrained).
Instance sample_any(Rng& rng, int max_attempts = 20000);

} // namespace bitrade
