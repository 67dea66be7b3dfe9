#include "bitrade/sampler.hpp"

#include <cmath>

namespace bitrade {

const std::vector<Zone>& stratification_targets() {
    static const std::vector<Zone> targets = {
        Zone::III,  Zone::II_1, Zone::II_2, Zone::II_3, Zone::I_1,  Zone::I_2, Zone::I_3,
        Zone::IV_1, Zone::IV_2, Zone::Z1_1, Zone::Z1_2, Zone::Z1_3, Zone::Z1_4};
    return targets;
}

namespace {

double uniform_in(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

enum class Quadrant { I, II, III, IV };

Quadrant quadrant_of(Zone z) {
    switch (z) {
        case Zone::III: return Quadrant::III;
        case Zone::II_1:
        case Zone::II_2:
        case Zone::II_3: return Quadrant::II;
        case Zone::IV_1:
        case Zone::IV_2: return Quadrant::IV;
        default: return Quadrant::I;
    }
}

bool needs_wide_case(Zone z) { // Z1_* labels need p2'*q2 > p1*q1
    return z == Zone::Z1_1 || z == Zone::Z1_2 || z == Zone::Z1_3 || z == Zone::Z1_4;
}

bool needs_narrow_case(Zone z) { // I_* labels need p2'*q2 < p1*q1
    return z == Zone::I_1 || z == Zone::I_2 || z == Zone::I_3;
}

Instance propose(Zone target, Rng& rng) {
    Instance in;
    for (;;) {
        in.params.rho = uniform_in(rng, 0.05, 0.8);
        in.params.q1 = uniform_in(rng, 0.5, 3.0);
        in.params.q2 = uniform_in(rng, 0.5, 3.0);
        in.prices.p1 = uniform_in(rng, 0.3, 2.5);
        in.prices.p2 = uniform_in(rng, 0.3, 2.5);
        const double nls1 = in.prices.p1 * in.params.q1;
        const double nls2 = in.prices.p2 * in.params.q2;
        if (nls2 >= nls1 - 1e-6) continue;
        const double wide = (in.prices.p2 + in.params.rho) * in.params.q2;
        if (needs_wide_case(target) && wide <= nls1 + 1e-6) continue;
        if (needs_narrow_case(target) && wide >= nls1 - 1e-6) continue;
        break;
    }
    const double nls1 = in.prices.p1 * in.params.q1;
    const double nls2 = in.prices.p2 * in.params.q2;
    const Quadrant q = quadrant_of(target);
    const double lo = 0.08, hi = 0.97, ric_lo = 1.02, ric_hi = 2.2;
    switch (q) {
        case Quadrant::III:
            in.params.Y1 = nls1 * uniform_in(rng, ric_lo, ric_hi);
            in.params.Y2 = nls2 * uniform_in(rng, ric_lo, ric_hi);
            break;
        case Quadrant::II:
            in.params.Y1 = nls1 * uniform_in(rng, lo, hi);
            in.params.Y2 = nls2 * uniform_in(rng, ric_lo, 2.8);
            break;
        case Quadrant::IV:
            in.params.Y1 = nls1 * uniform_in(rng, ric_lo, 2.8);
            in.params.Y2 = nls2 * uniform_in(rng, lo, hi);
            break;
        case Quadrant::I:
            in.params.Y1 = nls1 * uniform_in(rng, lo, hi);
            in.params.Y2 = nls2 * uniform_in(rng, lo, hi);
            break;
    }
    return in;
}

} // namespace

Instance sample_zone(Zone target, Rng& rng, int max_attempts) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        const Instance in = propose(target, rng);
        const ZoneLabel label = classify(in.prices, in.params);
        if (label.zone == target) return in;
    }
    throw PreconditionViolatedError(std::string("sample_zone: no hit for zone ") +
                                    to_string(target));
}

Instance sample_any(Rng& rng, int max_attempts) {
    const std::vector<Zone>& targets = stratification_targets();
    const Zone z = targets[rng.next_u64() % targets.size()];
    return sample_zone(z, rng, max_attempts);
}

} // namespace bitrade
