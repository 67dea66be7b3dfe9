#include "bitrade/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace bitrade {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

BestReply make_unique(double a, double b) {
    BestReply r;
    r.first = a;
    r.second = b;
    r.raw_first = {a, a};
    r.raw_second = {b, b};
    r.selection_note = "unique";
    return r;
}

// Free home good: any order >= q1 is payoff-equivalent, the actual amount
// received is the full supply.
BestReply reply1_home_free(double remaining2, double cap_foreign, const ModelParams& m) {
    BestReply r;
    r.first = m.q1;
    r.raw_first = {m.q1, kInf};
    if (remaining2 <= kEpsNum) {
        r.second = 0.0;
        r.raw_second = {0.0, cap_foreign};
    } else if (remaining2 <= cap_foreign + kEpsNum) {
        r.second = remaining2;
        r.raw_second = {remaining2, cap_foreign};
    } else {
        r.second = cap_foreign;
        r.raw_second = {cap_foreign, cap_foreign};
    }
    r.selection_note = "SR3";
    return r;
}

} // namespace

BestReply best_reply_1(const StrategyProfile& opponent, const PriceState& p, const ModelParams& m) {
    m.require_valid();
    if (opponent.gamma < 0.0 || opponent.delta < 0.0)
        throw DomainError("best_reply_1: opponent orders must be >= 0");
    if (p.p1 < 0.0 || p.p2 < 0.0 || (p.p1 == 0.0 && p.p2 == 0.0))
        throw DegeneratePriceError("best_reply_1: at most one price may be zero");

    const double p2p = p2_prime(p, m);
    const double remaining2 = m.q2 - opponent.delta; // foreign supply left after II's home order

    if (p.p1 == 0.0) return reply1_home_free(remaining2, m.Y1 / p2p, m);

    const double afford_home = m.Y1 / p.p1;     // max home order on own budget
    const double afford_foreign = m.Y1 / p2p;   // max foreign order on own budget
    const bool rich = afford_home > m.q1 + kEpsNum;
    const DeltaPBranch rel = delta_p_branch(p, m); // home vs delivered foreign price

    BestReply r;

    if (remaining2 <= kEpsNum) {
        // Nothing left abroad: spend at home only.
        if (rich) {
            r.first = m.q1;
            r.second = 0.0;
            r.raw_first = {m.q1, afford_home};
            r.raw_second = {0.0, (m.Y1 - p.p1 * m.q1) / p2p};
            r.selection_note = "SR1";
            return r;
        }
        return make_unique(afford_home, 0.0);
    }

    if (remaining2 <= afford_foreign + kEpsNum) {
        // The leftover abroad is affordable in full.
        const double alpha_budget = (m.Y1 - p2p * remaining2) / p.p1; // home order exhausting income
        if (rich) {
            if (m.q1 < alpha_budget - kEpsNum) {
                // Can take all of both: minimize spending at (q1, leftover).
                r.first = m.q1;
                r.second = remaining2;
                r.raw_first = {m.q1, alpha_budget};
                r.raw_second = {remaining2, (m.Y1 - p.p1 * m.q1) / p2p};
                r.selection_note = "SR1";
                return r;
            }
            // Budget binds before home supply does.
            switch (rel) {
                case DeltaPBranch::GtPlusRho:
                    return make_unique(alpha_budget, remaining2);
                case DeltaPBranch::EqPlusRho:
                    r.first = m.q1;
                    r.second = (m.Y1 - p.p1 * m.q1) / p2p;
                    r.raw_first = {alpha_budget, m.q1};
                    r.raw_second = {r.second, r.second};
                    r.selection_note = "SR2";
                    return r;
                default:
                    return make_unique(m.q1, (m.Y1 - p.p1 * m.q1) / p2p);
            }
        }
        switch (rel) {
            case DeltaPBranch::GtPlusRho:
                return make_unique(alpha_budget, remaining2);
            case DeltaPBranch::EqPlusRho:
                r.first = afford_home;
                r.second = 0.0;
                r.raw_first = {alpha_budget, afford_home};
                r.raw_second = {0.0, 0.0};
                r.selection_note = "SR2";
                return r;
            default:
                return make_unique(afford_home, 0.0);
        }
    }

    // More left abroad than the whole income can buy.
    if (rich) {
        switch (rel) {
            case DeltaPBranch::GtPlusRho:
                return make_unique(0.0, afford_foreign);
            case DeltaPBranch::EqPlusRho:
                r.first = m.q1;
                r.second = (m.Y1 - p.p1 * m.q1) / p2p;
                r.raw_first = {0.0, m.q1};
                r.raw_second = {r.second, r.second};
                r.selection_note = "SR2";
                return r;
            default:
                return make_unique(m.q1, (m.Y1 - p.p1 * m.q1) / p2p);
        }
    }
    switch (rel) {
        case DeltaPBranch::GtPlusRho:
            return make_unique(0.0, afford_foreign);
        case DeltaPBranch::EqPlusRho:
            r.first = afford_home;
            r.second = 0.0;
            r.raw_first = {0.0, afford_home};
            r.raw_second = {0.0, 0.0};
            r.selection_note = "SR2";
            return r;
        default:
            return make_unique(afford_home, 0.0);
    }
}

BestReply best_reply_2(const StrategyProfile& opponent, const PriceState& p, const ModelParams& m) {
    // Consumer II is consumer I of the mirrored economy.
    const BestReply mirrored =
        best_reply_1(swap_regions(opponent), swap_regions(p), swap_regions(m));
    BestReply r;
    r.first = mirrored.second;  // gamma
    r.second = mirrored.first;  // delta
    r.raw_first = mirrored.raw_second;
    r.raw_second = mirrored.raw_first;
    r.selection_note = mirrored.selection_note;
    return r;
}

namespace {

double clamp0(double x) { return x > 0.0 ? x : 0.0; }

// Closed-form NE for positive, orientation-respecting prices.
StrategyProfile ne_by_zone(Zone zone, DeltaPBranch branch, const PriceState& p,
                           const ModelParams& m) {
    const double p1p = p1_prime(p, m);
    const double p2p = p2_prime(p, m);
    const double home1 = m.Y1 / p.p1; // income-exhausting home orders
    const double home2 = m.Y2 / p.p2;

    const auto mid = [&] { return StrategyProfile{home1, 0.0, 0.0, home2}; };
    const auto reach_into_1 = [&] {
        // II absorbs region 1's residual supply; his home price funds the rest.
        const double g = clamp0(m.q1 - home1);
        return StrategyProfile{home1, 0.0, g, clamp0((m.Y2 - p1p * g) / p.p2)};
    };
    const auto reach_into_2 = [&] {
        const double b = clamp0(m.q2 - home2);
        return StrategyProfile{clamp0((m.Y1 - p2p * b) / p.p1), b, 0.0, home2};
    };
    const auto spill_to_1 = [&] {
        return StrategyProfile{home1, 0.0, clamp0((m.Y2 - p.p2 * m.q2) / p1p), m.q2};
    };
    const auto split_home_1 = [&] { return StrategyProfile{home1, 0.0, m.Y2 / p1p, 0.0}; };
    const auto split_home_2 = [&] { return StrategyProfile{0.0, m.Y1 / p2p, 0.0, home2}; };

    switch (zone) {
        case Zone::III:
            return {m.q1, 0.0, 0.0, m.q2};
        case Zone::II_3:
            return {home1, 0.0, clamp0(m.q1 - home1), m.q2};
        case Zone::II_2:
            return ge_minus_rho(branch) ? spill_to_1() : reach_into_1();
        case Zone::II_1:
            return ge_minus_rho(branch) ? spill_to_1() : split_home_1();
        case Zone::I_1:
        case Zone::Z1_4:
            if (inside_closed(branch)) return mid();
            return branch == DeltaPBranch::LtMinusRho ? reach_into_1() : reach_into_2();
        case Zone::I_2:
            if (inside_closed(branch)) return mid();
            return branch == DeltaPBranch::LtMinusRho ? split_home_1() : reach_into_2();
        case Zone::I_3:
            if (inside_closed(branch)) return mid();
            return branch == DeltaPBranch::LtMinusRho ? split_home_1() : split_home_2();
        case Zone::Z1_3:
            if (inside_closed(branch)) return mid();
            return branch == DeltaPBranch::LtMinusRho ? split_home_1() : reach_into_2();
        case Zone::Z1_2:
            if (inside_closed(branch)) return mid();
            return branch == DeltaPBranch::LtMinusRho ? reach_into_1() : split_home_2();
        case Zone::Z1_1:
            if (inside_closed(branch)) return mid();
            return branch == DeltaPBranch::LtMinusRho ? split_home_1() : split_home_2();
        case Zone::IV_1:
            return {m.q1, clamp0(m.q2 - home2), 0.0, home2};
        case Zone::IV_2:
            return le_plus_rho(branch)
                       ? StrategyProfile{m.q1, clamp0((m.Y1 - p.p1 * m.q1) / p2p), 0.0, home2}
                       : reach_into_2();
        default:
            throw std::logic_error("ne_by_zone: unhandled zone");
    }
}

// Zone for solving when classify() reports an ambiguous corner: fall back to
// the basic-case sublabels, which give the same selected NE at the tie.
Zone effective_zone(const ZoneLabel& label, const PriceState& p, const ModelParams& m) {
    if (label.zone != Zone::Boundary) return label.zone;
    const LineValues v = line_values(p, m);
    const bool rich1 = m.Y1 >= p.p1 * m.q1 - kEpsNum;
    const bool rich2 = m.Y2 >= p.p2 * m.q2 - kEpsNum;
    if (rich1 && rich2) return Zone::III;
    if (!rich1 && rich2) return v.l4 >= -kEpsNum ? Zone::II_3 : (v.l1 >= -kEpsNum ? Zone::II_2 : Zone::II_1);
    if (rich1 && !rich2) return v.l3 >= -kEpsNum ? Zone::IV_1 : Zone::IV_2;
    if (v.l1 >= -kEpsNum) return Zone::I_1;
    return v.l2 >= -kEpsNum ? Zone::I_2 : Zone::I_3;
}

} // namespace

EquilibriumResult solve_nash(const PriceState& p, const ModelParams& m) {
    m.require_valid();
    if (p.p1 < 0.0 || p.p2 < 0.0) throw DomainError("solve_nash: negative price");
    if (p.p1 == 0.0 && p.p2 == 0.0)
        throw DegeneratePriceError("solve_nash: both prices are zero");

    EquilibriumResult res;
    res.branch = delta_p_branch(p, m);

    if (p.p2 == 0.0) {
        // Region 2's good is free: II takes all of it, I spends at home only,
        // II's income goes to region 1's residual supply.
        const double p1p = p1_prime(p, m);
        const double alpha = std::min(m.q1, m.Y1 / p.p1);
        const double gamma = std::clamp(m.q1 - alpha, 0.0, m.Y2 / p1p);
        res.profile = {alpha, 0.0, gamma, m.q2};
        res.degenerate = true;
        const double slack = p.p1 * m.q1 - (m.Y1 + (p.p1 / p1p) * m.Y2);
        if (m.Y1 < p.p1 * m.q1 - kEpsNum && slack > kEpsNum) {
            res.zone = {Zone::DegenerateII_1};
        } else {
            res.zone = {Zone::Boundary, slack >= -kEpsNum ? "p2=0 at the joint budget line"
                                                          : "p2=0 above the joint budget line"};
        }
    } else if (p.p1 == 0.0) {
        EquilibriumResult mirrored = solve_nash(swap_regions(p), swap_regions(m));
        res.profile = swap_regions(mirrored.profile);
        res.degenerate = true;
        res.swapped = true;
        res.zone = {Zone::Boundary, "p1=0 (mirrored: " + std::string(to_string(mirrored.zone.zone)) + ")"};
    } else {
        if (p.p2 * m.q2 > p.p1 * m.q1 + kEpsNum)
            throw OrientationViolatedError("solve_nash: p2*q2 > p1*q1");
        res.zone = classify(p, m);
        res.profile = ne_by_zone(effective_zone(res.zone, p, m), res.branch, p, m);
    }

    res.agg = aggregates(res.profile, p, m);

    // A rich region-1 consumer must never leave home supply on the table
    // while his order is interior.
    if (std::abs(res.profile.delta - m.q2) <= kEpsNum && res.profile.alpha < m.q1 - kEpsNum &&
        m.Y1 > p.p1 * m.q1 + kEpsNum)
        throw std::logic_error("solve_nash: unreachable best-reply case fired");
    return res;
}

namespace {

struct GridPick {
    int i = 0, j = 0;
    double u = -kInf;
    double spend = kInf;
    double home = -kInf;
};

// Lexicographic tie-breaking mirroring the selection rules: payoff max,
// then least expenditure, then largest own-region order.
void consider(GridPick& best, int i, int j, double u, double spend, double home) {
    constexpr double tol = 1e-12;
    if (u > best.u + tol) {
        best = {i, j, u, spend, home};
        return;
    }
    if (u < best.u - tol) return;
    if (spend < best.spend - tol) {
        best = {i, j, u, spend, home};
        return;
    }
    if (spend > best.spend + tol) return;
    if (home > best.home + tol) best = {i, j, u, spend, home};
}

} // namespace

BruteForceResult brute_force_nash(const PriceState& p, const ModelParams& m, int grid_n,
                                  int max_sweeps) {
    m.require_valid();
    if (grid_n < 50) throw PreconditionViolatedError("brute_force_nash: grid_n must be >= 50");
    if (p.p1 == 0.0 && p.p2 == 0.0)
        throw DegeneratePriceError("brute_force_nash: both prices are zero");

    const double p1p = p1_prime(p, m);
    const double p2p = p2_prime(p, m);

    // Payoffs saturate at the supplies, so the searched box can stop there.
    const double a_max = p.p1 > 0.0 ? std::min(m.q1, m.Y1 / p.p1) : m.q1;
    const double b_max = std::min(m.q2, m.Y1 / p2p);
    const double g_max = std::min(m.q1, m.Y2 / p1p);
    const double d_max = p.p2 > 0.0 ? std::min(m.q2, m.Y2 / p.p2) : m.q2;

    const auto br1 = [&](double delta) {
        const double want = std::max(0.0, m.q2 - delta);
        GridPick best;
        for (int i = 0; i <= grid_n; ++i) {
            const double a = a_max * i / grid_n;
            const double left = m.Y1 - p.p1 * a;
            if (left < -kEpsNum) break;
            const int jcap = b_max > 0.0
                                 ? std::min(grid_n, static_cast<int>(std::floor(
                                                        (left / p2p) / (b_max / grid_n) + 1e-12)))
                                 : 0;
            for (int j = 0; j <= jcap; ++j) {
                const double b = b_max * j / grid_n;
                const double u = std::min(a, m.q1) + std::min(b, want);
                consider(best, i, j, u, p.p1 * a + p2p * b, a);
            }
        }
        return best;
    };
    const auto br2 = [&](double alpha) {
        const double want = std::max(0.0, m.q1 - alpha);
        GridPick best;
        for (int i = 0; i <= grid_n; ++i) {
            const double d = d_max * i / grid_n;
            const double left = m.Y2 - p.p2 * d;
            if (left < -kEpsNum) break;
            const int jcap = g_max > 0.0
                                 ? std::min(grid_n, static_cast<int>(std::floor(
                                                        (left / p1p) / (g_max / grid_n) + 1e-12)))
                                 : 0;
            for (int j = 0; j <= jcap; ++j) {
                const double g = g_max * j / grid_n;
                const double u = std::min(d, m.q2) + std::min(g, want);
                consider(best, i, j, u, p.p2 * d + p1p * g, d);
            }
        }
        return best;
    };

    struct State {
        int a = 0, b = 0, d = 0, g = 0;
        bool operator==(const State& o) const {
            return a == o.a && b == o.b && d == o.d && g == o.g;
        }
    };
    State s;
    std::vector<State> seen{s};

    BruteForceResult out;
    out.diam1 = std::max(a_max, b_max);
    out.diam2 = std::max(g_max, d_max);

    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        const GridPick r1 = br1(d_max * s.d / grid_n);
        const GridPick r2 = br2(a_max * s.a / grid_n);
        const State next{r1.i, r1.j, r2.i, r2.j};
        out.sweeps = sweep;
        if (next == s) {
            out.converged = true;
            break;
        }
        s = next;
        if (std::find(seen.begin(), seen.end(), s) != seen.end()) break; // cycle
        seen.push_back(s);
    }

    out.profile = {a_max * s.a / grid_n, b_max * s.b / grid_n, g_max * s.g / grid_n,
                   d_max * s.d / grid_n};
    out.pay1 = payoff1(out.profile, m);
    out.pay2 = payoff2(out.profile, m);
    return out;
}

} // namespace bitrade
