#pragma once
#include "bitrade/model.hpp"

#include <string>

namespace bitrade {

/// Subzone of the income-space partition at the current prices. The basic
/// partition (I_* subzones) applies when the delivered value of region 2's
/// supply stays under region 1's nominal supply; Z1_* replace the I_* labels
/// in the opposite case. DegenerateII_1 is the p2 = 0 continuation region.
enum class Zone {
    III,
    II_1,
    II_2,
    II_3,
    I_1,
    I_2,
    I_3,
    IV_1,
    IV_2,
    Z1_1,
    Z1_2,
    Z1_3,
    Z1_4,
    DegenerateII_1,
    Boundary,
};

struct ZoneLabel {
    Zone zone = Zone::Boundary;
    std::string detail; // nonempty only for Boundary

    friend bool operator==(const ZoneLabel& a, const ZoneLabel& b) { return a.zone == b.zone; }
    friend bool operator==(const ZoneLabel& a, Zone z) { return a.zone == z; }
};

const char* to_string(Zone z);

/// Order of p2'*q2 relative to p1*q1, resolved with kEpsNum.
enum class CaseRelation { Lt, Eq, Gt };

/// Position of the price gap p1 - p2 relative to +-rho.
enum class DeltaPBranch { Inside, EqMinusRho, LtMinusRho, EqPlusRho, GtPlusRho };

const char* to_string(DeltaPBranch b);

inline bool ge_minus_rho(DeltaPBranch b) { return b != DeltaPBranch::LtMinusRho; }
inline bool le_plus_rho(DeltaPBranch b) { return b != DeltaPBranch::GtPlusRho; }
inline bool inside_closed(DeltaPBranch b) { return ge_minus_rho(b) && le_plus_rho(b); }

/// Signed residuals of the four partition lines at (Y1, Y2); zero on the
/// line, positive strictly above in the orientation the partition uses.
struct LineValues {
    double l1 = 0.0;
    double l2 = 0.0;
    double l3 = 0.0;
    double l4 = 0.0;
};

LineValues line_values(const PriceState& p, const ModelParams& m);

CaseRelation case_relation(const PriceState& p, const ModelParams& m);

DeltaPBranch delta_p_branch(const PriceState& p, const ModelParams& m);

/// Unique subzone of (Y1, Y2) under the partition induced by the prices.
/// Requires p1, p2 > 0 and the canonical orientation p2*q2 < p1*q1.
ZoneLabel classify(const PriceState& p, const ModelParams& m);

/// Stationary loci of the price dynamics in price space: the images of lines
/// l1/l2 (vertical/horizontal lines p1 = p1*, p2 = p2*) and of l3/l4
/// (hyperbolae h3, h4).
struct PriceSpaceLoci {
    double p1_star = 0.0;
    double p2_star = 0.0;
};

PriceSpaceLoci price_space_loci(const ModelParams& m);

/// Hyperbola image of l3: p1 as a function of p2 (p2 > 0).
double h3(double p2, const ModelParams& m);

/// Hyperbola image of l4: p2 as a function of p1 (p1 > 0).
double h4(double p1, const ModelParams& m);

} // namespace bitrade
