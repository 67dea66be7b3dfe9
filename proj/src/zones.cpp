#include "bitrade/zones.hpp"

#include <cmath>

namespace bitrade {

const char* to_string(Zone z) {
    switch (z) {
        case Zone::III: return "III";
        case Zone::II_1: return "II-1";
        case Zone::II_2: return "II-2";
        case Zone::II_3: return "II-3";
        case Zone::I_1: return "I-1";
        case Zone::I_2: return "I-2";
        case Zone::I_3: return "I-3";
        case Zone::IV_1: return "IV-1";
        case Zone::IV_2: return "IV-2";
        case Zone::Z1_1: return "1-1";
        case Zone::Z1_2: return "1-2";
        case Zone::Z1_3: return "1-3";
        case Zone::Z1_4: return "1-4";
        case Zone::DegenerateII_1: return "degenerate-II-1";
        case Zone::Boundary: return "boundary";
    }
    return "?";
}

const char* to_string(DeltaPBranch b) {
    switch (b) {
        case DeltaPBranch::Inside: return "inside";
        case DeltaPBranch::EqMinusRho: return "eq-minus-rho";
        case DeltaPBranch::LtMinusRho: return "lt-minus-rho";
        case DeltaPBranch::EqPlusRho: return "eq-plus-rho";
        case DeltaPBranch::GtPlusRho: return "gt-plus-rho";
    }
    return "?";
}

LineValues line_values(const PriceState& p, const ModelParams& m) {
    if (p.p1 <= 0.0 || p.p2 <= 0.0)
        throw DegeneratePriceError("line_values: requires p1 > 0 and p2 > 0");
    const double p1p = p1_prime(p, m);
    const double p2p = p2_prime(p, m);
    LineValues v;
    v.l1 = m.Y1 + (p.p1 / p1p) * m.Y2 - p.p1 * m.q1;
    v.l2 = (p.p2 / p2p) * m.Y1 + m.Y2 - p.p2 * m.q2;
    v.l3 = (p.p2 / p2p) * m.Y1 + m.Y2 - (p.p2 / p2p) * (p.p1 * m.q1 + p2p * m.q2);
    v.l4 = m.Y1 + (p.p1 / p1p) * m.Y2 - (p.p1 / p1p) * (p1p * m.q1 + p.p2 * m.q2);
    return v;
}

CaseRelation case_relation(const PriceState& p, const ModelParams& m) {
    const double lhs = p2_prime(p, m) * m.q2;
    const double rhs = p.p1 * m.q1;
    if (std::abs(lhs - rhs) <= kEpsNum) return CaseRelation::Eq;
    return lhs < rhs ? CaseRelation::Lt : CaseRelation::Gt;
}

DeltaPBranch delta_p_branch(const PriceState& p, const ModelParams& m) {
    const double dp = p.p1 - p.p2;
    if (std::abs(dp + m.rho) <= kEpsNum) return DeltaPBranch::EqMinusRho;
    if (std::abs(dp - m.rho) <= kEpsNum) return DeltaPBranch::EqPlusRho;
    if (dp < -m.rho) return DeltaPBranch::LtMinusRho;
    if (dp > m.rho) return DeltaPBranch::GtPlusRho;
    return DeltaPBranch::Inside;
}

namespace {

// Non-strict comparison with the shared absolute tolerance.
bool geq(double a, double b) { return a >= b - kEpsNum; }

} // namespace

ZoneLabel classify(const PriceState& p, const ModelParams& m) {
    m.require_valid();
    if (p.p1 <= 0.0 || p.p2 <= 0.0)
        throw DegeneratePriceError("classify: zero-price states are handled by the dynamics");
    const double nls1 = p.p1 * m.q1;
    const double nls2 = p.p2 * m.q2;
    if (nls2 > nls1 + kEpsNum)
        throw OrientationViolatedError("classify: requires p2*q2 < p1*q1");

    const LineValues v = line_values(p, m);
    const bool rich1 = geq(m.Y1, nls1);
    const bool rich2 = geq(m.Y2, nls2);

    // Orientation tie combined with a tie on a partition line is genuinely
    // ambiguous; flag it instead of picking a side.
    if (std::abs(nls2 - nls1) <= kEpsNum) {
        std::string ties;
        if (std::abs(v.l1) <= kEpsNum) ties += " l1";
        if (std::abs(v.l2) <= kEpsNum) ties += " l2";
        if (std::abs(v.l3) <= kEpsNum) ties += " l3";
        if (std::abs(v.l4) <= kEpsNum) ties += " l4";
        if (std::abs(m.Y1 - nls1) <= kEpsNum) ties += " Y1=p1q1";
        if (std::abs(m.Y2 - nls2) <= kEpsNum) ties += " Y2=p2q2";
        if (!ties.empty())
            return {Zone::Boundary, "p2q2=p1q1 with ties on:" + ties};
    }

    if (rich1 && rich2) return {Zone::III};
    if (!rich1 && rich2) {
        if (geq(v.l4, 0.0)) return {Zone::II_3};
        if (geq(v.l1, 0.0)) return {Zone::II_2};
        return {Zone::II_1};
    }
    if (rich1 && !rich2) {
        if (geq(v.l3, 0.0)) return {Zone::IV_1};
        return {Zone::IV_2};
    }

    // Zone I: the sublabeling depends on whether l1 and l2 cross inside it.
    if (case_relation(p, m) == CaseRelation::Gt) {
        const bool above1 = geq(v.l1, 0.0);
        const bool above2 = geq(v.l2, 0.0);
        if (above1 && above2) return {Zone::Z1_4};
        if (above1) return {Zone::Z1_2};
        if (above2) return {Zone::Z1_3};
        return {Zone::Z1_1};
    }
    if (geq(v.l1, 0.0)) return {Zone::I_1};
    if (geq(v.l2, 0.0)) return {Zone::I_2};
    return {Zone::I_3};
}

PriceSpaceLoci price_space_loci(const ModelParams& m) {
    m.require_valid();
    PriceSpaceLoci loci;
    {
        const double b = m.Y1 + m.Y2 - m.rho * m.q1;
        loci.p1_star = (b + std::sqrt(b * b + 4.0 * m.rho * m.q1 * m.Y1)) / (2.0 * m.q1);
    }
    {
        const double b = m.Y1 + m.Y2 - m.rho * m.q2;
        loci.p2_star = (b + std::sqrt(b * b + 4.0 * m.rho * m.q2 * m.Y2)) / (2.0 * m.q2);
    }
    return loci;
}

double h3(double p2, const ModelParams& m) {
    if (p2 <= 0.0) throw DomainError("h3: requires p2 > 0");
    return (m.Y1 + m.Y2 - m.rho * m.q2 - p2 * m.q2 + m.rho * m.Y2 / p2) / m.q1;
}

double h4(double p1, const ModelParams& m) {
    if (p1 <= 0.0) throw DomainError("h4: requires p1 > 0");
    return (m.Y1 + m.Y2 - m.rho * m.q1 - p1 * m.q1 + m.rho * m.Y1 / p1) / m.q2;
}

} // namespace bitrade
