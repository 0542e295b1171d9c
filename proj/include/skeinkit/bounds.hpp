#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "skeinkit/diagram.hpp"
#include "skeinkit/error.hpp"
#include "skeinkit/jones.hpp"
#include "skeinkit/laurent.hpp"

namespace skeinkit {

// ---------------------------------------------------------------------------
// Closed-form degree predictors
// ---------------------------------------------------------------------------

struct DegreeQuadratic {
    Rational a2 = 0, a1 = 0, a0 = 0;

    Rational value(int n) const { return a2 * n * n + a1 * n + a0; }
    bool operator==(const DegreeQuadratic&) const = default;
};

// Predictors for the extreme t-degrees of the color-n invariant of an
// adequate diagram, as quadratics in the color: top gives 4 d_minus and
// bottom gives 4 d_plus.
struct DegreePredictors {
    DegreeQuadratic top;
    DegreeQuadratic bottom;
};

inline DegreePredictors adequate_degree_formulas(int c_plus, int c_minus, int v_A,
                                                 int v_B) {
    const int c = c_plus + c_minus;
    DegreePredictors p;
    p.top = {Rational(-2 * c_minus), Rational(2 * (c - v_A)),
             Rational(2 * v_A - 2 * c_plus)};
    p.bottom = {Rational(2 * c_plus), Rational(2 * (v_B - c)),
                Rational(2 * c_minus - 2 * v_B)};
    return p;
}

// Quadratic in the color n bounding the degree span 4d_+ - 4d_- of any
// diagram with c crossings and Turaev genus g_T; attained exactly on
// adequate diagrams (it equals bottom - top of the predictors above via
// v_A + v_B = c + 2 - 2 g_T).
inline DegreeQuadratic span_envelope(int c, int g_T) {
    return {Rational(2 * c), Rational(4 - 4 * g_T - 2 * c), Rational(4 * g_T - 4)};
}

// ---------------------------------------------------------------------------
// Cable degree bound and measured gap
// ---------------------------------------------------------------------------

// H = c n^2 + 2 v_A n bounds deg of the decorated n-cable bracket from
// above; h is its writhe-adjusted counterpart on the invariant side.
// Here n is the cable width.
struct CableDegreeBound {
    int H = 0;
    Rational h = 0;
};

inline CableDegreeBound h_and_H(const Diagram& d, int n) {
    CableDegreeBound b;
    b.H = d.c() * n * n + 2 * adequacy(d).v_A * n;
    b.h = Rational(-b.H, 4) + Rational(d.writhe() * (n * n - 1), 4);
    return b;
}

struct GapRow {
    int n = 0;
    int gap = 0;  // H_n - deg of the decorated n-cable bracket
};

inline std::vector<GapRow> gap_report(const Diagram& d, int n_max) {
    std::vector<GapRow> rows;
    for (int n = 1; n <= n_max; ++n) {
        GapRow r;
        r.n = n;
        const LaurentPoly b = decorated_cable_bracket(d, n);
        r.gap = h_and_H(d, n).H - max_min_degree(b).max_deg;
        rows.push_back(r);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Fusion coefficient degree
// ---------------------------------------------------------------------------

// Degree of the coefficient attached to the a-labelled term when a twist
// region of r crossings on n strands is fused: 2(r-1)n + (1-r)a + rn^2 - r a^2/2.
inline Rational fusion_degree(int a, int r, int n) {
    require_admissible(a, n, n);
    if (r == 0) throw Error(ErrorCode::ZERO_TWIST, "twist region must have r != 0");
    return Rational(2 * (r - 1) * n + (1 - r) * a) + Rational(r) * n * n -
           Rational(r * a * a, 2);
}

// ---------------------------------------------------------------------------
// Whitehead double predictor
// ---------------------------------------------------------------------------

// Given the quadratic d_+ degree (in t units) of a knot with a1 <= 0,
// predicts the asymptotic d_+ quadratic of its untwisted Whitehead double
// with the given clasp sign.
inline DegreeQuadratic bmt_double_predictor(const DegreeQuadratic& q, int clasp_sign) {
    if (clasp_sign != 1 && clasp_sign != -1)
        throw Error(ErrorCode::INCONSISTENT_INPUT, "clasp sign must be +1 or -1");
    if (q.a1 > 0)
        throw Error(ErrorCode::HYPOTHESES_VIOLATED, "predictor needs a1 <= 0");
    if (q.a1 == 0 && q.a2 == 0)
        throw Error(ErrorCode::HYPOTHESES_VIOLATED, "predictor needs a2 != 0 when a1 = 0");
    if (clasp_sign < 0) {
        if (!(q.a2 > 0))
            throw Error(ErrorCode::HYPOTHESES_VIOLATED, "negative clasp needs a2 > 0");
        return {4 * q.a2, -4 * q.a2 + 2 * q.a1 - Rational(1, 2),
                q.a2 - q.a1 + q.a0 + Rational(1, 2)};
    }
    if (!(q.a2 > Rational(1, 8)))
        throw Error(ErrorCode::HYPOTHESES_VIOLATED, "positive clasp needs a2 > 1/8");
    return {4 * q.a2 + Rational(1, 2), -4 * q.a2 + 2 * q.a1,
            q.a2 - q.a1 + q.a0 - Rational(1, 2)};
}

// ---------------------------------------------------------------------------
// Jones slopes and diameter
// ---------------------------------------------------------------------------

enum class SlopeProvenance { closed_form, fitted };

struct SlopeReport {
    Rational js = 0;       // max-degree slope
    Rational js_star = 0;  // min-degree slope
    Rational diameter = 0;
    SlopeProvenance provenance = SlopeProvenance::closed_form;
};

namespace detail {

// Exact quadratic through the first three (n, value) points; the remaining
// points must lie on it or the polynomial-growth assumption is wrong.
inline DegreeQuadratic fit_quadratic(const std::vector<std::pair<int, Rational>>& pts) {
    if (pts.size() < 4)
        throw Error(ErrorCode::INCONSISTENT_INPUT,
                    "quadratic fit needs three points plus a consistency check");
    const Rational n0 = pts[0].first, n1 = pts[1].first, n2 = pts[2].first;
    const Rational v0 = pts[0].second, v1 = pts[1].second, v2 = pts[2].second;
    // divided differences
    const Rational d01 = (v1 - v0) / (n1 - n0);
    const Rational d12 = (v2 - v1) / (n2 - n1);
    DegreeQuadratic q;
    q.a2 = (d12 - d01) / (n2 - n0);
    q.a1 = d01 - q.a2 * (n0 + n1);
    q.a0 = v0 - q.a2 * n0 * n0 - q.a1 * n0;
    for (size_t i = 3; i < pts.size(); ++i)
        if (q.value(pts[i].first) != pts[i].second)
            throw Error(ErrorCode::FIT_INCONSISTENT,
                        "quasi-polynomial suspected, fit unreliable");
    return q;
}

}  // namespace detail

enum class DiameterMode { adequate_closed_form, fit };

inline SlopeReport jones_diameter(const Diagram& d,
                                  DiameterMode mode = DiameterMode::adequate_closed_form) {
    SlopeReport r;
    if (mode == DiameterMode::adequate_closed_form) {
        AdequacyReport rep = adequacy(d);
        if (!rep.a_adequate || !rep.b_adequate)
            throw Error(ErrorCode::NOT_ADEQUATE,
                        "closed-form slopes need an adequate diagram");
        r.js = 2 * d.c_plus();
        r.js_star = -2 * d.c_minus();
        r.provenance = SlopeProvenance::closed_form;
    } else {
        std::vector<std::pair<int, Rational>> plus, minus;
        for (int n = 2; n <= 5; ++n) {
            DegreeSpan s = degree_span(d, n);
            plus.push_back({n, 4 * s.d_plus});
            minus.push_back({n, 4 * s.d_minus});
        }
        r.js = detail::fit_quadratic(plus).a2;
        r.js_star = detail::fit_quadratic(minus).a2;
        r.provenance = SlopeProvenance::fitted;
    }
    r.diameter = abs(r.js - r.js_star);
    return r;
}

// ---------------------------------------------------------------------------
// Crossing number criterion and double bounds
// ---------------------------------------------------------------------------

struct CrossingNumberVerdict {
    bool determined = false;
    int c_K = 0;               // valid when determined
    Rational interval_low = 0;  // open lower end when undetermined
    int interval_high = 0;      // closed upper end when undetermined
};

// Decides the crossing number from a trusted Jones diameter: the diameter of
// a knot never exceeds twice its crossing number, with equality exactly for
// adequate knots, and a non-adequate diagram realizing diameter 2(c_D - 1)
// must already be minimal.
inline CrossingNumberVerdict crossing_number_criterion(int c_D, const Rational& diameter,
                                                       bool adequate) {
    if (diameter > 2 * Rational(c_D))
        throw Error(ErrorCode::INCONSISTENT_INPUT,
                    "diameter exceeds twice the diagram crossing number");
    CrossingNumberVerdict v;
    if (adequate) {
        v.determined = true;
        v.c_K = static_cast<int>(numerator(Rational(diameter / 2)));
        return v;
    }
    if (diameter == Rational(2 * (c_D - 1))) {
        v.determined = true;
        v.c_K = c_D;
        return v;
    }
    v.interval_low = diameter / 2;
    v.interval_high = c_D;
    return v;
}

struct DoubleCrossingBounds {
    int lower = 0;
    int upper = 0;
    std::optional<int> exact;
};

// Crossing number window for untwisted Whitehead doubles of an adequate
// knot; pinned exactly at zero writhe.
inline DoubleCrossingBounds double_crossing_bounds(int c_K, int wr_K) {
    DoubleCrossingBounds b;
    b.lower = 4 * c_K + 1;
    b.upper = 4 * c_K + 2 + 2 * std::abs(wr_K);
    if (wr_K == 0) b.exact = 4 * c_K + 2;
    return b;
}

// ---------------------------------------------------------------------------
// Connected sums and partitions
// ---------------------------------------------------------------------------

// Coefficient family being combined: x and y are the paper-style names for
// the quadratic and linear coefficients of a +-4 d_-+ degree quadratic, so
// both select the degree rule; span selects the d_+ - d_- rule.
enum class QuadraticKind { x, y, span };

// Combines degree quadratics under connected sum; the corrections are the
// unknot's own degrees, which a reduced-polynomial product does not repeat.
inline DegreeQuadratic connected_sum_degree(const DegreeQuadratic& q1,
                                            const DegreeQuadratic& q2,
                                            QuadraticKind which) {
    DegreeQuadratic r;
    r.a2 = q1.a2 + q2.a2;
    if (which == QuadraticKind::span) {
        // d_+ - d_- of the unknot is n - 1
        r.a1 = q1.a1 + q2.a1 - 1;
        r.a0 = q1.a0 + q2.a0 + 1;
    } else {
        // 4 d_+ (and -4 d_-) of the unknot is 2n - 2
        r.a1 = q1.a1 + q2.a1 - 2;
        r.a0 = q1.a0 + q2.a0 + 2;
    }
    return r;
}

// s nonnegative parts summing to k with minimal sum of squares: parts differ
// by at most one.
inline std::vector<int> minimal_partition(int k, int s) {
    if (k < 0 || s < 1)
        throw Error(ErrorCode::INCONSISTENT_INPUT, "need k >= 0 and s >= 1");
    const int mu = k / s, b = k % s;
    std::vector<int> parts;
    for (int i = 0; i < b; ++i) parts.push_back(mu + 1);
    for (int i = b; i < s; ++i) parts.push_back(mu);
    return parts;
}

}  // namespace skeinkit
