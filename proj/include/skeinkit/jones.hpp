#pragma once

#include <string>
#include <vector>

#include "skeinkit/diagram.hpp"
#include "skeinkit/error.hpp"
#include "skeinkit/laurent.hpp"
#include "skeinkit/skein.hpp"

namespace skeinkit {

// ---------------------------------------------------------------------------
// Cable brackets
// ---------------------------------------------------------------------------

// Bracket of the plain (undecorated) m-strand blackboard cable; m = 0 is the
// empty diagram with bracket 1.
inline LaurentPoly plain_cable_bracket(const Diagram& d, int m) {
    if (m == 0) return LaurentPoly::one();
    return bracket_sweep(cable_program(to_slice_program(d), m, false));
}

// Bracket of the m-cable carrying a projector on each cable component.
inline LaurentPoly decorated_cable_bracket(const Diagram& d, int m) {
    if (m == 0) return LaurentPoly::one();
    return bracket_sweep_exact(cable_program(to_slice_program(d), m, true)).as_poly();
}

namespace detail {

// Coefficient rows of the Chebyshev-like basis change S_0 = 1, S_1 = z,
// S_{k+1} = z S_k - S_{k-1}; rows[k][j] is the z^j coefficient of S_k.
inline std::vector<std::vector<Int>> chebyshev_rows(int m) {
    std::vector<std::vector<Int>> rows;
    rows.push_back({Int(1)});
    if (m >= 1) rows.push_back({Int(0), Int(1)});
    for (int k = 2; k <= m; ++k) {
        std::vector<Int> r(k + 1, Int(0));
        for (int j = 0; j + 1 <= k; ++j) r[j + 1] += rows[k - 1][j];
        for (size_t j = 0; j < rows[k - 2].size(); ++j) r[j] -= rows[k - 2][j];
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace detail

// Same value as decorated_cable_bracket, but the projector is expanded in the
// annulus first: the decorated cable is the S_m-combination of plain cables,
// so no projector slices ever enter the sweep.
inline LaurentPoly decorated_cable_bracket_chebyshev(const Diagram& d, int m) {
    if (m == 0) return LaurentPoly::one();
    SliceProgram base = to_slice_program(d);
    auto comp = detail::program_components(base, 0);
    std::set<int> roots;
    for (const auto& [si, root] : comp.cup_component) roots.insert(root);
    if (roots.size() != 1)
        throw Error(ErrorCode::INCONSISTENT_INPUT,
                    "annulus expansion needs a single-component diagram");
    const auto rows = detail::chebyshev_rows(m);
    LaurentPoly out;
    for (int j = 0; j <= m; ++j) {
        if (rows[m][j].is_zero()) continue;
        out = out + plain_cable_bracket(d, j).scaled(rows[m][j]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Colored Jones polynomials
// ---------------------------------------------------------------------------

// The color-n invariant as a Laurent polynomial in A; with A = t^{-1/4} the
// t-degrees are quarter-integers read off the A-exponents with a sign flip.
struct ColoredJones {
    int n = 1;
    LaurentPoly poly;
    Rational t_max_deg = 0;
    Rational t_min_deg = 0;
    std::string strategy;  // "sweep" or "chebyshev"
};

namespace detail {

inline ColoredJones make_colored_jones(int n, LaurentPoly poly, std::string strategy) {
    ColoredJones j;
    j.n = n;
    j.poly = std::move(poly);
    j.strategy = std::move(strategy);
    if (j.poly.is_zero())
        throw Error(ErrorCode::INCONSISTENT_INPUT, "colored Jones polynomial vanished");
    const DegreeBounds b = max_min_degree(j.poly);
    j.t_max_deg = Rational(-b.min_deg, 4);
    j.t_min_deg = Rational(-b.max_deg, 4);
    return j;
}

// ((-1)^{n-1} A^{n^2-1})^{-wr}: a kink multiplies the decorated cable
// bracket by the projector twist coefficient (-1)^{n-1} A^{n^2-1}, so this
// factor is exactly what makes the result framing-independent.
inline LaurentPoly framing_factor(const Diagram& d, int n) {
    const int wr = d.writhe();
    const bool neg = ((n - 1) * wr) % 2 != 0;
    return LaurentPoly::monomial(-wr * (n * n - 1), neg ? -1 : 1);
}

}  // namespace detail

// Color-n invariant via the projector-decorated (n-1)-cable.
inline ColoredJones colored_jones(const Diagram& d, int n) {
    if (n < 1) throw Error(ErrorCode::INCONSISTENT_INPUT, "color must be >= 1");
    LaurentPoly p = detail::framing_factor(d, n) * decorated_cable_bracket(d, n - 1);
    return detail::make_colored_jones(n, std::move(p), "sweep");
}

// Same invariant via the annulus expansion into plain cables; cheaper since
// the sweep never touches projector slices.
inline ColoredJones colored_jones_chebyshev(const Diagram& d, int n) {
    if (n < 1) throw Error(ErrorCode::INCONSISTENT_INPUT, "color must be >= 1");
    LaurentPoly p =
        detail::framing_factor(d, n) * decorated_cable_bracket_chebyshev(d, n - 1);
    return detail::make_colored_jones(n, std::move(p), "chebyshev");
}

// Reduced polynomial: divide out the unknot value delta(n-1); the division is
// always exact for honest invariants, so failure signals an engine bug.
inline LaurentPoly reduced(const ColoredJones& j) {
    return exact_divide(j.poly, delta(j.n - 1));
}

// ---------------------------------------------------------------------------
// Degrees
// ---------------------------------------------------------------------------

struct DegreeSpan {
    Rational d_plus = 0;   // max t-degree
    Rational d_minus = 0;  // min t-degree
    int span = 0;          // 4 d_plus - 4 d_minus
};

inline DegreeSpan degree_span_of(const ColoredJones& j) {
    DegreeSpan s;
    s.d_plus = j.t_max_deg;
    s.d_minus = j.t_min_deg;
    const Rational sp = 4 * (s.d_plus - s.d_minus);
    s.span = static_cast<int>(numerator(sp));
    return s;
}

inline DegreeSpan degree_span(const Diagram& d, int n) {
    return degree_span_of(colored_jones_chebyshev(d, n));
}

}  // namespace skeinkit
