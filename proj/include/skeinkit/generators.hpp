#pragma once

#include <string>
#include <vector>

#include "skeinkit/diagram.hpp"

namespace skeinkit {

// Closure of the 2-strand braid with k equal crossings (the standard
// alternating diagram of the (2,k) torus knot for odd k >= 3); this chirality
// has all-negative crossings, matching the usual table entry for 3_1.
inline Diagram torus_2(int k) {
    if (k < 2) throw Error(ErrorCode::INCONSISTENT_INPUT, "torus_2 needs k >= 2");
    Diagram d;
    const int N = 2 * k;
    for (int j = 0; j < k; ++j) {
        Crossing x{};
        x.arcs = {2 * j + 1, (2 * j + k) % N + 1, 2 * j + 2, (2 * j + k + 1) % N + 1};
        d.crossings.push_back(x);
    }
    detail::orient(d);
    d.name = "T(2," + std::to_string(k) + ")";
    return d;
}

// Rational (2-bridge) knot or link from a positive continued fraction:
// starting from the 0-tangle, alternately add a_1 twists at the right,
// a_2 twists at the bottom, a_3 at the right, ... then take the numerator
// closure.  All twists of one region share an over-diagonal and the choice
// alternates between right and bottom regions, so the diagram is alternating
// with sum(a_i) crossings.
inline Diagram rational_knot(const std::vector<int>& a) {
    if (a.empty()) throw Error(ErrorCode::INCONSISTENT_INPUT, "empty continued fraction");
    for (int t : a)
        if (t < 1) throw Error(ErrorCode::INCONSISTENT_INPUT, "twist counts must be >= 1");

    // The open tangle keeps one arc label per corner.  Every crossing has
    // strands along its diagonals; the NW-SE diagonal always goes under, and
    // tuples are stored counterclockwise from the NW slot: (NW, SW, SE, NE).
    // With this uniform choice consecutive crossings alternate over/under
    // along every strand, both inside a twist region and across regions.
    Diagram d;
    // 0-tangle: strand P joins corners NW,NE; strand Q joins SW,SE
    int nw = 1, ne = 1, sw = 2, se = 2;
    int next = 3;

    for (size_t level = 0; level < a.size(); ++level) {
        bool right = level % 2 == 0;
        for (int t = 0; t < a[level]; ++t) {
            Crossing x{};
            int o1 = next++, o2 = next++;
            if (right) {
                // appended at the right: NW slot takes the old NE strand,
                // SW the old SE; new NE = o1, new SE = o2
                x.arcs = {ne, se, o2, o1};
                ne = o1;
                se = o2;
            } else {
                // appended below: NW slot takes the old SW strand, NE the
                // old SE; new SW = o1, new SE = o2
                x.arcs = {sw, o1, o2, se};
                sw = o1;
                se = o2;
            }
            d.crossings.push_back(x);
        }
    }
    // Close the tangle.  The build starts with right twists, so odd-length
    // fractions end on a right region and take the top/bottom (numerator)
    // closure, while even-length fractions end on a bottom region and take
    // the left/right (denominator) closure; both give the two-bridge knot of
    // the continued fraction a_n + 1/(a_{n-1} + ... + 1/a_1).
    int j1_from, j1_to, j2_from, j2_to;
    if (a.size() % 2 == 1) {
        j1_from = ne, j1_to = nw;
        j2_from = se, j2_to = sw;
    } else {
        j1_from = sw, j1_to = nw;
        j2_from = se, j2_to = ne;
    }
    if (j1_from == j1_to || j2_from == j2_to)
        throw Error(ErrorCode::INCONSISTENT_INPUT, "degenerate rational tangle");
    for (auto& x : d.crossings)
        for (auto& arc : x.arcs) {
            if (arc == j1_from) arc = j1_to;
            if (arc == j2_from) arc = j2_to;
        }
    detail::orient(d);
    std::string nm = "C(";
    for (size_t i = 0; i < a.size(); ++i) nm += (i ? "," : "") + std::to_string(a[i]);
    d.name = nm + ")";
    return d;
}

}  // namespace skeinkit
