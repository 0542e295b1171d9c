#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "skeinkit/error.hpp"

namespace skeinkit {

// One crossing of a diagram.  arcs lists the four incident arc labels
// counterclockwise starting at the incoming under-strand, so the under
// strand occupies slots 0 and 2 and the over strand slots 1 and 3.
// sign is the usual crossing sign: -1 when the over strand runs from
// slot 1 to slot 3, +1 when it runs from slot 3 to slot 1.
struct Crossing {
    std::array<int, 4> arcs;
    int sign = 0;
};

struct Diagram {
    std::vector<Crossing> crossings;
    // crossing-free circles (the 0-crossing unknot has one)
    int extra_circles = 0;
    int num_components = 1;
    std::string name;

    int c() const { return static_cast<int>(crossings.size()); }
    int c_plus() const {
        int k = 0;
        for (const auto& x : crossings) k += x.sign > 0;
        return k;
    }
    int c_minus() const {
        int k = 0;
        for (const auto& x : crossings) k += x.sign < 0;
        return k;
    }
    int writhe() const {
        int w = 0;
        for (const auto& x : crossings) w += x.sign;
        return w;
    }
    int max_arc_label() const {
        int m = 0;
        for (const auto& x : crossings)
            for (int a : x.arcs) m = std::max(m, a);
        return m;
    }

    static Diagram unknot() {
        Diagram d;
        d.extra_circles = 1;
        d.name = "unknot";
        return d;
    }
};

// A or B choice per crossing, in crossing order.
using KauffmanState = std::vector<std::uint8_t>;
inline constexpr std::uint8_t kChoiceA = 0;
inline constexpr std::uint8_t kChoiceB = 1;

inline KauffmanState all_a_state(const Diagram& d) { return KauffmanState(d.c(), kChoiceA); }
inline KauffmanState all_b_state(const Diagram& d) { return KauffmanState(d.c(), kChoiceB); }

inline int state_sign(const KauffmanState& s) {
    int v = 0;
    for (auto c : s) v += (c == kChoiceA) ? 1 : -1;
    return v;
}

struct StateGraph {
    int circles = 0;
    // edge per crossing, endpoints are circle ids in [0, circles)
    std::vector<std::pair<int, int>> edges;

    bool has_loop() const {
        for (const auto& [u, v] : edges)
            if (u == v) return true;
        return false;
    }
};

namespace detail {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }

private:
    std::vector<int> parent_;
};

inline std::map<int, int> arc_index(const Diagram& d) {
    std::map<int, int> idx;
    for (const auto& x : d.crossings)
        for (int a : x.arcs)
            if (!idx.count(a)) idx.emplace(a, static_cast<int>(idx.size()));
    return idx;
}

// Orients a diagram whose crossings have the under strand on slots 0 and 2
// but arbitrary rotation/sign: walks each component, rotates every tuple so
// slot 0 is the incoming under-strand, and derives the signs.  Each
// component's traversal starts at an under slot that is assumed incoming;
// for single-component diagrams this fixes everything up to the global
// orientation, which crossing signs do not depend on.
inline void orient(Diagram& d) {
    const int n = d.c();
    if (n == 0) {
        d.num_components = 0;
        return;
    }
    // occurrences[label] -> up to two (crossing, slot)
    std::map<int, std::vector<std::pair<int, int>>> occ;
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < 4; ++s) occ[d.crossings[i].arcs[s]].push_back({i, s});
    for (const auto& [label, slots] : occ)
        if (slots.size() != 2)
            throw Error(ErrorCode::BAD_ARC_MULTIPLICITY,
                        "arc " + std::to_string(label) + " occurs " +
                            std::to_string(slots.size()) + " times");

    // direction per (crossing, slot): 0 unknown, 1 incoming, 2 outgoing
    std::vector<std::array<int, 4>> dir(n, {0, 0, 0, 0});
    int components = 0;
    for (int start = 0; start < n; ++start) {
        for (int start_slot : {0, 1}) {
            if (dir[start][start_slot] != 0) continue;
            ++components;
            int cx = start, slot = start_slot;
            while (dir[cx][slot] == 0) {
                dir[cx][slot] = 1;
                int out = (slot + 2) % 4;
                dir[cx][out] = 2;
                int label = d.crossings[cx].arcs[out];
                const auto& pair = occ[label];
                auto [nx, ns] = pair[0].first == cx && pair[0].second == out ? pair[1] : pair[0];
                cx = nx;
                slot = ns;
            }
        }
    }
    d.num_components = components + d.extra_circles;

    for (int i = 0; i < n; ++i) {
        auto& x = d.crossings[i];
        int u = dir[i][0] == 1 ? 0 : 2;
        if (dir[i][u] != 1)
            throw Error(ErrorCode::MALFORMED_PD, "could not orient under-strand");
        std::array<int, 4> rot;
        for (int s = 0; s < 4; ++s) rot[s] = x.arcs[(u + s) % 4];
        int over_in_slot = dir[i][(u + 1) % 4] == 1 ? 1 : 3;
        if (dir[i][(u + over_in_slot) % 4] != 1)
            throw Error(ErrorCode::MALFORMED_PD, "could not orient over-strand");
        x.arcs = rot;
        x.sign = over_in_slot == 1 ? -1 : +1;
    }
}

}  // namespace detail

inline StateGraph apply_state(const Diagram& d, const KauffmanState& s) {
    if (static_cast<int>(s.size()) != d.c())
        throw Error(ErrorCode::STATE_LENGTH_MISMATCH,
                    "state has " + std::to_string(s.size()) + " entries, diagram has " +
                        std::to_string(d.c()) + " crossings");
    auto idx = detail::arc_index(d);
    detail::UnionFind uf(static_cast<int>(idx.size()));
    for (int i = 0; i < d.c(); ++i) {
        const auto& t = d.crossings[i].arcs;
        if (s[i] == kChoiceA) {
            // A-smoothing joins slots (0,1) and (2,3); B joins (0,3) and (1,2)
            uf.unite(idx[t[0]], idx[t[1]]);
            uf.unite(idx[t[2]], idx[t[3]]);
        } else {
            uf.unite(idx[t[0]], idx[t[3]]);
            uf.unite(idx[t[1]], idx[t[2]]);
        }
    }
    std::map<int, int> circle_id;
    for (const auto& [label, i] : idx) {
        int root = uf.find(i);
        if (!circle_id.count(root)) circle_id.emplace(root, static_cast<int>(circle_id.size()));
    }
    StateGraph g;
    g.circles = static_cast<int>(circle_id.size()) + d.extra_circles;
    for (int i = 0; i < d.c(); ++i) {
        const auto& t = d.crossings[i].arcs;
        int e0, e1;
        if (s[i] == kChoiceA) {
            e0 = circle_id[uf.find(idx[t[0]])];
            e1 = circle_id[uf.find(idx[t[2]])];
        } else {
            e0 = circle_id[uf.find(idx[t[0]])];
            e1 = circle_id[uf.find(idx[t[1]])];
        }
        g.edges.emplace_back(e0, e1);
    }
    return g;
}

struct AdequacyReport {
    bool a_adequate = false;
    bool b_adequate = false;
    int v_A = 0;
    int v_B = 0;
};

inline AdequacyReport adequacy(const Diagram& d) {
    StateGraph ga = apply_state(d, all_a_state(d));
    StateGraph gb = apply_state(d, all_b_state(d));
    return {!ga.has_loop(), !gb.has_loop(), ga.circles, gb.circles};
}

inline int turaev_genus(const Diagram& d) {
    auto r = adequacy(d);
    int num = 2 - r.v_A - r.v_B + d.c();
    if (num < 0 || num % 2 != 0)
        throw Error(ErrorCode::NONPLANAR_SUSPECT,
                    "2 - vA - vB + c = " + std::to_string(num));
    return num / 2;
}

// --- PD text ---

inline Diagram parse_pd(const std::string& text) {
    Diagram d;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
            ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != 'X' && text[i] != 'x')
            throw Error(ErrorCode::MALFORMED_PD, "expected 'X' at position " + std::to_string(i));
        ++i;
        skip_ws();
        if (i >= text.size() || (text[i] != '(' && text[i] != '['))
            throw Error(ErrorCode::MALFORMED_PD, "expected '(' after X");
        char close = text[i] == '(' ? ')' : ']';
        ++i;
        Crossing x{};
        for (int k = 0; k < 4; ++k) {
            skip_ws();
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j == i) throw Error(ErrorCode::MALFORMED_PD, "expected arc label");
            x.arcs[k] = std::stoi(text.substr(i, j - i));
            i = j;
        }
        skip_ws();
        if (i >= text.size() || text[i] != close)
            throw Error(ErrorCode::MALFORMED_PD, "expected closing bracket");
        ++i;
        d.crossings.push_back(x);
        skip_ws();
    }
    if (d.crossings.empty()) throw Error(ErrorCode::MALFORMED_PD, "no crossings in input");
    detail::orient(d);
    // planarity sanity check
    turaev_genus(d);
    return d;
}

inline std::string to_pd_text(const Diagram& d) {
    std::string s;
    for (const auto& x : d.crossings) {
        if (!s.empty()) s += " ";
        s += "X(" + std::to_string(x.arcs[0]) + "," + std::to_string(x.arcs[1]) + "," +
             std::to_string(x.arcs[2]) + "," + std::to_string(x.arcs[3]) + ")";
    }
    return s;
}

// --- surgeries ---

inline Diagram mirror(const Diagram& d) {
    Diagram m = d;
    m.name = d.name.empty() ? "" : d.name + "*";
    for (auto& x : m.crossings) {
        // the over strand becomes the under strand; restart the tuple at its
        // incoming end (slot 1 when sign is -1, slot 3 when +1)
        int start = x.sign < 0 ? 1 : 3;
        std::array<int, 4> rot;
        for (int s = 0; s < 4; ++s) rot[s] = x.arcs[(start + s) % 4];
        x.arcs = rot;
        x.sign = -x.sign;
    }
    return m;
}

namespace detail {

// (crossing, slot) where the arc enters / leaves a crossing
struct ArcEnds {
    int out_crossing = -1, out_slot = -1;  // arc leaves this crossing
    int in_crossing = -1, in_slot = -1;    // arc enters this crossing
};

inline ArcEnds find_arc_ends(const Diagram& d, int label) {
    ArcEnds e;
    for (int i = 0; i < d.c(); ++i) {
        const auto& x = d.crossings[i];
        int over_in = x.sign < 0 ? 1 : 3;
        int over_out = x.sign < 0 ? 3 : 1;
        for (int s = 0; s < 4; ++s) {
            if (x.arcs[s] != label) continue;
            bool incoming = (s == 0 || s == over_in);
            if (incoming) {
                e.in_crossing = i;
                e.in_slot = s;
            } else {
                e.out_crossing = i;
                e.out_slot = s;
            }
            (void)over_out;
        }
    }
    if (e.in_crossing < 0 || e.out_crossing < 0)
        throw Error(ErrorCode::ARC_NOT_FOUND, "arc " + std::to_string(label));
    return e;
}

inline int lowest_arc(const Diagram& d) {
    int best = -1;
    for (const auto& x : d.crossings)
        for (int a : x.arcs)
            if (best < 0 || a < best) best = a;
    if (best < 0) throw Error(ErrorCode::ARC_NOT_FOUND, "diagram has no arcs");
    return best;
}

inline Diagram relabeled(const Diagram& d, int offset) {
    Diagram r = d;
    for (auto& x : r.crossings)
        for (auto& a : x.arcs) a += offset;
    return r;
}

}  // namespace detail

inline Diagram connected_sum(const Diagram& d1, const Diagram& d2) {
    if (d1.c() == 0) return d2;
    if (d2.c() == 0) return d1;
    Diagram a = d1;
    Diagram b = detail::relabeled(d2, d1.max_arc_label());
    int l1 = detail::lowest_arc(a);
    int l2 = detail::lowest_arc(b);
    auto e1 = detail::find_arc_ends(a, l1);
    auto e2 = detail::find_arc_ends(b, l2);
    // cut both arcs and cross-join: l1 now flows into what consumed l2,
    // and l2 into what consumed l1
    b.crossings[e2.in_crossing].arcs[e2.in_slot] = l1;
    a.crossings[e1.in_crossing].arcs[e1.in_slot] = l2;
    Diagram r;
    r.crossings = a.crossings;
    r.crossings.insert(r.crossings.end(), b.crossings.begin(), b.crossings.end());
    r.extra_circles = d1.extra_circles + d2.extra_circles;
    r.num_components = d1.num_components + d2.num_components - 1;
    r.name = (d1.name.empty() ? "?" : d1.name) + "#" + (d2.name.empty() ? "?" : d2.name);
    return r;
}

inline Diagram add_kink(const Diagram& d, int sign) {
    if (sign != 1 && sign != -1)
        throw Error(ErrorCode::INCONSISTENT_INPUT, "kink sign must be +-1");
    Diagram r = d;
    if (r.c() == 0) {
        if (r.extra_circles < 1)
            throw Error(ErrorCode::INCONSISTENT_INPUT, "empty diagram");
        r.extra_circles -= 1;
        r.num_components = std::max(1, r.num_components);
        Crossing x{};
        if (sign < 0)
            x.arcs = {1, 2, 2, 1};
        else
            x.arcs = {1, 1, 2, 2};
        x.sign = sign;
        r.crossings.push_back(x);
        return r;
    }
    int l = detail::lowest_arc(r);
    auto e = detail::find_arc_ends(r, l);
    int m1 = r.max_arc_label() + 1;
    int m2 = m1 + 1;
    Crossing x{};
    if (sign < 0)
        x.arcs = {l, m1, m1, m2};
    else
        x.arcs = {l, m2, m1, m1};
    x.sign = sign;
    r.crossings[e.in_crossing].arcs[e.in_slot] = m2;
    r.crossings.push_back(x);
    return r;
}

namespace detail {

inline Diagram cable_impl(const Diagram& d, int n, std::map<std::pair<int, int>, int>* out_copy_map) {
    Diagram r;
    r.extra_circles = d.extra_circles * n;
    r.num_components = d.num_components * n;
    r.name = d.name.empty() ? "" : d.name + "^" + std::to_string(n);

    int next = 1;
    std::map<std::pair<int, int>, int> copy_label;  // (arc, i) -> label
    auto cp = [&](int arc, int i) {
        auto key = std::make_pair(arc, i);
        auto it = copy_label.find(key);
        if (it != copy_label.end()) return it->second;
        copy_label[key] = next;
        return next++;
    };

    for (const auto& x : d.crossings) {
        const int a = x.arcs[0], b = x.arcs[1], c = x.arcs[2], dd = x.arcs[3];
        // grid: columns i = 1..n west to east carry the under copies a_i -> c_i;
        // rows k = 1..n south to north carry the over copies.
        // sign +1: over runs west to east, copy 1 is the northmost row;
        // sign -1: over runs east to west, copy 1 is the southmost row.
        std::vector<std::vector<int>> vseg(n + 1, std::vector<int>(n + 1));
        std::vector<std::vector<int>> hseg(n + 1, std::vector<int>(n + 1));
        for (int i = 1; i <= n; ++i)
            for (int k = 1; k < n; ++k) vseg[i][k] = next++;
        for (int k = 1; k <= n; ++k)
            for (int i = 1; i < n; ++i) hseg[k][i] = next++;
        auto over_copy = [&](int k) { return x.sign > 0 ? n + 1 - k : k; };
        for (int i = 1; i <= n; ++i) {
            for (int k = 1; k <= n; ++k) {
                Crossing y{};
                int j = over_copy(k);
                y.arcs[0] = (k == 1) ? cp(a, i) : vseg[i][k - 1];
                y.arcs[2] = (k == n) ? cp(c, i) : vseg[i][k];
                y.arcs[1] = (i == n) ? cp(b, j) : hseg[k][i];
                y.arcs[3] = (i == 1) ? cp(dd, j) : hseg[k][i - 1];
                y.sign = x.sign;
                r.crossings.push_back(y);
            }
        }
    }
    if (out_copy_map) *out_copy_map = copy_label;
    return r;
}

}  // namespace detail

// Blackboard n-cable: every crossing becomes an n-by-n grid of crossings with
// the original sign (parallel copies), every arc becomes n parallel arcs.
// Copy i of an arc is the i-th strand counted left to right while traveling
// along the arc's orientation.
inline Diagram cable(const Diagram& d, int n) {
    if (n < 1) throw Error(ErrorCode::INCONSISTENT_INPUT, "cable width must be >= 1");
    if (n == 1) return d;
    return detail::cable_impl(d, n, nullptr);
}

// Untwisted Whitehead double: blackboard 2-cable, with the framing
// neutralized by |wr| anti-parallel full twists and the two copies joined by
// a 2-crossing clasp, both inserted on the cable of the lowest-labeled arc.
inline Diagram whitehead_double(const Diagram& d, int clasp_sign, bool untwisted = true) {
    if (clasp_sign != 1 && clasp_sign != -1)
        throw Error(ErrorCode::INCONSISTENT_INPUT, "clasp sign must be +-1");
    if (d.num_components != 1 || d.c() == 0)
        throw Error(ErrorCode::INCONSISTENT_INPUT, "whitehead double needs a knot diagram");
    const int w = d.writhe();
    std::map<std::pair<int, int>, int> copy_label;
    Diagram cab = detail::cable_impl(d, 2, &copy_label);
    // the doubled copies of the lowest original arc
    int l = detail::lowest_arc(d);
    int cp1 = copy_label.at({l, 1});
    int cp2 = copy_label.at({l, 2});

    // cut the pair (cp1 north, cp2 south w.r.t. travel) and chain in twists
    // and the clasp; the labels cp1/cp2 stay on the west stubs.
    auto ends1 = detail::find_arc_ends(cab, cp1);
    auto ends2 = detail::find_arc_ends(cab, cp2);
    int next = cab.max_arc_label() + 1;
    int cur_n = cp1, cur_s = cp2;

    const int twists = untwisted ? -w : 0;
    // one sigma-type braid crossing on the horizontal pair; under_ne selects
    // which diagonal goes under (true: SW-NE diagonal is under)
    auto add_braid_crossing = [&](bool under_ne) {
        int out_n = next++;
        int out_s = next++;
        Crossing x{};
        if (under_ne) {
            // under diagonal SW-NE: CCW tuple (SW, SE, NE, NW)
            x.arcs = {cur_s, out_s, out_n, cur_n};
        } else {
            // under diagonal NW-SE: CCW tuple (NW, SW, SE, NE)
            x.arcs = {cur_n, cur_s, out_s, out_n};
        }
        cab.crossings.push_back(x);
        cur_n = out_n;
        cur_s = out_s;
    };
    // each full twist is two equal braid crossings; handedness -sgn(w)
    // cancels the blackboard framing wr(d)
    for (int t = 0; t < std::abs(twists); ++t) {
        bool under_ne = twists > 0;
        add_braid_crossing(under_ne);
        add_braid_crossing(under_ne);
    }

    // clasp: two interlocked U-turns joining the copies into one component.
    // Arcs: T joins C2.east to C1.south, M joins C1.west to C2.north,
    // R1/R2 continue east to the original consumers of cp1/cp2.
    int T = next++, M = next++, R1 = next++, R2 = next++;
    Crossing c1{}, c2{};
    if (clasp_sign < 0) {
        // vertical strands under at both crossings
        c1.arcs = {T, R1, cur_n, M};
        c2.arcs = {R2, T, M, cur_s};
    } else {
        // rotate both tuples so the horizontal strands go under
        c1.arcs = {R1, cur_n, M, T};
        c2.arcs = {T, M, cur_s, R2};
    }
    cab.crossings.push_back(c1);
    cab.crossings.push_back(c2);
    cab.crossings[ends1.in_crossing].arcs[ends1.in_slot] = R1;
    cab.crossings[ends2.in_crossing].arcs[ends2.in_slot] = R2;

    detail::orient(cab);
    cab.name = (clasp_sign < 0 ? "W-(" : "W+(") + (d.name.empty() ? "?" : d.name) + ")";
    if (cab.num_components != 1)
        throw Error(ErrorCode::INCONSISTENT_INPUT, "double construction did not yield a knot");
    return cab;
}

}  // namespace skeinkit
