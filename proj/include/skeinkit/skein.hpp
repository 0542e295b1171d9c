#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "skeinkit/diagram.hpp"
#include "skeinkit/laurent.hpp"

namespace skeinkit {

// ---------------------------------------------------------------------------
// Planar matchings and the Temperley-Lieb algebra
// ---------------------------------------------------------------------------

// Perfect pairing of an even number of boundary points.  TL_n elements use
// 2n points: 0..n-1 across the bottom (left to right) and n..2n-1 across the
// top (left to right).
struct Matching {
    std::vector<int> pair;  // pair[i] = partner of point i

    int points() const { return static_cast<int>(pair.size()); }

    bool valid() const {
        const int m = points();
        if (m % 2 != 0) return false;
        for (int i = 0; i < m; ++i) {
            if (pair[i] < 0 || pair[i] >= m || pair[i] == i) return false;
            if (pair[pair[i]] != i) return false;
        }
        return true;
    }

    // identity of TL_n: bottom i joined to top n+i
    static Matching identity(int n) {
        Matching m;
        m.pair.resize(2 * n);
        for (int i = 0; i < n; ++i) {
            m.pair[i] = n + i;
            m.pair[n + i] = i;
        }
        return m;
    }

    bool operator<(const Matching& o) const { return pair < o.pair; }
    bool operator==(const Matching& o) const { return pair == o.pair; }
};

// Number of bottom-to-top arcs of a TL matching.
inline int count_through_strands(const Matching& m) {
    const int n = m.points() / 2;
    int k = 0;
    for (int i = 0; i < n; ++i) k += m.pair[i] >= n;
    return k;
}

// Non-crossing test in the disk whose boundary reads bottom left-to-right
// then top right-to-left.
inline bool is_planar_matching(const Matching& m) {
    const int n = m.points() / 2;
    auto cyc = [&](int p) { return p < n ? p : n + (2 * n - 1 - p); };
    for (int i = 0; i < m.points(); ++i) {
        for (int j = 0; j < m.points(); ++j) {
            int a = cyc(i), b = cyc(m.pair[i]);
            int c = cyc(j), d = cyc(m.pair[j]);
            if (a > b) std::swap(a, b);
            if (c > d) std::swap(c, d);
            if (a < c && c < b && b < d) return false;
        }
    }
    return true;
}

struct TLElement {
    int n = 0;
    std::map<Matching, LaurentRational> terms;

    void add(const Matching& m, const LaurentRational& c) {
        if (c.is_zero()) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    TLElement scaled(const LaurentRational& s) const {
        TLElement r;
        r.n = n;
        if (s.is_zero()) return r;
        for (const auto& [m, c] : terms) r.terms.emplace(m, c * s);
        return r;
    }

    TLElement operator+(const TLElement& o) const {
        if (n != o.n)
            throw Error(ErrorCode::STRAND_MISMATCH,
                        std::to_string(n) + " vs " + std::to_string(o.n));
        TLElement r = *this;
        for (const auto& [m, c] : o.terms) r.add(m, c);
        return r;
    }
    TLElement operator-(const TLElement& o) const {
        return *this + o.scaled(LaurentRational(LaurentPoly(Int(-1))));
    }

    bool operator==(const TLElement& o) const { return n == o.n && terms == o.terms; }

    static TLElement identity(int n) {
        TLElement e;
        e.n = n;
        e.terms.emplace(Matching::identity(n), LaurentRational::one());
        return e;
    }

    // e_i for 1 <= i < n: bottom i-1,i capped, top n+i-1,n+i cupped
    static TLElement generator(int n, int i) {
        if (i < 1 || i >= n)
            throw Error(ErrorCode::INCONSISTENT_INPUT, "generator index out of range");
        Matching m = Matching::identity(n);
        m.pair[i - 1] = i;
        m.pair[i] = i - 1;
        m.pair[n + i - 1] = n + i;
        m.pair[n + i] = n + i - 1;
        TLElement e;
        e.n = n;
        e.terms.emplace(m, LaurentRational::one());
        return e;
    }
};

namespace detail {

// Stack matching u on top of v (u's bottom glued to v's top); returns the
// composed matching and the number of closed loops formed.
inline std::pair<Matching, int> compose_matchings(const Matching& u, const Matching& v,
                                                  int n) {
    // result points: 0..n-1 = v's bottom, n..2n-1 = u's top.
    // middle points (glued): u-bottom j == v-top j.
    Matching r;
    r.pair.assign(2 * n, -1);
    std::vector<char> mid_seen(n, 0);
    auto step = [&](int& elem, int& p) {
        // elem 0: inside v, 1: inside u; p is a point index of that element
        if (elem == 0) {
            p = v.pair[p];
            if (p >= n) {  // v-top -> glued to u-bottom
                mid_seen[p - n] = 1;
                p -= n;
                elem = 1;
            }
        } else {
            p = u.pair[p];
            if (p < n) {  // u-bottom -> glued to v-top
                mid_seen[p] = 1;
                p += n;
                elem = 0;
            }
        }
    };
    auto trace_from = [&](int elem, int p) {
        // follow until reaching a free boundary point; return its global id
        int e = elem, q = p;
        step(e, q);
        while (true) {
            if (e == 0 && q < n) return q;            // v's bottom
            if (e == 1 && q >= n) return n + (q - n);  // u's top
            step(e, q);
        }
    };
    for (int i = 0; i < n; ++i)
        if (r.pair[i] == -1) {
            int j = trace_from(0, i);
            r.pair[i] = j;
            r.pair[j] = i;
        }
    for (int i = 0; i < n; ++i)
        if (r.pair[n + i] == -1) {
            int j = trace_from(1, n + i);
            r.pair[n + i] = j;
            r.pair[j] = n + i;
        }
    // closed loops: cycles through unvisited middle points
    int loops = 0;
    for (int i = 0; i < n; ++i) {
        if (mid_seen[i]) continue;
        ++loops;
        int e = 1, q = i;  // u-bottom i
        mid_seen[i] = 1;
        do {
            step(e, q);
            if (e == 0 && q >= n) mid_seen[q - n] = 1;
            if (e == 1 && q < n) mid_seen[q] = 1;
        } while (!(e == 1 && q == i) && !(e == 0 && q == n + i));
    }
    return {r, loops};
}

}  // namespace detail

inline TLElement tl_multiply(const TLElement& u, const TLElement& v) {
    if (u.n != v.n)
        throw Error(ErrorCode::STRAND_MISMATCH,
                    std::to_string(u.n) + " vs " + std::to_string(v.n));
    TLElement r;
    r.n = u.n;
    const LaurentRational d(loop_value());
    for (const auto& [mu, cu] : u.terms)
        for (const auto& [mv, cv] : v.terms) {
            auto [m, loops] = detail::compose_matchings(mu, mv, u.n);
            LaurentRational c = cu * cv;
            for (int i = 0; i < loops; ++i) c *= d;
            r.add(m, c);
        }
    return r;
}

// Markov trace closure: join bottom i to top n+i, one delta per circle.
inline LaurentRational tl_closure(const TLElement& u) {
    const LaurentRational d(loop_value());
    LaurentRational total = LaurentRational::zero();
    for (const auto& [m, c] : u.terms) {
        std::vector<char> seen(2 * u.n, 0);
        int loops = 0;
        for (int i = 0; i < 2 * u.n; ++i) {
            if (seen[i]) continue;
            ++loops;
            int p = i;
            while (!seen[p]) {
                seen[p] = 1;
                int q = m.pair[p];
                seen[q] = 1;
                p = q < u.n ? q + u.n : q - u.n;  // closure arc
            }
        }
        LaurentRational t = c;
        for (int i = 0; i < loops; ++i) t *= d;
        total += t;
    }
    return total;
}

// Jones-Wenzl projector f_n via the recursion
//   f_k = f_{k-1}x1 - (D_{k-2}/D_{k-1}) (f_{k-1}x1) e_{k-1} (f_{k-1}x1).
inline TLElement jones_wenzl(int n) {
    if (n < 1) throw Error(ErrorCode::INCONSISTENT_INPUT, "jones_wenzl requires n >= 1");
    static std::map<int, TLElement> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    auto embed = [](const TLElement& f) {  // f x 1: add a through strand at the right
        const int k = f.n + 1;
        TLElement r;
        r.n = k;
        for (const auto& [m, c] : f.terms) {
            Matching e;
            e.pair.assign(2 * k, -1);
            auto remap = [&](int p) { return p < k - 1 ? p : k + (p - (k - 1)); };
            for (int p = 0; p < 2 * (k - 1); ++p) e.pair[remap(p)] = remap(m.pair[p]);
            e.pair[k - 1] = 2 * k - 1;
            e.pair[2 * k - 1] = k - 1;
            r.terms.emplace(e, c);
        }
        return r;
    };

    TLElement f = TLElement::identity(1);
    cache.emplace(1, f);
    for (int k = 2; k <= n; ++k) {
        if (cache.count(k)) {
            f = cache[k];
            continue;
        }
        TLElement g = embed(f);
        LaurentRational coeff(delta(k - 2), delta(k - 1));
        TLElement corr = tl_multiply(tl_multiply(g, TLElement::generator(k, k - 1)), g);
        f = g - corr.scaled(coeff);
        cache.emplace(k, f);
    }
    return cache[n];
}

// ---------------------------------------------------------------------------
// Direct state sum
// ---------------------------------------------------------------------------

namespace detail {

inline int env_int(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    return std::atoi(v);
}

inline long env_long(const char* name, long fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    return std::atol(v);
}

inline int num_threads() {
    int t = env_int("SKEINKIT_THREADS", 0);
    if (t > 0) return t;
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : static_cast<int>(h);
}

}  // namespace detail

// Kauffman bracket by summation over all 2^c states; each circle contributes
// a factor delta (so the 0-crossing unknot evaluates to delta itself).
inline LaurentPoly bracket_state_sum(const Diagram& d, int crossing_cap = 24) {
    const int c = d.c();
    if (c > crossing_cap)
        throw Error(ErrorCode::TOO_MANY_CROSSINGS,
                    std::to_string(c) + " crossings exceeds cap " +
                        std::to_string(crossing_cap));
    auto idx = detail::arc_index(d);
    const int arcs = static_cast<int>(idx.size());
    // slot arc indices per crossing, flattened
    std::vector<int> slot(4 * c);
    for (int i = 0; i < c; ++i)
        for (int s = 0; s < 4; ++s) slot[4 * i + s] = idx[d.crossings[i].arcs[s]];

    const int max_circles = arcs + d.extra_circles + 1;
    std::vector<LaurentPoly> delta_pow(max_circles + 1);
    delta_pow[0] = LaurentPoly::one();
    for (int i = 1; i <= max_circles; ++i) delta_pow[i] = delta_pow[i - 1] * loop_value();

    auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
        LaurentPoly acc;
        std::vector<int> parent(arcs);
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            for (int i = 0; i < arcs; ++i) parent[i] = i;
            auto find = [&](int x) {
                while (parent[x] != x) x = parent[x] = parent[parent[x]];
                return x;
            };
            int sgn = 0;
            for (int i = 0; i < c; ++i) {
                const int* t = &slot[4 * i];
                if ((mask >> i) & 1) {  // B-choice
                    parent[find(t[0])] = find(t[3]);
                    parent[find(t[1])] = find(t[2]);
                    --sgn;
                } else {
                    parent[find(t[0])] = find(t[1]);
                    parent[find(t[2])] = find(t[3]);
                    ++sgn;
                }
            }
            int circles = d.extra_circles;
            for (int i = 0; i < arcs; ++i) circles += find(i) == i;
            acc += delta_pow[circles].shifted(sgn);
        }
        return acc;
    };

    const std::uint64_t total = c >= 64 ? 0 : (std::uint64_t{1} << c);
    if (c == 0) return delta_pow[d.extra_circles];
    int threads = detail::num_threads();
    if (threads <= 1 || c < 12) return run_range(0, total);
    threads = std::min<std::uint64_t>(threads, total);
    std::vector<LaurentPoly> partial(threads);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = total / threads;
    for (int t = 0; t < threads; ++t) {
        std::uint64_t lo = t * chunk;
        std::uint64_t hi = (t == threads - 1) ? total : lo + chunk;
        pool.emplace_back([&, t, lo, hi] { partial[t] = run_range(lo, hi); });
    }
    for (auto& th : pool) th.join();
    LaurentPoly acc;
    for (const auto& p : partial) acc += p;
    return acc;
}

// ---------------------------------------------------------------------------
// Slice programs
// ---------------------------------------------------------------------------

struct Slice {
    enum class Kind { Cup, Cap, Cross, Jw };
    Kind kind = Kind::Cup;
    int pos = 0;
    bool upper_over = false;  // Cross: strand entering at pos passes over
    int width = 0;            // Jw: projector width
    int arc = 0;              // annotation: Cup = arc label, Cross = crossing id
};

struct SliceProgram {
    std::vector<Slice> slices;

    // Validates positions and returns the maximal number of open strands.
    int max_width() const {
        int w = 0, peak = 0;
        for (const auto& s : slices) {
            switch (s.kind) {
                case Slice::Kind::Cup:
                    if (s.pos < 0 || s.pos > w)
                        throw Error(ErrorCode::INCONSISTENT_INPUT, "cup out of range");
                    w += 2;
                    break;
                case Slice::Kind::Cap:
                    if (s.pos < 0 || s.pos + 1 >= w)
                        throw Error(ErrorCode::INCONSISTENT_INPUT, "cap out of range");
                    w -= 2;
                    break;
                case Slice::Kind::Cross:
                    if (s.pos < 0 || s.pos + 1 >= w)
                        throw Error(ErrorCode::INCONSISTENT_INPUT, "crossing out of range");
                    break;
                case Slice::Kind::Jw:
                    if (s.pos < 0 || s.width < 1 || s.pos + s.width > w)
                        throw Error(ErrorCode::INCONSISTENT_INPUT, "projector out of range");
                    break;
            }
            peak = std::max(peak, w);
        }
        if (w != 0)
            throw Error(ErrorCode::INCONSISTENT_INPUT, "program leaves open strands");
        return peak;
    }

    std::string to_text() const {
        std::ostringstream out;
        for (const auto& s : slices) {
            switch (s.kind) {
                case Slice::Kind::Cup: out << "cup " << s.pos << "\n"; break;
                case Slice::Kind::Cap: out << "cap " << s.pos << "\n"; break;
                case Slice::Kind::Cross:
                    out << (s.upper_over ? "x+ " : "x- ") << s.pos << "\n";
                    break;
                case Slice::Kind::Jw: out << "jw " << s.width << " " << s.pos << "\n"; break;
            }
        }
        return out.str();
    }

    static SliceProgram from_text(const std::string& text) {
        SliceProgram p;
        std::istringstream in(text);
        std::string word;
        while (in >> word) {
            Slice s;
            if (word == "cup" || word == "cap") {
                s.kind = word == "cup" ? Slice::Kind::Cup : Slice::Kind::Cap;
                if (!(in >> s.pos))
                    throw Error(ErrorCode::INCONSISTENT_INPUT, "bad slice line");
            } else if (word == "x+" || word == "x-") {
                s.kind = Slice::Kind::Cross;
                s.upper_over = word == "x+";
                if (!(in >> s.pos))
                    throw Error(ErrorCode::INCONSISTENT_INPUT, "bad slice line");
            } else if (word == "jw") {
                s.kind = Slice::Kind::Jw;
                if (!(in >> s.width >> s.pos))
                    throw Error(ErrorCode::INCONSISTENT_INPUT, "bad slice line");
            } else {
                throw Error(ErrorCode::INCONSISTENT_INPUT, "unknown slice '" + word + "'");
            }
            p.slices.push_back(s);
        }
        return p;
    }
};

namespace detail {

// Backtracking slicer.  Maintains the ordered list of open arc labels and
// inserts one crossing at a time; a crossing enters rotated so that two
// cyclically-consecutive tuple slots (s, s+1) face the already-swept region,
// with slot s above slot s+1.  The strand entering at the upper position
// goes over exactly when slot s is an over slot (1 or 3).  Arcs whose other
// endpoint is not yet placed are opened with a cup bent around the crossing.
struct Slicer {
    const Diagram& d;
    std::vector<Slice> prog;
    std::vector<int> frontier;
    std::vector<char> placed;
    std::set<int> region_skip;  // crossings excluded from slicing
    long nodes = 0;
    long node_budget = 500000;

    explicit Slicer(const Diagram& dd) : d(dd), placed(dd.c(), 0) {}

    void emit_cross(int p, int s, int ci) {
        Slice sl;
        sl.kind = Slice::Kind::Cross;
        sl.pos = p;
        sl.upper_over = !(s == 0 || s == 2);
        sl.arc = ci;
        prog.push_back(sl);
        const auto& t = d.crossings[ci].arcs;
        frontier[p] = t[(s + 3) % 4];      // upper east
        frontier[p + 1] = t[(s + 2) % 4];  // lower east
    }

    void emit_cup(int p, int arc) {
        Slice sl;
        sl.kind = Slice::Kind::Cup;
        sl.pos = p;
        sl.arc = arc;
        prog.push_back(sl);
        frontier.insert(frontier.begin() + p, 2, arc);
    }

    void cap_scan() {
        bool again = true;
        while (again) {
            again = false;
            for (int i = 0; i + 1 < static_cast<int>(frontier.size()); ++i) {
                if (frontier[i] == frontier[i + 1]) {
                    Slice sl;
                    sl.kind = Slice::Kind::Cap;
                    sl.pos = i;
                    prog.push_back(sl);
                    frontier.erase(frontier.begin() + i, frontier.begin() + i + 2);
                    again = true;
                    break;
                }
            }
        }
    }

    int count_in_frontier(int arc) const {
        return static_cast<int>(std::count(frontier.begin(), frontier.end(), arc));
    }

    int attachment(int ci) const {
        int k = 0;
        for (int arc : d.crossings[ci].arcs) k += count_in_frontier(arc) > 0;
        return k;
    }

    // Applies crossing ci with west slots (s, s+1); q is the insertion anchor
    // for the cases that open new strands with no attachment constraint.
    bool try_place(int ci, int s, int q) {
        const auto& t = d.crossings[ci].arcs;
        const int u = t[s], v = t[(s + 1) % 4];
        auto pos_of = [&](int arc) {
            for (int i = 0; i < static_cast<int>(frontier.size()); ++i)
                if (frontier[i] == arc) return i;
            return -1;
        };
        if (u == v) {  // kink: one arc occupies both west slots
            if (q < 0 || q > static_cast<int>(frontier.size())) return false;
            emit_cup(q, u);
            emit_cross(q, s, ci);
            return true;
        }
        const int pu = pos_of(u), pv = pos_of(v);
        if (pu >= 0 && pv >= 0) {
            if (pv != pu + 1) return false;
            emit_cross(pu, s, ci);
            return true;
        }
        if (pu >= 0) {
            emit_cup(pu + 1, v);
            emit_cross(pu, s, ci);
            return true;
        }
        if (pv >= 0) {
            emit_cup(pv, u);
            emit_cross(pv + 1, s, ci);
            return true;
        }
        if (q < 0 || q > static_cast<int>(frontier.size())) return false;
        emit_cup(q, u);
        emit_cup(q + 2, v);
        emit_cross(q + 1, s, ci);
        return true;
    }

    // anchor candidates for placements that start fresh strands
    std::vector<int> anchors(int ci) const {
        std::vector<int> qs;
        auto push = [&](int q) {
            if (q >= 0 && q <= static_cast<int>(frontier.size()) &&
                std::find(qs.begin(), qs.end(), q) == qs.end())
                qs.push_back(q);
        };
        push(static_cast<int>(frontier.size()));
        push(0);
        for (int arc : d.crossings[ci].arcs)
            for (int i = 0; i < static_cast<int>(frontier.size()); ++i)
                if (frontier[i] == arc) {
                    push(i);
                    push(i + 1);
                }
        return qs;
    }

    bool dfs(int remaining) {
        if (++nodes > node_budget) return false;
        if (remaining == 0) return frontier.empty();

        // concrete placement options, best first: both west arcs already
        // adjacent on the frontier (consumes strands) > one attached (one
        // cup) > kinks > fresh starts (two cups, tried only as a last resort)
        struct Opt {
            int ci, s, q, score;
        };
        std::vector<Opt> opts;
        for (int ci = 0; ci < d.c(); ++ci) {
            if (placed[ci] || region_skip.count(ci)) continue;
            const auto& t = d.crossings[ci].arcs;
            for (int s = 0; s < 4; ++s) {
                const int u = t[s], v = t[(s + 1) % 4];
                if (u == v) {
                    for (int q : anchors(ci)) opts.push_back({ci, s, q, 1});
                    continue;
                }
                const bool au = count_in_frontier(u) > 0;
                const bool av = count_in_frontier(v) > 0;
                if (au && av) {
                    // only viable when adjacent in the right order
                    for (int i = 0; i + 1 < static_cast<int>(frontier.size()); ++i)
                        if (frontier[i] == u && frontier[i + 1] == v) {
                            opts.push_back({ci, s, -1, 3 + attachment(ci)});
                            break;
                        }
                } else if (au || av) {
                    opts.push_back({ci, s, -1, 2});
                } else if (frontier.empty()) {
                    opts.push_back({ci, s, static_cast<int>(frontier.size()), 1});
                } else {
                    for (int q : anchors(ci)) opts.push_back({ci, s, q, 0});
                }
            }
        }
        std::stable_sort(opts.begin(), opts.end(),
                         [](const Opt& a, const Opt& b) { return a.score > b.score; });
        for (const auto& o : opts) {
            auto save_frontier = frontier;
            auto save_prog_len = prog.size();
            if (try_place(o.ci, o.s, o.q)) {
                placed[o.ci] = 1;
                cap_scan();
                if (dfs(remaining - 1)) return true;
                placed[o.ci] = 0;
            }
            frontier = std::move(save_frontier);
            prog.resize(save_prog_len);
        }
        return false;
    }
};

// Slices a diagram (or the part of it outside `skip`), starting from a given
// open frontier of arc labels and ending with an empty frontier.
inline SliceProgram slice_diagram(const Diagram& d, const std::set<int>& skip,
                                  const std::vector<int>& initial_frontier) {
    Slicer sl(d);
    sl.region_skip = skip;
    sl.frontier = initial_frontier;
    sl.cap_scan();
    int remaining = 0;
    for (int i = 0; i < d.c(); ++i) remaining += !skip.count(i);
    if (!sl.dfs(remaining))
        throw Error(ErrorCode::SLICING_FAILED,
                    "no planar slice order found for " +
                        (d.name.empty() ? std::string("diagram") : d.name));
    SliceProgram p;
    p.slices = std::move(sl.prog);
    return p;
}

}  // namespace detail

inline SliceProgram to_slice_program(const Diagram& d) {
    SliceProgram p = detail::slice_diagram(d, {}, {});
    // crossing-free circles become cup/cap pairs
    for (int i = 0; i < d.extra_circles; ++i) {
        Slice cup;
        cup.kind = Slice::Kind::Cup;
        cup.pos = 0;
        cup.arc = -1 - i;
        Slice cap;
        cap.kind = Slice::Kind::Cap;
        cap.pos = 0;
        p.slices.push_back(cup);
        p.slices.push_back(cap);
    }
    return p;
}

inline SliceProgram replace_projectors_with_identity(const SliceProgram& p) {
    SliceProgram r;
    for (const auto& s : p.slices)
        if (s.kind != Slice::Kind::Jw) r.slices.push_back(s);
    return r;
}

namespace detail {

// Strand-connectivity replay: returns, for each cup slice index, a component
// id, plus component ids of the initial frontier strands.
struct ProgramComponents {
    std::map<size_t, int> cup_component;   // slice index -> component root
    std::vector<int> initial_components;   // per initial frontier strand
};

inline ProgramComponents program_components(const SliceProgram& p, int initial_width) {
    std::vector<int> parent;
    auto fresh = [&]() {
        parent.push_back(static_cast<int>(parent.size()));
        return static_cast<int>(parent.size()) - 1;
    };
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<int> frontier;
    std::vector<int> initial_ids;
    for (int i = 0; i < initial_width; ++i) {
        int id = fresh();
        frontier.push_back(id);
        initial_ids.push_back(id);
    }
    std::map<size_t, int> cup_ids;
    for (size_t si = 0; si < p.slices.size(); ++si) {
        const auto& s = p.slices[si];
        switch (s.kind) {
            case Slice::Kind::Cup: {
                int id = fresh();
                cup_ids[si] = id;
                frontier.insert(frontier.begin() + s.pos, 2, id);
                break;
            }
            case Slice::Kind::Cap:
                parent[find(frontier[s.pos])] = find(frontier[s.pos + 1]);
                frontier.erase(frontier.begin() + s.pos, frontier.begin() + s.pos + 2);
                break;
            case Slice::Kind::Cross:
                std::swap(frontier[s.pos], frontier[s.pos + 1]);
                break;
            case Slice::Kind::Jw:
                break;
        }
    }
    ProgramComponents out;
    for (const auto& [si, id] : cup_ids) out.cup_component[si] = find(id);
    for (int id : initial_ids) out.initial_components.push_back(find(id));
    return out;
}

// Core of cable_program: `decorate_cups` lists the slice indices of cups
// right after whose cabled block a width-n projector is inserted.
inline SliceProgram cable_program_impl(const SliceProgram& p, int n,
                                       const std::set<size_t>& decorate_cups) {
    SliceProgram r;
    for (size_t si = 0; si < p.slices.size(); ++si) {
        const auto& s = p.slices[si];
        switch (s.kind) {
            case Slice::Kind::Cup:
                for (int i = 0; i < n; ++i) {
                    Slice c = s;
                    c.pos = n * s.pos + i;
                    r.slices.push_back(c);
                }
                if (decorate_cups.count(si)) {
                    Slice j;
                    j.kind = Slice::Kind::Jw;
                    j.width = n;
                    j.pos = n * s.pos;
                    r.slices.push_back(j);
                }
                break;
            case Slice::Kind::Cap:
                for (int i = 0; i < n; ++i) {
                    Slice c = s;
                    c.pos = n * s.pos + n - 1 - i;
                    r.slices.push_back(c);
                }
                break;
            case Slice::Kind::Cross:
                // braid word moving the lower n-block up through the upper one
                for (int j = 0; j < n; ++j)
                    for (int i = 0; i < n; ++i) {
                        Slice c = s;
                        c.pos = n * s.pos + (n - 1 - i) + j;
                        r.slices.push_back(c);
                    }
                break;
            case Slice::Kind::Jw:
                if (n != 1)
                    throw Error(ErrorCode::INCONSISTENT_INPUT,
                                "cannot cable a program that already has projectors");
                r.slices.push_back(s);
                break;
        }
    }
    return r;
}

}  // namespace detail

// Blackboard-framed n-cable of a slice program.  With decorate, one width-n
// Jones-Wenzl projector is inserted per component of the underlying diagram,
// at that component's first cup.
inline SliceProgram cable_program(const SliceProgram& p, int n, bool decorate) {
    if (n < 0) throw Error(ErrorCode::INCONSISTENT_INPUT, "cable width must be >= 0");
    if (n == 0) return SliceProgram{};
    std::set<size_t> marks;
    if (decorate) {
        auto comp = detail::program_components(p, 0);
        std::set<int> seen;
        for (const auto& [si, root] : comp.cup_component)
            if (seen.insert(root).second) marks.insert(si);
    }
    return detail::cable_program_impl(p, n, marks);
}

// ---------------------------------------------------------------------------
// Sweep evaluation
// ---------------------------------------------------------------------------

namespace detail {

using Frontier = std::vector<int>;  // pairing: partner index per open strand

inline Frontier frontier_cup(const Frontier& f, int q) {
    Frontier r(f.size() + 2);
    for (size_t i = 0; i < f.size(); ++i) {
        int src = static_cast<int>(i), dst = f[i];
        int a = src < q ? src : src + 2;
        int b = dst < q ? dst : dst + 2;
        r[a] = b;
    }
    r[q] = q + 1;
    r[q + 1] = q;
    return r;
}

inline Frontier frontier_cap(const Frontier& f, int q, int& loops) {
    Frontier g = f;
    if (g[q] == q + 1) {
        ++loops;
    } else {
        int a = g[q], b = g[q + 1];
        g[a] = b;
        g[b] = a;
    }
    Frontier r(f.size() - 2);
    for (size_t i = 0; i < f.size(); ++i) {
        int src = static_cast<int>(i);
        if (src == q || src == q + 1) continue;
        int dst = g[src];
        int a = src < q ? src : src - 2;
        int b = dst < q ? dst : dst - 2;
        r[a] = b;
    }
    return r;
}

// Glue an arbitrary crossingless tangle (given as a matching whose bottom
// points attach to frontier positions q..q+m-1 and whose top points become
// the new strands at the same positions) into a frontier pairing.
inline Frontier frontier_glue(const Frontier& f, const Matching& m, int q, int& loops) {
    const int w = static_cast<int>(f.size());
    const int mm = m.points() / 2;
    // nodes: 0..w-1 old strands, w..w+mm-1 new strands
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < w; ++i)
        if (i < f[i]) edges.emplace_back(i, f[i]);
    auto node_of = [&](int p) { return p < mm ? q + p : w + (p - mm); };
    for (int p = 0; p < 2 * mm; ++p)
        if (p < m.pair[p]) edges.emplace_back(node_of(p), node_of(m.pair[p]));
    std::vector<std::vector<int>> adj(w + mm);
    for (size_t e = 0; e < edges.size(); ++e) {
        adj[edges[e].first].push_back(static_cast<int>(e));
        adj[edges[e].second].push_back(static_cast<int>(e));
    }
    auto is_internal = [&](int node) { return node >= q && node < q + mm; };
    auto other_end = [&](int e, int node) {
        return edges[e].first == node ? edges[e].second : edges[e].first;
    };
    std::vector<char> edge_seen(edges.size(), 0);
    auto walk = [&](int start) {
        int e = adj[start][0];
        int node = other_end(e, start);
        edge_seen[e] = 1;
        while (is_internal(node)) {
            e = adj[node][0] == e ? adj[node][1] : adj[node][0];
            edge_seen[e] = 1;
            node = other_end(e, node);
        }
        return node;
    };
    Frontier r(w, -1);
    auto out_pos = [&](int node) { return node < w ? node : q + (node - w); };
    for (int node = 0; node < w + mm; ++node) {
        if (is_internal(node)) continue;
        int p = out_pos(node);
        if (r[p] != -1) continue;
        int partner = walk(node);
        int pp = out_pos(partner);
        r[p] = pp;
        r[pp] = p;
    }
    // unvisited internal edges form closed loops
    for (size_t e = 0; e < edges.size(); ++e) {
        if (edge_seen[e]) continue;
        ++loops;
        int cur = static_cast<int>(e);
        int node = edges[e].second;
        edge_seen[e] = 1;
        while (true) {
            int nxt = adj[node][0] == cur ? adj[node][1] : adj[node][0];
            if (edge_seen[nxt]) break;
            edge_seen[nxt] = 1;
            cur = nxt;
            node = other_end(cur, node);
        }
    }
    return r;
}

}  // namespace detail

// Exact sweep evaluation; rational coefficients appear only through
// projector slices and cancel for closed projector-free programs.
inline LaurentRational bracket_sweep_exact(const SliceProgram& p) {
    const long budget = detail::env_long("SKEINKIT_WIDTH_BUDGET", 208012);
    using State = std::map<detail::Frontier, LaurentRational>;
    State state;
    state.emplace(detail::Frontier{}, LaurentRational::one());
    const LaurentRational dval{loop_value()};
    const LaurentRational A{LaurentPoly::monomial(1)};
    const LaurentRational Ainv{LaurentPoly::monomial(-1)};

    auto mul_loops = [&](LaurentRational c, int loops) {
        for (int i = 0; i < loops; ++i) c *= dval;
        return c;
    };

    int width = 0;
    for (const auto& s : p.slices) {
        State next;
        auto add = [&](const detail::Frontier& f, const LaurentRational& c) {
            if (c.is_zero()) return;
            auto it = next.find(f);
            if (it == next.end()) {
                next.emplace(f, c);
            } else {
                it->second += c;
                if (it->second.is_zero()) next.erase(it);
            }
        };
        switch (s.kind) {
            case Slice::Kind::Cup:
                if (s.pos < 0 || s.pos > width)
                    throw Error(ErrorCode::INCONSISTENT_INPUT, "cup out of range");
                for (const auto& [f, c] : state) add(detail::frontier_cup(f, s.pos), c);
                width += 2;
                break;
            case Slice::Kind::Cap: {
                if (s.pos < 0 || s.pos + 1 >= width)
                    throw Error(ErrorCode::INCONSISTENT_INPUT, "cap out of range");
                for (const auto& [f, c] : state) {
                    int loops = 0;
                    auto g = detail::frontier_cap(f, s.pos, loops);
                    add(g, mul_loops(c, loops));
                }
                width -= 2;
                break;
            }
            case Slice::Kind::Cross: {
                if (s.pos < 0 || s.pos + 1 >= width)
                    throw Error(ErrorCode::INCONSISTENT_INPUT, "crossing out of range");
                const LaurentRational& c_id = s.upper_over ? A : Ainv;
                const LaurentRational& c_cc = s.upper_over ? Ainv : A;
                for (const auto& [f, c] : state) {
                    add(f, c * c_id);
                    int loops = 0;
                    auto g = detail::frontier_cup(detail::frontier_cap(f, s.pos, loops), s.pos);
                    add(g, mul_loops(c * c_cc, loops));
                }
                break;
            }
            case Slice::Kind::Jw: {
                if (s.pos < 0 || s.width < 1 || s.pos + s.width > width)
                    throw Error(ErrorCode::INCONSISTENT_INPUT, "projector out of range");
                TLElement f_n = jones_wenzl(s.width);
                for (const auto& [f, c] : state)
                    for (const auto& [m, tc] : f_n.terms) {
                        int loops = 0;
                        auto g = detail::frontier_glue(f, m, s.pos, loops);
                        add(g, mul_loops(c * tc, loops));
                    }
                break;
            }
        }
        if (static_cast<long>(next.size()) > budget)
            throw Error(ErrorCode::WIDTH_EXCEEDED,
                        std::to_string(next.size()) + " frontier matchings exceed budget " +
                            std::to_string(budget));
        state = std::move(next);
    }
    if (width != 0)
        throw Error(ErrorCode::INCONSISTENT_INPUT, "program leaves open strands");
    if (state.empty()) return LaurentRational::zero();
    return state.begin()->second;
}

inline LaurentPoly bracket_sweep(const SliceProgram& p) {
    return bracket_sweep_exact(p).as_poly();
}

// Closed theta-graph program: three bands of widths a, b, c carrying
// projectors, joined at two trivalent junctions.  Sweeping it reproduces the
// closed form theta(a,b,c).
inline SliceProgram theta_program(int a, int b, int c) {
    require_admissible(a, b, c);
    const int x = (a + c - b) / 2;
    const int y = (b + c - a) / 2;
    const int z = (a + b - c) / 2;
    SliceProgram p;
    auto cup = [&](int q) {
        Slice s;
        s.kind = Slice::Kind::Cup;
        s.pos = q;
        p.slices.push_back(s);
    };
    auto cap = [&](int q) {
        Slice s;
        s.kind = Slice::Kind::Cap;
        s.pos = q;
        p.slices.push_back(s);
    };
    auto jw = [&](int n, int q) {
        if (n == 0) return;
        Slice s;
        s.kind = Slice::Kind::Jw;
        s.width = n;
        s.pos = q;
        p.slices.push_back(s);
    };
    for (int i = 0; i < x; ++i) cup(i);
    for (int j = 0; j < z; ++j) cup(x + j);
    for (int j = 0; j < y; ++j) cup(x + 2 * z + j);
    jw(a, 0);
    jw(b, a);
    jw(c, a + b);
    for (int j = 0; j < z; ++j) cap(x + z - 1 - j);
    for (int j = 0; j < y; ++j) cap(x + y - 1 - j);
    for (int j = 0; j < x; ++j) cap(x - 1 - j);
    return p;
}

// Plat closure of a single projector; sweeps to Delta_n.
inline SliceProgram projector_closure_program(int n) {
    SliceProgram p;
    for (int i = 0; i < n; ++i) {
        Slice s;
        s.kind = Slice::Kind::Cup;
        s.pos = i;
        p.slices.push_back(s);
    }
    Slice j;
    j.kind = Slice::Kind::Jw;
    j.width = n;
    j.pos = 0;
    p.slices.push_back(j);
    for (int i = n - 1; i >= 0; --i) {
        Slice s;
        s.kind = Slice::Kind::Cap;
        s.pos = i;
        p.slices.push_back(s);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Fusion of twist regions
// ---------------------------------------------------------------------------

// Coefficient of the fused a-term after untwisting r crossings of a twist
// region whose strands carry width-n cables:
//   I(a, r, n) = (Delta_a / theta(n,n,a)) (-1)^{r(n - a/2)} A^{r(2n - a + n^2 - a^2/2)}
inline LaurentRational fusion_coefficient(int a, int r, int n) {
    require_admissible(a, n, n);
    LaurentRational coeff = LaurentRational(delta(a)) / theta(n, n, a);
    const int exp = r * (2 * n - a) + r * n * n - r * (a * a) / 2;
    Int sign = ((r * (n - a / 2)) % 2 == 0) ? 1 : -1;
    return coeff * LaurentRational(LaurentPoly::monomial(exp, sign));
}

struct FusionTerm {
    int a = 0;
    LaurentRational coeff;
    SliceProgram subprogram;
};

// Expands the n-cabled bracket of d across a twist region: the region's
// crossings are removed and replaced by a fused edge of color a joining the
// two cable bundles, for every admissible (a, n, n).  Each subprogram
// evaluates one fused skein element; sum of coeff * bracket over the terms
// equals the decorated n-cable bracket of d.
inline std::vector<FusionTerm> fusion_expand(const Diagram& d,
                                             const std::vector<int>& region, int n,
                                             int direction_hint = +1) {
    if (region.empty())
        throw Error(ErrorCode::NOT_A_TWIST_REGION, "empty region");
    std::set<int> rset(region.begin(), region.end());
    if (rset.size() != region.size() || *rset.begin() < 0 || *rset.rbegin() >= d.c())
        throw Error(ErrorCode::NOT_A_TWIST_REGION, "bad crossing indices");
    const int r_len = static_cast<int>(rset.size());

    // boundary arcs: occur exactly once among the region's slots
    std::map<int, int> occ;
    for (int ci : rset)
        for (int arc : d.crossings[ci].arcs) ++occ[arc];
    std::vector<int> boundary;
    for (const auto& [arc, k] : occ) {
        if (k == 1) boundary.push_back(arc);
        if (k > 2) throw Error(ErrorCode::NOT_A_TWIST_REGION, "arc multiplicity");
    }
    if (boundary.size() != 4)
        throw Error(ErrorCode::NOT_A_TWIST_REGION,
                    "region has " + std::to_string(boundary.size()) +
                        " boundary arcs, expected 4");

    // All-A smoothing of the region decides the twist handedness: if it joins
    // the boundary arcs end-to-end in pairs the capped direction is the fused
    // one (r > 0); if the region smooths to through strands, r < 0.
    std::map<int, int> aidx;
    for (const auto& [arc, k] : occ) aidx.emplace(arc, static_cast<int>(aidx.size()));
    detail::UnionFind uf(static_cast<int>(aidx.size()));
    for (int ci : rset) {
        const auto& t = d.crossings[ci].arcs;
        uf.unite(aidx[t[0]], aidx[t[1]]);
        uf.unite(aidx[t[2]], aidx[t[3]]);
    }
    int r_signed;
    std::array<int, 4> ordered{};  // [T1, T2, B2, B1] for the gadget
    if (r_len == 1) {
        r_signed = direction_hint >= 0 ? 1 : -1;
        const auto& t = d.crossings[*rset.begin()].arcs;
        if (r_signed > 0) {
            // fuse across the A-capped direction: pairs (t0,t1), (t2,t3)
            ordered = {t[0], t[1], t[2], t[3]};
        } else {
            ordered = {t[1], t[2], t[3], t[0]};
        }
    } else {
        // the chain's two end crossings each hold two of the boundary arcs
        std::vector<std::pair<int, int>> ends;
        for (int ci : rset) {
            std::vector<int> own;
            for (int arc : d.crossings[ci].arcs)
                if (occ[arc] == 1) own.push_back(arc);
            if (own.size() == 2)
                ends.push_back({own[0], own[1]});
            else if (!own.empty())
                throw Error(ErrorCode::NOT_A_TWIST_REGION, "not a chain");
        }
        if (ends.size() != 2)
            throw Error(ErrorCode::NOT_A_TWIST_REGION, "not a chain");
        auto root = [&](int arc) { return uf.find(aidx[arc]); };
        const bool across = root(ends[0].first) == root(ends[0].second) &&
                            root(ends[1].first) == root(ends[1].second);
        const bool through = root(ends[0].first) == root(ends[1].first) ||
                             root(ends[0].first) == root(ends[1].second);
        if (across == through)
            throw Error(ErrorCode::NOT_A_TWIST_REGION, "mixed smoothing pattern");
        r_signed = across ? r_len : -r_len;
        ordered = {ends[0].first, ends[0].second, ends[1].first, ends[1].second};
    }

    // components of d that avoid the region still need their own projector
    std::map<int, int> darc;
    for (const auto& x : d.crossings)
        for (int arc : x.arcs)
            if (!darc.count(arc)) darc.emplace(arc, static_cast<int>(darc.size()));
    detail::UnionFind comp(static_cast<int>(darc.size()));
    for (const auto& x : d.crossings) {
        comp.unite(darc[x.arcs[0]], darc[x.arcs[2]]);
        comp.unite(darc[x.arcs[1]], darc[x.arcs[3]]);
    }
    std::set<int> region_comps;
    for (int arc : boundary) region_comps.insert(comp.find(darc[arc]));

    // slice the complement, trying the dihedral reorderings of the bundle
    // layout until one planarizes
    std::optional<SliceProgram> complement;
    std::array<int, 4> layout{};
    auto try_order = [&](std::array<int, 4> o) {
        if (complement) return;
        try {
            complement = detail::slice_diagram(d, rset, {o[0], o[1], o[2], o[3]});
            layout = o;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SLICING_FAILED) throw;
        }
    };
    const auto [p1, p2, p3, p4] = ordered;
    try_order({p1, p2, p3, p4});
    try_order({p2, p1, p4, p3});
    try_order({p4, p3, p2, p1});
    try_order({p3, p4, p1, p2});
    try_order({p1, p2, p4, p3});
    try_order({p2, p1, p3, p4});
    try_order({p3, p4, p2, p1});
    try_order({p4, p3, p1, p2});
    if (!complement)
        throw Error(ErrorCode::SLICING_FAILED, "could not slice twist-region complement");

    // projectors for components missed by the gadget
    auto pcomp = detail::program_components(*complement, 4);
    std::set<int> covered;
    for (int root : pcomp.initial_components) covered.insert(root);
    std::set<size_t> decorate;
    std::set<int> seen_roots = covered;
    for (const auto& [si, root] : pcomp.cup_component)
        if (seen_roots.insert(root).second) decorate.insert(si);
    SliceProgram cabled = detail::cable_program_impl(*complement, n, decorate);

    std::vector<FusionTerm> out;
    for (int a = 2 * n % 2; a <= 2 * n; a += 2) {
        if (!admissible_triple(a, n, n)) continue;
        FusionTerm term;
        term.a = a;
        term.coeff = fusion_coefficient(a, r_signed, n);
        SliceProgram& sp = term.subprogram;
        auto cup = [&](int q) {
            Slice s;
            s.kind = Slice::Kind::Cup;
            s.pos = q;
            sp.slices.push_back(s);
        };
        auto jw = [&](int w, int q) {
            if (w == 0) return;
            Slice s;
            s.kind = Slice::Kind::Jw;
            s.width = w;
            s.pos = q;
            sp.slices.push_back(s);
        };
        const int h = a / 2, z = n - h;
        // fused edge bent around the sweep start
        for (int i = 0; i < a; ++i) cup(i);
        jw(a, 0);
        // upper junction: a-edge top half + z bridging strands -> bundles 1,2
        for (int j = 0; j < z; ++j) cup(h + j);
        jw(n, 0);
        jw(n, n);
        // lower junction on the a-edge's other half -> bundles 3,4
        for (int j = 0; j < z; ++j) cup(2 * n + h + j);
        jw(n, 2 * n);
        jw(n, 3 * n);
        for (const auto& s : cabled.slices) sp.slices.push_back(s);
        out.push_back(std::move(term));
    }
    return out;
}

}  // namespace skeinkit
