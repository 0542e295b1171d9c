// End-to-end acceptance run: exercises the full pipeline against its
// mathematical ground truth and prints one PASS/FAIL line per criterion.
// Usage: acceptance [fixtures.csv]

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "skeinkit/bounds.hpp"
#include "skeinkit/fixtures.hpp"
#include "skeinkit/generators.hpp"
#include "skeinkit/jones.hpp"

using namespace skeinkit;

namespace {

const char* kTrefoilPd = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
const char* kFig8Pd = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";

struct Ctx {
    bool ok = true;
    std::string note;

    void require(bool cond, const std::string& what) {
        if (cond) return;
        ok = false;
        if (!note.empty()) note += "; ";
        note += what;
    }
    void annotate(const std::string& what) {
        if (!note.empty()) note += "; ";
        note += what;
    }
};

LaurentRational rat(const LaurentPoly& p) { return LaurentRational(p); }

// --- criterion 1: exactness of the skein kernel ---------------------------

void kernel_exactness(Ctx& c) {
    for (int n = 1; n <= 8; ++n)
        c.require(tl_closure(jones_wenzl(n)) == rat(delta(n)),
                  "projector closure != delta at n=" + std::to_string(n));
    for (int n = 1; n <= 6; ++n) {
        TLElement f = jones_wenzl(n);
        c.require(tl_multiply(f, f) == f, "projector not idempotent at n=" +
                                              std::to_string(n));
        for (int i = 1; i < n; ++i) {
            c.require(tl_multiply(f, TLElement::generator(n, i)).terms.empty() &&
                          tl_multiply(TLElement::generator(n, i), f).terms.empty(),
                      "projector fails to annihilate e_" + std::to_string(i));
        }
    }
    for (int a = 0; a <= 5; ++a)
        for (int b = 0; b <= 5; ++b)
            for (int t = 0; t <= 5; ++t) {
                if (!admissible_triple(a, b, t)) continue;
                c.require(bracket_sweep_exact(theta_program(a, b, t)) == theta(a, b, t),
                          "theta sweep mismatch");
            }
}

// --- criterion 2: sweep engine against the naive state sum -----------------

void bracket_oracle(Ctx& c, const std::vector<FixtureRecord>& fixtures) {
    int covered = 0;
    for (const auto& r : fixtures) {
        if (r.diagram.c() > 10) continue;
        ++covered;
        c.require(bracket_sweep(to_slice_program(r.diagram)) ==
                      bracket_state_sum(r.diagram),
                  "sweep != state sum on " + r.name);
    }
    c.require(covered == static_cast<int>(fixtures.size()),
              "some fixtures exceed 10 crossings");
}

// --- criterion 3: closed-form degrees on adequate fixtures -----------------

void adequate_degrees(Ctx& c, const std::vector<FixtureRecord>& fixtures) {
    int count = 0;
    for (const auto& r : fixtures) {
        if (!r.adequate) continue;
        ++count;
        const Diagram& d = r.diagram;
        AdequacyReport rep = adequacy(d);
        DegreePredictors p =
            adequate_degree_formulas(d.c_plus(), d.c_minus(), rep.v_A, rep.v_B);
        DegreeQuadratic env = span_envelope(d.c(), turaev_genus(d));
        for (int n = 2; n <= 4; ++n) {
            DegreeSpan s = degree_span(d, n);
            c.require(4 * s.d_plus == p.bottom.value(n),
                      "max degree off closed form on " + r.name);
            c.require(4 * s.d_minus == p.top.value(n),
                      "min degree off closed form on " + r.name);
            c.require(Rational(s.span) == env.value(n),
                      "span off the envelope on " + r.name);
        }
    }
    c.require(count >= 10, "need at least 10 adequate fixtures, have " +
                               std::to_string(count));
}

// --- criterion 4: degree gap on non-adequate diagrams ----------------------

void inadequacy_gap(Ctx& c, const std::vector<FixtureRecord>& fixtures) {
    int count = 0;
    for (const auto& r : fixtures) {
        if (r.adequate) continue;
        ++count;
        auto rows = gap_report(r.diagram, 3);
        int prev = 0;
        for (const auto& g : rows) {
            c.require(g.gap > prev, "gap not strictly increasing on " + r.name);
            prev = g.gap;
        }
        if (r.diagram.c() == 1) {
            for (const auto& g : rows)
                c.require(g.gap == 2 * g.n * g.n + 2 * g.n,
                          "kinked unknot gap != 2n^2+2n at n=" + std::to_string(g.n));
        }
    }
    c.require(count >= 5, "need at least 5 non-adequate fixtures, have " +
                              std::to_string(count));
}

// --- criterion 5: Whitehead double pipeline --------------------------------

void double_pipeline(Ctx& c) {
    Diagram f8 = parse_pd(kFig8Pd);
    Diagram w = whitehead_double(f8, -1);
    c.require(w.c() == 18, "double crossing count != 18");
    c.require(w.c_plus() == 8, "double c_plus != 8");
    AdequacyReport wrep = adequacy(w);
    c.require(wrep.b_adequate, "double not B-adequate");
    c.require(wrep.v_B == 7, "double v_B != 7");

    // predictor from the companion's degrees vs the closed form on the
    // constructed diagram
    AdequacyReport rep = adequacy(f8);
    DegreeQuadratic bottom =
        adequate_degree_formulas(f8.c_plus(), f8.c_minus(), rep.v_A, rep.v_B).bottom;
    DegreeQuadratic predicted = bmt_double_predictor(
        {bottom.a2 / 4, bottom.a1 / 4, bottom.a0 / 4}, -1);
    c.require(predicted == DegreeQuadratic{Rational(4), Rational(-11, 2), Rational(3, 2)},
              "predictor != (4, -11/2, 3/2)");
    DegreeQuadratic wbottom =
        adequate_degree_formulas(w.c_plus(), w.c_minus(), wrep.v_A, wrep.v_B).bottom;
    c.require(predicted ==
                  DegreeQuadratic{wbottom.a2 / 4, wbottom.a1 / 4, wbottom.a0 / 4},
              "predictor disagrees with the constructed diagram");

    CrossingNumberVerdict v =
        crossing_number_criterion(w.c(), Rational(8 * f8.c() + 2), false);
    c.require(v.determined && v.c_K == 18, "criterion does not pin 18 crossings");

    // direct color-2 invariant of the 18-crossing double
    try {
        const int wr = w.writhe();
        LaurentPoly j2 =
            LaurentPoly::monomial(-3 * wr, wr % 2 ? -1 : 1) * bracket_state_sum(w);
        const Rational d_plus = Rational(-max_min_degree(j2).min_deg, 4);
        c.require(d_plus == predicted.value(2),
                  "direct color-2 max degree off the prediction");
    } catch (const Error& e) {
        if (e.code() == ErrorCode::WIDTH_EXCEEDED ||
            e.code() == ErrorCode::TOO_MANY_CROSSINGS)
            c.annotate(std::string("direct n=2 check SKIPPED: ") + e.what());
        else
            throw;
    }
}

// --- criterion 6: connected sums -------------------------------------------

void connected_sums(Ctx& c) {
    Diagram t = parse_pd(kTrefoilPd);
    Diagram f = parse_pd(kFig8Pd);
    Diagram s = connected_sum(t, f);

    for (int n = 2; n <= 3; ++n)
        c.require(reduced(colored_jones(s, n)) ==
                      reduced(colored_jones(t, n)) * reduced(colored_jones(f, n)),
                  "reduced polynomial not multiplicative at n=" + std::to_string(n));

    auto span_of = [](const Diagram& d) {
        AdequacyReport rep = adequacy(d);
        DegreePredictors p =
            adequate_degree_formulas(d.c_plus(), d.c_minus(), rep.v_A, rep.v_B);
        return DegreeQuadratic{(p.bottom.a2 - p.top.a2) / 4,
                               (p.bottom.a1 - p.top.a1) / 4,
                               (p.bottom.a0 - p.top.a0) / 4};
    };
    DegreeQuadratic span_sum =
        connected_sum_degree(span_of(t), span_of(f), QuadraticKind::span);
    for (int n = 2; n <= 3; ++n) {
        DegreeSpan sn = degree_span(s, n);
        c.require(span_sum.value(n) == sn.d_plus - sn.d_minus,
                  "span coefficients not additive with the -1 correction");
    }

    std::vector<std::pair<Diagram, Diagram>> pairs;
    pairs.push_back({t, f});
    pairs.push_back({t, torus_2(5)});
    pairs.push_back({f, rational_knot({3, 2})});
    for (const auto& [a, b] : pairs)
        c.require(jones_diameter(connected_sum(a, b)).diameter ==
                      jones_diameter(a).diameter + jones_diameter(b).diameter,
                  "diameter not additive under connected sum");
}

// --- criterion 7: combinatorial lemmas -------------------------------------

// random closed decorated crossingless program (no crossings)
SliceProgram random_decorated_program(std::mt19937& rng, int max_jw) {
    SliceProgram p;
    int width = 0;
    auto cup = [&](int q) {
        Slice s;
        s.kind = Slice::Kind::Cup;
        s.pos = q;
        p.slices.push_back(s);
        width += 2;
    };
    auto cap = [&](int q) {
        Slice s;
        s.kind = Slice::Kind::Cap;
        s.pos = q;
        p.slices.push_back(s);
        width -= 2;
    };
    int steps = 4 + static_cast<int>(rng() % 8);
    for (int i = 0; i < steps; ++i) {
        int what = rng() % 3;
        if (what == 0 || width == 0) {
            cup(static_cast<int>(rng() % (width + 1)));
        } else if (what == 1 && width >= 2) {
            cap(static_cast<int>(rng() % (width - 1)));
        } else if (width >= 1) {
            Slice s;
            s.kind = Slice::Kind::Jw;
            s.width = 1 + static_cast<int>(rng() % std::min(max_jw, width));
            s.pos = static_cast<int>(rng() % (width - s.width + 1));
            p.slices.push_back(s);
        }
    }
    while (width > 0) cap(static_cast<int>(rng() % std::max(1, width - 1)));
    return p;
}

void combinatorial_lemmas(Ctx& c) {
    // minimal partitions: parts differing by at most one minimize the sum of
    // squares among all s-part compositions of k (exhaustive for k, s <= 12)
    for (int k = 0; k <= 12; ++k)
        for (int s = 1; s <= 12; ++s) {
            auto parts = minimal_partition(k, s);
            long best = 0;
            int total = 0;
            for (int x : parts) {
                best += static_cast<long>(x) * x;
                total += x;
            }
            c.require(total == k && static_cast<int>(parts.size()) == s,
                      "partition does not sum to k with s parts");
            // enumerate compositions of k into s nonnegative parts
            std::vector<int> comp(s, 0);
            comp[s - 1] = k;
            while (true) {
                long sq = 0;
                for (int x : comp) sq += static_cast<long>(x) * x;
                c.require(sq >= best, "a composition beats the minimal partition");
                // next composition in colex order
                int i = s - 1;
                while (i > 0 && comp[i] == 0) --i;
                if (i == 0) break;
                int v = comp[i];
                comp[i] = 0;
                comp[i - 1] += 1;
                comp[s - 1] = v - 1;
            }
        }

    // cabled crossing: a state of the n-cable with 2k through strands makes
    // at least k^2 B-choices (exhaustive, n <= 4)
    for (int n = 1; n <= 4; ++n) {
        std::vector<int> word;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) word.push_back((n - 1 - i) + j + 1);
        const int nc = n * n;
        for (int mask = 0; mask < (1 << nc); ++mask) {
            Matching m = Matching::identity(2 * n);
            int b_choices = 0;
            for (int sidx = 0; sidx < nc; ++sidx) {
                if ((mask >> sidx) & 1) {
                    ++b_choices;
                    continue;
                }
                Matching e =
                    TLElement::generator(2 * n, word[sidx]).terms.begin()->first;
                m = detail::compose_matchings(e, m, 2 * n).first;
            }
            int k = count_through_strands(m) / 2;
            c.require(b_choices >= k * k, "cable state beats the k^2 bound");
        }
    }

    // stripping projectors never lowers the bracket degree (500 randomized
    // decorated crossingless programs, projector width <= 4)
    std::mt19937 rng(20240823);
    int checked = 0;
    for (int trial = 0; trial < 500; ++trial) {
        SliceProgram p = random_decorated_program(rng, 4);
        LaurentRational full = bracket_sweep_exact(p);
        if (full.is_zero()) continue;
        LaurentRational bare = bracket_sweep_exact(replace_projectors_with_identity(p));
        c.require(!bare.is_zero() && full.degree() <= bare.degree(),
                  "projector removal lowered the degree");
        ++checked;
    }
    c.require(checked > 100, "too few nonzero randomized programs");

    // a fused edge of color a forced through only 2k < a strands vanishes:
    // throttle each fused subprogram right above its projector and check the
    // bracket is exactly zero
    struct Case {
        Diagram d;
        std::vector<int> region;
        int max_n;
    };
    std::vector<Case> cases;
    cases.push_back({parse_pd(kTrefoilPd), {0}, 2});
    cases.push_back({torus_2(3), {0, 1}, 3});
    cases.push_back({parse_pd(kFig8Pd), {0}, 2});
    int throttled = 0;
    for (const auto& cs : cases) {
        for (int n = 1; n <= cs.max_n; ++n) {
            for (const auto& term : fusion_expand(cs.d, cs.region, n)) {
                if (term.a < 2) continue;
                // locate the fused edge's projector
                size_t at = term.subprogram.slices.size();
                for (size_t i = 0; i < term.subprogram.slices.size(); ++i) {
                    const Slice& s = term.subprogram.slices[i];
                    if (s.kind == Slice::Kind::Jw && s.width == term.a) {
                        at = i;
                        break;
                    }
                }
                c.require(at < term.subprogram.slices.size(),
                          "fused subprogram has no projector of its color");
                if (at >= term.subprogram.slices.size()) continue;
                const int pos = term.subprogram.slices[at].pos;
                for (int j = 1; 2 * j <= term.a; ++j) {
                    // j caps then j cups at the projector's left edge leave
                    // only a - 2j strands passing through
                    SliceProgram mod = term.subprogram;
                    std::vector<Slice> ins;
                    for (int i = 0; i < j; ++i) {
                        Slice s;
                        s.kind = Slice::Kind::Cap;
                        s.pos = pos;
                        ins.push_back(s);
                    }
                    for (int i = 0; i < j; ++i) {
                        Slice s;
                        s.kind = Slice::Kind::Cup;
                        s.pos = pos;
                        ins.push_back(s);
                    }
                    mod.slices.insert(mod.slices.begin() + at + 1, ins.begin(),
                                      ins.end());
                    c.require(bracket_sweep_exact(mod).is_zero(),
                              "throttled fused edge did not vanish");
                    ++throttled;
                }
            }
        }
    }
    c.require(throttled > 0, "no fusion terms were throttled");
}

// --- criterion 8: span envelope over every fixture -------------------------

void envelope_sweep(Ctx& c, const std::vector<FixtureRecord>& fixtures) {
    for (const auto& r : fixtures) {
        DegreeQuadratic env = span_envelope(r.diagram.c(), turaev_genus(r.diagram));
        for (int n = 2; n <= 4; ++n) {
            const Rational sp = Rational(degree_span(r.diagram, n).span);
            c.require(sp <= env.value(n), "span exceeds the envelope on " + r.name);
            if (r.adequate)
                c.require(sp == env.value(n),
                          "adequate fixture below the envelope: " + r.name);
            else
                c.require(sp < env.value(n),
                          "non-adequate fixture attains the envelope: " + r.name);
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    const std::string fixtures_path = argc > 1 ? argv[1] : "data/fixtures.csv";
    std::vector<FixtureRecord> fixtures;
    try {
        fixtures = load_fixtures_file(fixtures_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "cannot load fixtures: %s\n", e.what());
        return 2;
    }

    struct Criterion {
        std::string label;
        std::function<void(Ctx&)> run;
    };
    std::vector<Criterion> criteria = {
        {"skein kernel exactness (closures, idempotence, theta values)",
         kernel_exactness},
        {"sweep engine matches the naive state sum on every fixture",
         [&](Ctx& c) { bracket_oracle(c, fixtures); }},
        {"closed-form degrees and spans on adequate fixtures, n = 2..4",
         [&](Ctx& c) { adequate_degrees(c, fixtures); }},
        {"strictly growing cable degree gap on non-adequate fixtures",
         [&](Ctx& c) { inadequacy_gap(c, fixtures); }},
        {"Whitehead double pipeline pins the 18-crossing diagram",
         double_pipeline},
        {"connected sums: multiplicativity, span additivity, diameter additivity",
         connected_sums},
        {"combinatorial bounds: partitions, cable states, projector degrees, "
         "throttled fusions",
         combinatorial_lemmas},
        {"degree span never exceeds the envelope; equality iff adequate",
         [&](Ctx& c) { envelope_sweep(c, fixtures); }},
    };

    bool all_pass = true;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Ctx c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].run(c);
        } catch (const std::exception& e) {
            c.ok = false;
            c.note = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        std::printf("%s  %zu  %s  (%.1fs)%s%s\n", c.ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].label.c_str(), secs, c.note.empty() ? "" : "  -- ",
                    c.note.c_str());
        std::fflush(stdout);
        all_pass = all_pass && c.ok;
    }
    return all_pass ? 0 : 1;
}
