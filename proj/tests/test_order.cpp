#include <doctest.h>

#include <functional>
#include <set>

#include "delannoy/order.hpp"
#include "oracles.hpp"

using namespace delannoy;

namespace {

// A concrete point of a single-factor ordered G-set: an orbit and an
// increasing tuple of rationals (integers suffice for small samples).
struct Pt {
    std::uint32_t orbit;
    std::vector<int> t;
};

bool model_less(const OrderedGSet& o, const Pt& p, const Pt& q) {
    Component c{{p.orbit, q.orbit}, {parse_word(oracle::word(p.t, q.t), 2)}};
    return o.contains(c);
}

std::vector<std::vector<int>> increasing(int n, int lo, int hi) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int from) {
        if (static_cast<int>(cur.size()) == n) {
            out.push_back(cur);
            return;
        }
        for (int v = from; v <= hi; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(lo);
    return out;
}

// Checks the stored relation against an intended strict order on samples.
void agree(const OrderedGSet& o, const std::vector<Pt>& pts, const std::function<bool(const Pt&, const Pt&)>& want) {
    for (auto& p : pts)
        for (auto& q : pts) {
            bool same = p.orbit == q.orbit && p.t == q.t;
            bool l = model_less(o, p, q);
            CHECK(l == (!same && want(p, q)));
        }
}

int component_index(const std::vector<Component>& comps, const std::string& w) {
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (comps[i].words[0] == parse_word(w, 2)) return static_cast<int>(i);
    return -1;
}

}  // namespace

TEST_SUITE("order") {

TEST_CASE("the generator is the usual order on R") {
    OrderedGSet r = ordered_gen(1, 0);
    std::vector<Pt> pts;
    for (int v = 1; v <= 5; ++v) pts.push_back({0, {v}});
    agree(r, pts, [](const Pt& p, const Pt& q) { return p.t[0] < q.t[0]; });
    agree(reverse(r), pts, [](const Pt& p, const Pt& q) { return p.t[0] > q.t[0]; });
}

TEST_CASE("lexicographic sum puts the left summand first") {
    OrderedGSet s = evaluate(parse_expr("sum(R,1)"), 1);
    REQUIRE(s.carrier.size() == 2);
    std::vector<Pt> pts{{1, {}}};
    for (int v = 1; v <= 4; ++v) pts.push_back({0, {v}});
    agree(s, pts, [](const Pt& p, const Pt& q) {
        if (p.orbit != q.orbit) return p.orbit < q.orbit;
        return p.orbit == 0 && p.t[0] < q.t[0];
    });
}

TEST_CASE("lexicographic product of R with itself") {
    OrderedGSet o = evaluate(parse_expr("prod(R,R)"), 1);
    GSet r = GSet::single(OrbitSymbol::basic(1, 0, 1));
    auto comps = product_decompose({r, r});
    REQUIRE(o.carrier.size() == comps.size());
    // concrete (a, b) in R x R
    std::vector<std::pair<int, int>> raw;
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b) raw.push_back({a, b});
    std::vector<Pt> pts;
    for (auto [a, b] : raw) {
        std::set<int> vals{a, b};
        int idx = component_index(comps, oracle::word({a}, {b}));
        REQUIRE(idx >= 0);
        pts.push_back({static_cast<std::uint32_t>(idx), std::vector<int>(vals.begin(), vals.end())});
    }
    for (std::size_t i = 0; i < raw.size(); ++i)
        for (std::size_t j = 0; j < raw.size(); ++j) CHECK(model_less(o, pts[i], pts[j]) == (raw[i] < raw[j]));
}

TEST_CASE("tuple powers in lexicographic and colexicographic order") {
    OrderedGSet lex = tuples_ordered(ordered_gen(1, 0), 2);
    OrderedGSet colex = tuples_ordered(ordered_gen(1, 0), 2, {2, 1});
    REQUIRE(lex.carrier.size() == 1);
    std::vector<Pt> pts;
    for (auto& t : increasing(2, 1, 5)) pts.push_back({0, t});
    agree(lex, pts, [](const Pt& p, const Pt& q) { return p.t < q.t; });
    agree(colex, pts, [](const Pt& p, const Pt& q) {
        return std::make_pair(p.t[1], p.t[0]) < std::make_pair(q.t[1], q.t[0]);
    });
}

TEST_CASE("sampled orders are strict total orders") {
    for (auto* text : {"sum(R,1)", "prod(sum(1,R),R)", "tup(sum(R,R),2)", "rev(prod(R,tup(R,2)))", "sum(prod(R,R),rev(R))"}) {
        CAPTURE(text);
        OrderedGSet o = evaluate(parse_expr(text), 1);
        CHECK(verify(o).pass);
        std::vector<Pt> pts;
        for (std::uint32_t i = 0; i < o.carrier.size(); ++i)
            for (auto& t : increasing(o.carrier[i][0], 1, 4)) pts.push_back({i, t});
        for (auto& p : pts)
            for (auto& q : pts) {
                bool same = p.orbit == q.orbit && p.t == q.t;
                int n = model_less(o, p, q) + model_less(o, q, p) + same;
                CHECK(n == 1);
                if (model_less(o, p, q))
                    for (auto& s : pts)
                        if (model_less(o, q, s)) CHECK(model_less(o, p, s));
            }
    }
}

TEST_CASE("verify rejects relations that are not total orders") {
    OrderedGSet r = ordered_gen(1, 0);
    OrderedGSet both = r;
    for (auto& c : reverse(r).less) both.less.insert(c);
    CHECK_FALSE(verify(both).pass);
    OrderedGSet none{r.carrier, {}};
    CHECK_FALSE(verify(none).pass);
    CHECK(verify(ordered_unit(1)).pass);
    CHECK(verify(ordered_zero(1)).pass);
}

TEST_CASE("tuples of the lexicographic R^(2) at n = 2") {
    OrderedGSet r2 = tuples_ordered(ordered_gen(1, 0), 2);
    TuplePower t = tuples(r2, 2);
    std::multiset<int> got;
    for (auto& o : t.gset.orbits) got.insert(o[0]);
    CHECK(got == std::multiset<int>{4, 4, 4, 3, 3, 3});
}

TEST_CASE("tuple powers of R are single orbits, of finite things eventually empty") {
    for (int n = 0; n <= 5; ++n) {
        TuplePower t = tuples(ordered_gen(1, 0), n);
        REQUIRE(t.gset.size() == 1);
        CHECK(t.gset[0] == OrbitSymbol::basic(1, 0, n));
    }
    OrderedGSet three = evaluate(parse_expr("sum(1,sum(1,1))"), 1);
    CHECK(tuples(three, 3).gset.size() == 1);
    CHECK(tuples(three, 4).gset.empty());
    auto fl = finite_like(three, 6);
    CHECK(fl.finite);
    CHECK(fl.n == 4);
    CHECK_FALSE(finite_like(ordered_gen(1, 0), 6).finite);
    CHECK(structurally_infinite(parse_expr("sum(1,R)")));
    CHECK_FALSE(structurally_infinite(parse_expr("sum(1,tup(1,1))")));
    CHECK_FALSE(structurally_infinite(parse_expr("tup(R,0)")));
}

TEST_CASE("tuple power maps compose like OI maps") {
    OrderedGSet a = evaluate(parse_expr("sum(R,1)"), 1);
    TuplePower t3 = tuples(a, 3), t2 = tuples(a, 2), t1 = tuples(a, 1);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 2; ++j) {
            GSetMap f = t3.along(OIInjection::omit(3, i), t2);
            GSetMap g = t2.along(OIInjection::omit(2, j), t1);
            GSetMap h = t3.along(OIInjection::omit(3, i).after(OIInjection::omit(2, j)), t1);
            GSetMap fg = f.then(g);
            REQUIRE(fg.assign.size() == h.assign.size());
            for (std::size_t k = 0; k < h.assign.size(); ++k) {
                CHECK(fg.assign[k].target == h.assign[k].target);
                CHECK(fg.assign[k].map == h.assign[k].map);
            }
        }
}

TEST_CASE("order schemes partition the power") {
    CHECK(total_preorders(3).size() == 13);
    CHECK(total_preorders(4).size() == 75);
    for (auto* text : {"R", "sum(R,1)", "prod(R,R)"}) {
        OrderedGSet o = evaluate(parse_expr(text), 1);
        for (int s = 1; s <= 3; ++s) {
            std::set<Component> seen;
            std::size_t total = 0;
            for (auto& S : total_preorders(s))
                for (auto& c : order_scheme_subobject(o, S)) {
                    ++total;
                    seen.insert(c);
                }
            CHECK(seen.size() == total);
            CHECK(total == product_decompose(std::vector<GSet>(s, o.carrier)).size());
        }
    }
    // the strict chain on R gives R^(s)
    auto c = order_scheme_subobject(ordered_gen(1, 0), Preorder::chain(3));
    REQUIRE(c.size() == 1);
    CHECK(c[0].ambient() == OrbitSymbol::basic(1, 0, 3));
}

TEST_CASE("ordered isomorphisms") {
    OrderedGSet a = evaluate(parse_expr("sum(R,1)"), 1);
    OrderedGSet b = evaluate(parse_expr("sum(1,R)"), 1);
    CHECK(ordered_iso(a, a).has_value());
    CHECK_FALSE(ordered_iso(a, b).has_value());
    CHECK(ordered_iso(reverse(a), evaluate(parse_expr("sum(1,rev(R))"), 1)).has_value());
    CHECK_FALSE(ordered_iso(reverse(a), b).has_value());
    CHECK(ordered_iso(reverse(reverse(b)), b).has_value());
    // associativity of lexicographic sums and products up to isomorphism
    CHECK(ordered_iso(evaluate(parse_expr("sum(sum(R,1),R)"), 1), evaluate(parse_expr("sum(R,sum(1,R))"), 1)));
    CHECK(ordered_iso(evaluate(parse_expr("prod(prod(R,R),R)"), 1), evaluate(parse_expr("prod(R,prod(R,R))"), 1)));
    // distributivity on the right: (A + B) x C = A x C + B x C
    CHECK(ordered_iso(evaluate(parse_expr("prod(sum(R,1),R)"), 1),
                      evaluate(parse_expr("sum(prod(R,R),prod(1,R))"), 1)));
}

TEST_CASE("restriction keeps the induced order") {
    OrderedGSet a = evaluate(parse_expr("sum(sum(R,1),R)"), 1);
    OrderedGSet r = restrict_to(a, {2, 0});
    CHECK(r.carrier.size() == 2);
    CHECK(verify(r).pass);
    CHECK(ordered_iso(r, evaluate(parse_expr("sum(R,R)"), 1)).has_value());
    CHECK_THROWS_AS(restrict_to(a, {0, 0}), std::invalid_argument);
}

TEST_CASE("expression parser") {
    auto e = parse_expr("sum(R@2, tup(rev(R), 3, 2,1,3))");
    CHECK(e->str() == "sum(R@2,tup(rev(R),3,2,1,3))");
    CHECK(e->max_factor() == 1);
    CHECK(e->size() == 5);
    try {
        parse_expr("sum(R,");
        FAIL("expected a parse error");
    } catch (const ParseError& err) {
        CHECK(err.position == 7);
    }
    CHECK_THROWS_AS(parse_expr("tup(R,2,1,1)"), ParseError);
    CHECK_THROWS_AS(parse_expr("foo(R)"), ParseError);
    CHECK_THROWS_AS(parse_expr("R@0"), ParseError);
}

TEST_CASE("evaluation over two factors and substitution") {
    OrderedGSet a = evaluate(parse_expr("sum(R@1,R@2)"), 2);
    CHECK(a.carrier.size() == 2);
    CHECK(verify(a).pass);
    Substitution s{{0, evaluate(parse_expr("sum(R,1)"), 1)}};
    OrderedGSet b = evaluate(parse_expr("tup(R,2)"), 1, {}, &s);
    CHECK(ordered_iso(b, tuples_ordered(evaluate(parse_expr("sum(R,1)"), 1), 2)).has_value());
}

TEST_CASE("budgets stop runaway evaluation") {
    EvalLimits tiny{10, 100};
    CHECK_THROWS_AS(evaluate(parse_expr("tup(prod(R,R),3)"), 1, tiny), BudgetExceeded);
}

}  // TEST_SUITE
