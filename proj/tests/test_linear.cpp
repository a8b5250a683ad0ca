#include <doctest.h>

#include <random>
#include <set>

#include "delannoy/linear.hpp"
#include "oracles.hpp"

using namespace delannoy;

namespace {

GSet R(int n) { return GSet::single(OrbitSymbol::basic(1, 0, n)); }

Morphism basis_word(int a, int b, const std::string& w, int idx) {
    Component z{{0, 0}, {parse_word(w, 2)}};
    return Morphism::basis(R(a), R(b), MeasureSpec::single(idx), z);
}

GSetMap omission(int n, int i) {
    return GSetMap{R(n), R(n - 1), {{0, TransitiveMap{R(n)[0], R(n - 1)[0], {OIInjection::omit(n, i)}}}}};
}

}  // namespace

TEST_SUITE("linear") {

TEST_CASE("hom dimensions are Delannoy numbers") {
    for (int n = 0; n <= 4; ++n)
        for (int m = 0; m <= 4; ++m) CHECK(hom_basis(R(n), R(m)).size() == oracle::delannoy(n, m));
}

TEST_CASE("word composition matches the brute-force fiber sum") {
    for (int idx = 1; idx <= 4; ++idx) {
        auto b = base_values(idx);
        for (int c = 0; c <= 2; ++c)
            for (int bb = 0; bb <= 2; ++bb)
                for (int a = 0; a <= 2; ++a)
                    for (auto& w : merge_patterns(c, bb))
                        for (auto& v : merge_patterns(bb, a)) {
                            auto want = oracle::compose(w.word, v.word, b.v1, b.v21, b.v22);
                            std::map<std::string, long> got;
                            for (auto& [word, k] : compose_words(parse_word(w.word, 2), parse_word(v.word, 2), idx))
                                if (k) got[word_text(word, 2)] += k;
                            CAPTURE(w.word);
                            CAPTURE(v.word);
                            CHECK(got == want);
                        }
    }
}

TEST_CASE("morphism composition agrees with word composition") {
    for (int idx = 1; idx <= 4; ++idx) {
        auto b = base_values(idx);
        for (auto& w : merge_patterns(2, 2))
            for (auto& v : merge_patterns(2, 1)) {
                Morphism g = basis_word(2, 2, w.word, idx);
                Morphism f = basis_word(1, 2, v.word, idx);
                Morphism h = compose(g, f);
                auto want = oracle::compose(w.word, v.word, b.v1, b.v21, b.v22);
                CHECK(h.coeffs.size() == want.size());
                for (auto& [k, val] : h.coeffs) CHECK(val == Scalar(want[k.text()]));
                CHECK(h.valid());
            }
    }
}

TEST_CASE("laws on a small range") {
    for (int idx = 1; idx <= 4; ++idx) {
        auto r = check_category_laws(MeasureSpec::single(idx), 2);
        CHECK_MESSAGE(r.pass, r.counterexample);
        CHECK(r.triples > 0);
    }
}

TEST_CASE("pushforward after pullback along an OI map is multiplication by its measure") {
    for (int idx = 1; idx <= 4; ++idx) {
        MeasureSpec m = MeasureSpec::single(idx);
        for (int n = 1; n <= 3; ++n)
            for (int i = 1; i <= n; ++i) {
                GSetMap p = omission(n, i);
                Morphism ab = compose(pushforward(p, m), pullback(p, m));
                CHECK(ab == Morphism::identity(R(n - 1), m).scaled(Scalar(mu_omission_int(n, i, idx))));
            }
    }
}

TEST_CASE("transpose reverses composition and traces are dimensions") {
    MeasureSpec m = MeasureSpec::single(1);
    for (auto& w : merge_patterns(2, 1))
        for (auto& v : merge_patterns(1, 2)) {
            Morphism g = basis_word(1, 2, w.word, 1);
            Morphism f = basis_word(2, 1, v.word, 1);
            CHECK(transpose(compose(g, f)) == compose(transpose(f), transpose(g)));
            CHECK(trace(compose(g, f)) == trace(compose(f, g)));
        }
    for (int n = 0; n <= 4; ++n)
        for (int idx = 1; idx <= 4; ++idx) {
            MeasureSpec mi = MeasureSpec::single(idx);
            CHECK(trace(Morphism::identity(R(n), mi)) == dim(R(n), mi));
            CHECK(dim(R(n), mi) == Scalar(mu_symbol_int(R(n)[0], mi)));
        }
    (void)m;
}

TEST_CASE("tensor products are functorial") {
    MeasureSpec m = MeasureSpec::single(2);
    Morphism f1 = basis_word(1, 1, "LR", 2), f2 = basis_word(1, 1, "B", 2);
    Morphism g1 = basis_word(1, 2, "LB", 2), g2 = basis_word(2, 1, "BR", 2);
    CHECK(compose(tensor(f1, g1), tensor(f2, g2)) == tensor(compose(f1, f2), compose(g1, g2)));
    CHECK(tensor(Morphism::identity(R(1), m), Morphism::identity(R(2), m)) ==
          Morphism::identity(tensor(Morphism::identity(R(1), m), Morphism::identity(R(2), m)).source, m));
}

TEST_CASE("direct sums are block diagonal") {
    MeasureSpec m = MeasureSpec::single(1);
    Morphism f = basis_word(1, 2, "LB", 1), g = basis_word(2, 1, "BR", 1);
    Morphism s = direct_sum(f, g);
    CHECK(s.source == concat(R(1), R(2)));
    CHECK(s.target == concat(R(2), R(1)));
    CHECK(s.coeffs.size() == 2);
    (void)m;
}

TEST_CASE("the Schwartz space of a G-set is a commutative Frobenius algebra") {
    for (int idx = 1; idx <= 4; ++idx) {
        MeasureSpec m = MeasureSpec::single(idx);
        GSet x = concat(R(1), R(2));
        auto A = algebra_structure(x, m);
        Morphism id = Morphism::identity(x, m);
        CHECK(compose(A.mult, tensor(A.unit, id)).coeffs.size() == id.coeffs.size());
        // associativity, up to the regrouping of X x X x X: both sides are
        // supported on the triple diagonal
        Morphism l = compose(A.mult, tensor(A.mult, id));
        Morphism r = compose(A.mult, tensor(id, A.mult));
        auto shape = [](const Morphism& f) {
            std::multiset<std::string> out;
            for (auto& [k, v] : f.coeffs)
                out.insert(f.source[k.parents[1]].str() + ">" + f.target[k.parents[0]].str() + ":" + k.text() + "=" + v.str());
            return out;
        };
        CHECK(l.valid());
        CHECK(r.valid());
        CHECK(shape(l) == shape(r));
        CHECK(l.coeffs.size() == x.size());
    }
}

TEST_CASE("Gram matrices pair Z with its transpose, weighted by the orbit measure") {
    for (int idx = 1; idx <= 4; ++idx) {
        MeasureSpec m = MeasureSpec::single(idx);
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; b <= 3; ++b) {
                auto zs = hom_basis(R(a), R(b));
                auto ws = hom_basis(R(b), R(a));
                Matrix g = gram_matrix(R(a), R(b), m);
                REQUIRE(g.rows == zs.size());
                REQUIRE(g.cols == ws.size());
                std::vector<std::vector<mpq_class>> want(zs.size(), std::vector<mpq_class>(ws.size(), 0));
                for (std::size_t i = 0; i < zs.size(); ++i)
                    for (std::size_t j = 0; j < ws.size(); ++j) {
                        if (ws[j] == zs[i].transposed()) want[i][j] = mu_symbol_int(zs[i].ambient(), m);
                        CHECK(g.at(i, j) == Scalar(want[i][j].get_num().get_si()));
                    }
                CHECK(rank(g) == oracle::rank(want));
            }
    }
}

TEST_CASE("left inverses") {
    MeasureSpec m1 = MeasureSpec::single(1);
    auto id = solve_left_inverse(Morphism::identity(R(2), m1));
    REQUIRE(id.witness);
    CHECK(*id.witness == Morphism::identity(R(2), m1));
    // the pullback along R -> 1 is split in C1 (dim R = -1 is invertible) but not in C2
    GSetMap to_pt = GSetMap::to_point(R(1));
    auto a = solve_left_inverse(pullback(to_pt, m1));
    CHECK(a.witness.has_value());
    auto b = solve_left_inverse(pullback(to_pt, MeasureSpec::single(2)));
    CHECK_FALSE(b.witness.has_value());
    CHECK_FALSE(b.certificate.empty());
}

TEST_CASE("prime field coefficients") {
    Field f5{5};
    MeasureSpec m{{1}, f5};
    Morphism f = basis_word(1, 1, "B", 1);
    f.measure = m;
    Morphism g = f.scaled(Scalar(3, f5));
    CHECK((g + g).coeff(Component{{0, 0}, {parse_word("B", 2)}}) == Scalar(1, f5));
    auto r = check_category_laws(m, 1);
    CHECK(r.pass);
}

}  // TEST_SUITE

TEST_SUITE("linear") {

TEST_CASE("associativity on random basis triples up to R^(5)") {
    std::mt19937 rng(20261019);
    std::uniform_int_distribution<int> ar(0, 5);
    for (int idx = 1; idx <= 4; ++idx) {
        MeasureSpec m = MeasureSpec::single(idx);
        for (int rep = 0; rep < 25; ++rep) {
            int a = ar(rng), b = ar(rng), c = ar(rng), d = ar(rng);
            auto pick = [&](int s, int t) {
                auto basis = hom_basis(R(s), R(t));
                std::uniform_int_distribution<std::size_t> k(0, basis.size() - 1);
                return Morphism::basis(R(s), R(t), m, basis[k(rng)]);
            };
            Morphism f = pick(a, b), g = pick(b, c), h = pick(c, d);
            CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
        }
    }
}

}  // TEST_SUITE
