#include <doctest.h>

#include "delannoy/delannic.hpp"

using namespace delannoy;

namespace {

DelannicProfile prof(const std::string& e, int mu, GammaConvention conv = GammaConvention::Slot) {
    return profile(evaluate(parse_expr(e), 1), MeasureSpec::single(mu), conv);
}

std::vector<Scalar> ints(std::initializer_list<long> v) {
    std::vector<Scalar> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

// one representative per type, in mu_1
const char* kRep[5] = {"", "R", "sum(R,1)", "sum(1,R)", "sum(sum(1,R),1)"};

}  // namespace

TEST_SUITE("delannic") {

TEST_CASE("the generator of C_i has type i") {
    for (int i = 1; i <= 4; ++i) {
        auto p = prof("R", i);
        CHECK(type_index(p.type) == i);
        auto row = type_row(i);
        CHECK(p.dim == Scalar(row[0]));
        CHECK(p.g1 == Scalar(row[1]));
        CHECK(p.g2 == Scalar(row[2]));
    }
}

TEST_CASE("profile examples") {
    auto p = prof("sum(R,1)", 1);
    CHECK(p.type == DelType::T2);
    CHECK(p.dim == Scalar(0));
    CHECK(p.g1 == Scalar(-1));
    CHECK(p.g2 == Scalar(0));
    for (int i = 1; i <= 4; ++i) {
        auto u = prof("1", i);
        CHECK(u.type == DelType::T4);
        CHECK(u.dim == Scalar(1));
        CHECK(prof("0", i).type == DelType::Zero);
    }
    for (auto conv : {GammaConvention::Slot, GammaConvention::Elementwise}) {
        auto q = prof("sum(R,R)", 1, conv);
        CHECK(q.type == DelType::NotDelannic);
        CHECK_FALSE(q.note.empty());
    }
    CHECK(prof("sum(R,R)", 1, GammaConvention::Elementwise).gamma1 == ints({-2, -1}));
}

TEST_CASE("representatives cover the four types") {
    for (int i = 1; i <= 4; ++i) CHECK(type_index(prof(kRep[i], 1).type) == i);
}

TEST_CASE("sum and product tables agree with computed profiles") {
    auto m = MeasureSpec::single(1);
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            CAPTURE(i);
            CAPTURE(j);
            auto a = evaluate(parse_expr(kRep[i]), 1), b = evaluate(parse_expr(kRep[j]), 1);
            auto s = profile(lex_sum(a, b), m);
            auto want = type_add(i, j);
            if (want) CHECK(type_index(s.type) == *want);
            else CHECK(s.type == DelType::NotDelannic);
            int got = type_index(profile(lex_prod(a, b), m).type);
            CHECK(got == type_mul(i, j));
        }
}

TEST_CASE("power table agrees with computed profiles") {
    auto m = MeasureSpec::single(1);
    for (int i = 1; i <= 4; ++i)
        for (int n = 0; n <= 3; ++n) {
            CAPTURE(i);
            CAPTURE(n);
            auto p = profile(tuples_ordered(evaluate(parse_expr(kRep[i]), 1), n), m);
            CHECK(type_index(p.type) == type_lambda(n, i));
        }
}

TEST_CASE("the exchanged power table is inconsistent with the sum table") {
    // sum(1,R) in mu_2 has type 4; its square splits as sum(R, tup(R,2)),
    // which the sum table types as 2 + lambda_2(2).
    auto m = MeasureSpec::single(2);
    auto a = evaluate(parse_expr("sum(1,R)"), 1);
    REQUIRE(profile(a, m).type == DelType::T4);
    auto sq = profile(tuples_ordered(a, 2), m);
    CHECK(type_index(sq.type) == 2);
    CHECK(type_lambda(2, 4) == 2);
    auto split = type_add(2, type_lambda(2, 2));
    REQUIRE(split.has_value());
    CHECK(*split == type_index(sq.type));
    // 3 in place of 2 at lambda_2(4) could never come out of 2 + x
    for (int x = 1; x <= 4; ++x) CHECK(type_add(2, x).value_or(0) != 3);
}

TEST_CASE("one plus four is two") {
    auto m = MeasureSpec::single(1);
    auto a = evaluate(parse_expr("sum(R,1)"), 1);
    CHECK(type_add(1, 4) == 2);
    CHECK(profile(a, m, GammaConvention::Slot).type == DelType::T2);
    // Under the other convention the same object is not typed as 2.
    CHECK(profile(a, m, GammaConvention::Elementwise).type != DelType::T2);
}

TEST_CASE("sum lemma") {
    auto m = MeasureSpec::single(1);
    auto u = evaluate(parse_expr("1"), 1);
    auto el = gamma_lexsum_identity_check(u, u, m, GammaConvention::Elementwise);
    CHECK(el.pass);
    CHECK(el.lhs1 == ints({1, 0}));
    auto sl = gamma_lexsum_identity_check(u, u, m, GammaConvention::Slot);
    CHECK(sl.pass);
    CHECK(sl.lhs2 == ints({1, 0}));
    for (int mu = 1; mu <= 4; ++mu)
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j) {
                auto a = evaluate(parse_expr(kRep[i]), 1), b = evaluate(parse_expr(kRep[j]), 1);
                for (auto conv : {GammaConvention::Slot, GammaConvention::Elementwise}) {
                    auto r = gamma_lexsum_identity_check(a, b, MeasureSpec::single(mu), conv);
                    CHECK_MESSAGE(r.pass, r.detail);
                }
            }
}

TEST_CASE("expression enumeration counts") {
    // leaves 0, 1, R; unary rev and tup with every permutation of n <= 2
    // (1 + 1 + 2 = 4 of them); binary sum and prod
    CHECK(enumerate_expressions(1, 2).size() == 3);
    CHECK(enumerate_expressions(2, 2).size() == 3 * 5);
    CHECK(enumerate_expressions(3, 2).size() == 15 * 5 + 2 * 9);
}

TEST_CASE("closure at small size") {
    ClosureOptions opt;
    opt.max_size = 3;
    opt.lemma_size = 2;
    opt.max_power = 2;
    auto r = closure_suite(opt);
    CHECK(r.failures.empty());
    CHECK(r.pass);
    CHECK(r.evaluated > 0);
    CHECK(r.lemma_pairs > 0);
    for (auto& f : r.failures) MESSAGE(f);
}

TEST_CASE("profile rejects relations that are not orders") {
    auto r = ordered_gen(1, 0);
    OrderedGSet bad{r.carrier, {}};
    CHECK_THROWS_AS(profile(bad, MeasureSpec::single(1)), std::invalid_argument);
}

}  // TEST_SUITE
