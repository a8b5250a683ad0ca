#include <doctest.h>

#include <climits>

#include "delannoy/matrix.hpp"
#include "delannoy/scalar.hpp"
#include "oracles.hpp"

using namespace delannoy;

TEST_SUITE("scalar") {

TEST_CASE("rationals stay exact past the machine range") {
    Scalar big(LONG_MAX);
    Scalar s = big + Scalar(1);
    CHECK(s.str() == "9223372036854775808");
    CHECK(s - Scalar(1) == big);
    CHECK((s - Scalar(1)).str() == std::to_string(LONG_MAX));
    Scalar p = big * big;
    CHECK(p / big == big);
    CHECK(-Scalar(LONG_MIN) == Scalar(LONG_MAX) + Scalar(1));
    Scalar third = Scalar(1) / Scalar(3);
    CHECK(third.str() == "1/3");
    CHECK(third * Scalar(3) == Scalar(1));
    CHECK((third * Scalar(3)).is_one());
}

TEST_CASE("parsing") {
    Field q;
    CHECK(Scalar::parse("-3/7", q).str() == "-3/7");
    CHECK(Scalar::parse("6/4", q).str() == "3/2");
    CHECK(Scalar::parse("+5", q) == Scalar(5));
    CHECK_THROWS_AS(Scalar::parse("1/0", q), std::invalid_argument);
    CHECK_THROWS_AS(Scalar::parse("x", q), std::invalid_argument);
    CHECK_THROWS_AS(Scalar::parse("", q), std::invalid_argument);
}

TEST_CASE("prime fields") {
    Field f7 = Field::parse("F7");
    CHECK(f7.p == 7);
    CHECK(Field::parse("GF(7)") == f7);
    CHECK(Field::parse("Q").rational());
    CHECK_THROWS_AS(Field::parse("F8"), std::invalid_argument);
    Scalar a = Scalar::parse("-3/7", Field{});
    CHECK_THROWS_AS(a.in(f7), std::domain_error);
    Scalar b = Scalar::parse("3/2", f7);  // 3 * 4 = 12 = 5
    CHECK(b.str() == "5");
    CHECK(b * Scalar(2) == Scalar(3, f7));
    CHECK((Scalar(6, f7) + Scalar(1)).is_zero());
    CHECK_THROWS_AS(Scalar(1, f7) / Scalar(7, f7), std::domain_error);
    CHECK_THROWS_AS(Scalar(1, f7) + Scalar(1, Field{5}), std::domain_error);
}

TEST_CASE("rank agrees with plain elimination") {
    // deterministic pseudo-random small integer matrices, some rank deficient
    unsigned seed = 12345;
    auto next = [&]() {
        seed = seed * 1103515245u + 12345u;
        return static_cast<long>((seed >> 16) % 7) - 3;
    };
    for (int t = 0; t < 40; ++t) {
        std::size_t r = 1 + t % 5, c = 1 + (t / 5) % 6;
        Matrix m(r, c);
        std::vector<std::vector<mpq_class>> q(r, std::vector<mpq_class>(c));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                long v = next();
                if (t % 3 == 0 && i == r - 1 && r > 1) v = 0;  // force some zero rows
                m.at(i, j) = Scalar(v);
                q[i][j] = v;
            }
        if (t % 4 == 1 && r > 1)  // duplicate a row
            for (std::size_t j = 0; j < c; ++j) {
                m.at(1, j) = m.at(0, j);
                q[1][j] = q[0][j];
            }
        CHECK(rank(m) == oracle::rank(q));
    }
}

TEST_CASE("solve returns a solution or a certificate") {
    Matrix a(2, 2);
    a.at(0, 0) = 1;
    a.at(0, 1) = 2;
    a.at(1, 0) = 2;
    a.at(1, 1) = 4;
    auto ok = solve(a, {Scalar(3), Scalar(6)});
    REQUIRE(ok.solvable);
    CHECK(ok.x[0] + Scalar(2) * ok.x[1] == Scalar(3));
    auto bad = solve(a, {Scalar(3), Scalar(7)});
    REQUIRE_FALSE(bad.solvable);
    REQUIRE(bad.certificate.size() == 2);
    CHECK((bad.certificate[0] * Scalar(1) + bad.certificate[1] * Scalar(2)).is_zero());
    CHECK((bad.certificate[0] * Scalar(2) + bad.certificate[1] * Scalar(4)).is_zero());
    CHECK_FALSE((bad.certificate[0] * Scalar(3) + bad.certificate[1] * Scalar(7)).is_zero());
}

}  // TEST_SUITE
