#include <catch_amalgamated.hpp>

#include <qomp/ltseries.hpp>

#include <random>

using namespace qomp;

namespace
{

LTPoly mono(long l, long t, long c = 1)
{
    return LTPoly::monomial(l, t, Int(c));
}

const LPoly Lm1 = LPoly::monomial(1) - LPoly(1);

} // namespace

TEST_CASE("LPoly exact division by 1 - L^a")
{
    LPoly p = LPoly(1) - LPoly::monomial(6);
    LPoly q;
    REQUIRE(p.divide_one_minus(2, q));
    CHECK(q == LPoly(1) + LPoly::monomial(2) + LPoly::monomial(4));
    REQUIRE(p.divide_one_minus(-3, q));
    CHECK(q * (LPoly(1) - LPoly::monomial(-3)) == p);
    CHECK_FALSE(LPoly(1).divide_one_minus(1, q));
    CHECK_FALSE((LPoly(1) + LPoly::monomial(1)).divide_one_minus(2, q));
}

TEST_CASE("BivRat identities")
{
    BivRat x = BivRat::with_factors(mono(3, 2, 5), {{1, 1}, {0, 3}});
    CHECK((x + BivRat()).equals(x));
    CHECK((x * BivRat(LTPoly(1))).equals(x));
    CHECK_FALSE(x.equals(x + BivRat(mono(0, 1))));

    // 1/(1-T) + (L-1)T/((1-LT)(1-T)) = 1/(1-LT)
    BivRat lhs = one_over(0, 1) + BivRat::with_factors(LTPoly(Lm1) * mono(0, 1), {{1, 1}, {0, 1}});
    CHECK(lhs.equals(one_over(1, 1)));

    // different spellings of 1/(1-LT)
    BivRat alt = BivRat::with_factors(LTPoly(1) + mono(1, 1), {{2, 2}});
    CHECK(alt.equals(one_over(1, 1)));
}

TEST_CASE("curve series product")
{
    BivRat t2 = BivRat::with_factors(mono(0, 2), {{0, 2}});
    BivRat curve = t2 * BivRat::with_factors(LTPoly(Lm1), {{1, 1}});
    BivRat direct = BivRat::with_factors(LTPoly(Lm1) * mono(0, 2), {{1, 1}, {0, 2}});
    CHECK(curve.equals(direct));
}

TEST_CASE("expand")
{
    auto c = one_over(2, 1).expand(3);
    REQUIRE(c.size() == 4);
    CHECK(c[0] == LPoly(1));
    CHECK(c[1] == LPoly::monomial(2));
    CHECK(c[2] == LPoly::monomial(4));
    CHECK(c[3] == LPoly::monomial(6));

    // a constant factor must divide out
    BivRat ok = BivRat::with_factors(LTPoly(LPoly(1) - LPoly::monomial(3)) * mono(0, 1), {{3, 0}, {0, 1}});
    auto e = ok.expand(3);
    CHECK(e[0].is_zero());
    CHECK(e[2] == LPoly(1));
    BivRat bad = BivRat::with_factors(LTPoly(1), {{3, 0}});
    CHECK_THROWS_AS(bad.expand(2), Error);
}

TEST_CASE("reference surface interior series starts at T^4 with (L-1)^2")
{
    auto lm1sq = LTPoly(Lm1 * Lm1);
    BivRat inner = BivRat::with_factors(mono(13, 17), {{1, 1}, {12, 16}}) +
                   BivRat::with_factors(mono(2, 6) + mono(4, 8) + mono(6, 10) + mono(8, 12) + mono(10, 14) + mono(12, 20),
                                        {{12, 16}, {0, 4}}) +
                   BivRat::with_factors(mono(2, 4) + mono(4, 8), {{0, 4}, {4, 4}}) +
                   BivRat::with_factors(mono(12, 16), {{12, 16}}) + BivRat::with_factors(mono(0, 4), {{0, 4}});
    BivRat p = BivRat::with_factors(lm1sq, {{2, 1}}) * inner;
    auto c = p.expand(5);
    for (int s = 0; s < 4; ++s) {
        CHECK(c[static_cast<std::size_t>(s)].is_zero());
    }
    CHECK(c[4] == Lm1 * Lm1 * (LPoly(1) + LPoly::monomial(2)));
}

TEST_CASE("expand of a product is the Cauchy product")
{
    BivRat x = BivRat::with_factors(mono(1, 0) + mono(0, 2, -3), {{1, 2}, {0, 1}});
    BivRat y = BivRat::with_factors(mono(2, 1), {{3, 3}});
    const long n = 10;
    auto cx = x.expand(n), cy = y.expand(n), cxy = (x * y).expand(n);
    for (long s = 0; s <= n; ++s) {
        LPoly acc;
        for (long i = 0; i <= s; ++i) {
            acc += cx[static_cast<std::size_t>(i)] * cy[static_cast<std::size_t>(s - i)];
        }
        CHECK(acc == cxy[static_cast<std::size_t>(s)]);
    }
}

TEST_CASE("ring laws on random inputs")
{
    std::mt19937 rng(7);
    auto rnd_poly = [&]() {
        LTPoly p;
        std::uniform_int_distribution<int> e(0, 4), c(-3, 3);
        for (int i = 0; i < 3; ++i) {
            p.add_term(e(rng), e(rng) - 1, Int(c(rng)));
        }
        return p;
    };
    auto rnd = [&]() {
        std::uniform_int_distribution<int> a(0, 3), b(1, 3);
        return BivRat::with_factors(rnd_poly(), {{a(rng), b(rng)}, {a(rng), b(rng)}});
    };
    for (int i = 0; i < 50; ++i) {
        auto x = rnd(), y = rnd(), z = rnd();
        CHECK(((x + y) + z).equals(x + (y + z)));
        CHECK(((x * y) * z).equals(x * (y * z)));
        CHECK((x * (y + z)).equals(x * y + x * z));
        CHECK((x - x).is_zero());
    }
}

TEST_CASE("try_cancel")
{
    BivRat x = BivRat::with_factors(LTPoly(1) - mono(2, 1), {{2, 1}, {0, 1}});
    REQUIRE(x.try_cancel({2, 1}));
    CHECK(x.equals(one_over(0, 1)));
    CHECK(x.denominator().size() == 1);
    BivRat y = one_over(1, 1);
    CHECK_FALSE(y.try_cancel({1, 1}));
}

TEST_CASE("reconstruct_numerator")
{
    FactorMultiset geo{{{0, 1}, 1}};
    CHECK(reconstruct_numerator(one_over(0, 1).expand(6), geo, 4) == LTPoly(1));

    FactorMultiset den{{{1, 1}, 1}, {{0, 2}, 1}};
    BivRat x(mono(0, 2), den);
    CHECK(reconstruct_numerator(x.expand(12), den, 4) == mono(0, 2));

    CHECK_THROWS_AS(reconstruct_numerator(one_over(1, 1).expand(12), geo, 4), Error);

    BivRat y(mono(3, 1) - mono(1, 4, 2), den);
    CHECK(reconstruct_numerator(y.expand(14), den, 2 * y.max_den_b()) == y.numerator());
}

TEST_CASE("LVolRat")
{
    // 1/(1-L) written with negative exponents
    auto v = LVolRat::from_positive_factors(LPoly(1), {1});
    CHECK(v.denominator().at(1) == 1);
    CHECK(v.numerator() == -LPoly::monomial(-1));
    auto w = LVolRat(LPoly(1) + LPoly::monomial(-1), {{2, 1}});
    CHECK(w.equals(LVolRat(LPoly(1), {{1, 1}})));
    CHECK((v + w).equals(w + v));
}
