#include <catch_amalgamated.hpp>

#include <random>

#include <qomp/genfun.hpp>

#include "test_support.hpp"

using namespace qomp;
using qomp::test::iv;
using qomp::test::rv;

namespace
{

Lattice diag(long a, long b)
{
    return Lattice::from_generators({RatVec{Rat(a), Rat(0)}, RatVec{Rat(0), Rat(b)}}, 2);
}

LTPoly mono(long l, long t)
{
    return LTPoly::monomial(l, t);
}

} // namespace

TEST_CASE("closed series of simplicial cones")
{
    auto z2 = Lattice::standard(2);
    auto unimod = triangulate(orthant(2));
    auto cs = closed_cone_series(unimod[0], z2);
    CHECK(cs.numerator == MonomialSum{{rv({"0", "0"}), 1}});

    auto ray = triangulate(Cone::from_rays(2, {iv({1, 1})}));
    auto cr = closed_cone_series(ray[0], diag(4, 2));
    CHECK(cr.numerator == MonomialSum{{rv({"0", "0"}), 1}});
    CHECK(cr.rays == std::vector<RatVec>{rv({"4", "4"})});

    auto wide = triangulate(Cone::from_rays(2, {iv({1, 0}), iv({1, 2})}));
    auto cw = closed_cone_series(wide[0], z2);
    CHECK(cw.numerator == MonomialSum{{rv({"0", "0"}), 1}, {rv({"1", "1"}), 1}});

    CHECK_THROWS_AS(closed_cone_series(SimplicialPiece{Cone::from_rays(3, {iv({1, 0, 0}), iv({0, 1, 0}),
                                                                           iv({1, 0, 1}), iv({0, 1, 1})}),
                                                       {}},
                                       Lattice::standard(3)),
                    Error);
}

TEST_CASE("relint series")
{
    auto ray = relint_cone_series(Cone::from_rays(2, {iv({1, 2})}), Lattice::standard(2));
    CHECK(ray.numerator == MonomialSum{{rv({"1", "2"}), 1}});
    auto quad = relint_cone_series(orthant(2), Lattice::standard(2));
    CHECK(quad.numerator == MonomialSum{{rv({"1", "1"}), 1}});
}

TEST_CASE("substitutions")
{
    ConeSeries single{{{rv({"4", "16"}), 1}}, {rv({"4", "16"})}};
    // Ψ_2 = ord_2 - 2 ord_1 and φ_2 = ord_2 - ord_1 with ord_1 = <ν,e1>, ord_2 = <ν,(1,1)>
    BivRat b = substitute_LT(single, rv({"-1", "1"}), rv({"0", "1"}));
    CHECK(b.equals(BivRat::with_factors(mono(12, 16), {{12, 16}})));

    ConeSeries t4{{{rv({"4", "0"}), 1}}, {rv({"4", "0"})}};
    CHECK(substitute_LT(t4, rv({"0", "0"}), rv({"1", "0"})).equals(BivRat::with_factors(mono(0, 4), {{0, 4}})));
    CHECK(substitute_LT(ConeSeries{{}, {rv({"1", "0"})}}, rv({"0", "0"}), rv({"1", "0"})).is_zero());
    CHECK_THROWS_AS(substitute_LT(t4, rv({"0", "0"}), rv({"0", "1"})), Error);

    ConeSeries vol{{{rv({"4", "16"}), 1}}, {rv({"4", "16"})}};
    LVolRat v = substitute_L(vol, rv({"0", "-5/4"}));
    CHECK(v.equals(LVolRat(LPoly::monomial(-20), {{20, 1}})));
    CHECK(substitute_L(ConeSeries{{}, {}}, rv({"1"})).numerator().is_zero());
    CHECK_THROWS_AS(substitute_L(vol, rv({"0", "1"})), Error);
}

TEST_CASE("closed equals the sum of relint series over faces")
{
    Cone c = Cone::from_rays(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 0, 2}), iv({0, 1, 3})});
    Lattice n = Lattice::from_generators({rv({"1", "0", "0"}), rv({"0", "2", "0"}), rv({"1", "1", "1"})}, 3);
    ConeSeries closed = closed_cone_series(c, n);
    MonomialSum sum;
    for (const auto &f : c.faces()) {
        ConeSeries r = relint_cone_series(f, n);
        MonomialSum num = r.numerator;
        for (const auto &ray : c.rays()) {
            if (!std::binary_search(f.rays().begin(), f.rays().end(), ray)) {
                num = times_one_minus(num, primitive_in(ray, n));
            }
        }
        for (const auto &[u, x] : num) {
            add_monomial(sum, u, x);
        }
    }
    CHECK(sum == closed.numerator);
}

TEST_CASE("substitution commutes with expansion")
{
    Cone c = Cone::from_rays(2, {iv({1, 0}), iv({1, 3})});
    Lattice n = diag(2, 1);
    ConeSeries cs = relint_cone_series(c, n);
    const RatVec a = rv({"1/2", "-1"}), b = rv({"1/2", "1"});
    BivRat sub = substitute_LT(cs, a, b);
    const long order = 10;
    auto coeffs = sub.expand(order);
    std::vector<LPoly> direct(order + 1);
    for (const auto &[u, x] : expand_in_box(cs, Rat(4 * order))) {
        const long t = to_long(dot(u, b));
        if (t <= order) {
            direct[static_cast<std::size_t>(t)].add_term(to_long(dot(u, a)), x);
        }
    }
    for (long s = 0; s <= order; ++s) {
        CHECK(coeffs[static_cast<std::size_t>(s)] == direct[static_cast<std::size_t>(s)]);
    }
}
