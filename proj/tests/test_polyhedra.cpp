#include <catch_amalgamated.hpp>

#include <random>

#include <qomp/polyhedra.hpp>

#include "test_support.hpp"

using namespace qomp;
using qomp::test::iv;
using qomp::test::rv;

namespace
{

NewtonData surface_j1()
{
    return NewtonData({rv({"1", "0"}), rv({"0", "1"}), rv({"3/2", "0"}), rv({"7/4", "0"}), rv({"2", "1/2"})});
}

NewtonData surface_j2()
{
    return NewtonData({rv({"1", "1"}), rv({"3", "1/2"}), rv({"3/2", "1"}), rv({"7/4", "1"}), rv({"2", "3/2"})});
}

IntMat interior_rays(const Fan &f)
{
    IntMat out;
    for (const auto &r : f.rays()) {
        if (std::all_of(r.begin(), r.end(), [](const Int &x) { return x > 0; })) {
            out.push_back(r);
        }
    }
    return out;
}

} // namespace

TEST_CASE("cone double description")
{
    Cone sq = Cone::from_rays(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 0, 1}), iv({0, 1, 1})});
    CHECK(sq.dim() == 3);
    CHECK(sq.rays().size() == 4);
    CHECK(sq.facet_normals().size() == 4);
    CHECK(sq.faces().size() == 1 + 4 + 4 + 1);
    Cone redundant = Cone::from_rays(2, {iv({1, 0}), iv({0, 1}), iv({1, 1})});
    CHECK(redundant.rays().size() == 2);
    Cone ray = Cone::from_rays(3, {iv({2, 4, 6})});
    CHECK(ray.rays()[0] == iv({1, 2, 3}));
    CHECK(ray.faces().size() == 2);
}

TEST_CASE("support_value and min_generators")
{
    NewtonData nd = surface_j1();
    CHECK(support_value(nd, rv({"0", "0"})) == 0);
    CHECK(min_generators(nd, rv({"0", "0"})).size() == nd.generators.size());
    CHECK(support_value(nd, rv({"4", "4"})) == 4);
    CHECK_THROWS_AS(support_value(NewtonData{}, rv({"1"})), Error);

    NewtonData j2({rv({"1", "1", "0"}), rv({"1/2", "3/2", "0"}), rv({"1/2", "1/2", "1"}), rv({"3/2", "1/2", "0"}),
                   rv({"1", "0", "1"}), rv({"0", "1", "1"}), rv({"3/2", "1/2", "1/4"}), rv({"1/2", "3/2", "1/4"}),
                   rv({"1/2", "1/2", "5/4"})});
    const RatVec nu = rv({"4", "2", "8"});
    CHECK(support_value(j2, nu) == 5);
    auto arg = min_generators(j2, nu);
    bool found = false;
    for (auto i : arg) {
        found = found || j2.generators[i] == rv({"1/2", "3/2", "0"});
    }
    CHECK(found);
}

TEST_CASE("dual fans of the surface example")
{
    Fan single = dual_fan(NewtonData({rv({"1", "2"})}), 2);
    CHECK(single.maximal().size() == 1);
    CHECK(single.maximal()[0] == orthant(2));

    Fan s1 = dual_fan(surface_j1(), 2);
    CHECK(interior_rays(s1) == IntMat{iv({1, 1})});
    Fan s2 = dual_fan(surface_j2(), 2);
    CHECK(interior_rays(s2) == IntMat{iv({1, 4})});

    Fan r = refine({s1, s2});
    CHECK(interior_rays(r) == IntMat{iv({1, 1}), iv({1, 4})});
    CHECK(refine({s1}) == s1);
    CHECK(refine({r, r}) == r);
}

TEST_CASE("primitive_in")
{
    Lattice n = Lattice::from_generators({rv({"4", "0"}), rv({"0", "2"})}, 2);
    CHECK(primitive_in(rv({"1", "1"}), Lattice::standard(2)) == rv({"1", "1"}));
    CHECK(primitive_in(rv({"1", "1"}), n) == rv({"4", "4"}));
    CHECK(primitive_in(rv({"1", "4"}), n) == rv({"4", "16"}));
}

TEST_CASE("relative interiors")
{
    CHECK(relint_contains(orthant(3), rv({"1", "1", "1"})));
    CHECK_FALSE(relint_contains(orthant(3), rv({"1", "0", "1"})));
    CHECK(relint_in_interior(Cone::from_rays(2, {iv({1, 4})})));
    CHECK_FALSE(relint_in_interior(Cone::from_rays(2, {iv({1, 0})})));
}

TEST_CASE("triangulate")
{
    auto simp = triangulate(Cone::from_rays(2, {iv({1, 0}), iv({1, 2})}));
    REQUIRE(simp.size() == 1);
    CHECK(std::none_of(simp[0].open.begin(), simp[0].open.end(), [](bool b) { return b; }));

    Cone sq = Cone::from_rays(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 0, 1}), iv({0, 1, 1})});
    auto pieces = triangulate(sq);
    REQUIRE(pieces.size() == 2);
    int open = 0;
    for (const auto &p : pieces) {
        open += static_cast<int>(std::count(p.open.begin(), p.open.end(), true));
    }
    CHECK(open == 1);
}

TEST_CASE("half-open pieces cover a cone exactly once")
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coord(0, 3);
    for (int trial = 0; trial < 30; ++trial) {
        IntMat rays;
        for (int i = 0; i < 5; ++i) {
            IntVec r{coord(rng), coord(rng), coord(rng) + 1};
            rays.push_back(r);
        }
        Cone c = Cone::from_rays(3, rays);
        auto pieces = triangulate(c);
        for (int x = 0; x <= 4; ++x) {
            for (int y = 0; y <= 4; ++y) {
                for (int z = 0; z <= 4; ++z) {
                    RatVec p{Rat(x), Rat(y), Rat(z)};
                    int count = 0;
                    for (const auto &piece : pieces) {
                        if (!piece.cone.contains(p)) {
                            continue;
                        }
                        bool ok = true;
                        for (std::size_t i = 0; i < piece.open.size(); ++i) {
                            if (piece.open[i] && dot(detail::opposite_normal(piece.cone, i), p) == 0) {
                                ok = false;
                            }
                        }
                        count += ok ? 1 : 0;
                    }
                    CHECK(count == (c.contains(p) ? 1 : 0));
                }
            }
        }
    }
}

TEST_CASE("dual fan soundness on random points")
{
    NewtonData nd = surface_j2();
    Fan f = dual_fan(nd, 2);
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> c(0, 40);
    for (int i = 0; i < 1000; ++i) {
        RatVec nu{Rat(4 * c(rng)), Rat(2 * c(rng))};
        const Cone &cone = f.locate(nu);
        auto expected = min_generators(nd, nu);
        auto at_center = min_generators(nd, to_rat(cone.relint_point()));
        CHECK(expected == at_center);
    }
}

TEST_CASE("straddle property and refinement")
{
    Fan s1 = dual_fan(surface_j1(), 2), s2 = dual_fan(surface_j2(), 2);
    Fan r = refine({s1, s2});
    for (const auto &c : r.cones()) {
        bool inside = false;
        for (const auto &m : s1.maximal()) {
            inside = inside || m.contains(c);
        }
        CHECK(inside);
        bool straddles = c.relint_in_interior();
        const IntVec p = c.relint_point();
        bool some_zero = std::any_of(p.begin(), p.end(), [](const Int &x) { return x == 0; });
        CHECK(straddles != some_zero);
    }
}
