#include <catch_amalgamated.hpp>

#include <random>

#include <qomp/motivic.hpp>

#include "random_data.hpp"
#include "reference_forms.hpp"
#include "test_support.hpp"

using namespace qomp;
using qomp::test::rv;

namespace
{

bool poles_contained(const BivRat &r, const PoleSet &poles)
{
    for (const auto &[f, m] : r.denominator()) {
        if (!poles.count({f.a, f.b})) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("curve terms", "[motivic]")
{
    const BivRat c = p_curve(2);
    const auto e = c.expand(6);
    // (L-1) T^2/(1-T^2) * 1/(1-LT)
    CHECK(e[0].is_zero());
    CHECK(e[1].is_zero());
    CHECK(e[2] == L_minus_1_pow(1));
    CHECK(e[3] == L_minus_1_pow(1) * L_pow(1));
    CHECK(e[4] == L_minus_1_pow(1) * (L_pow(2) + L_pow(0)));
    CHECK_THROWS_AS(p_curve(0), Error);
    CHECK(p_point().expand(3) == std::vector<LPoly>(4, LPoly(1)));
}

TEST_CASE("smooth germs give 1/(1-L^d T)", "[motivic]")
{
    for (std::size_t d = 1; d <= 3; ++d) {
        const BivRat g = p_geom(validate(test::qo_data(d, {})));
        CHECK(g.equals(one_over(static_cast<long>(d), 1)));
    }
}

TEST_CASE("curves with equal multiplicity share the series", "[motivic]")
{
    const BivRat a = p_geom(validate(test::qo_data(1, {rv({"3/2"})})));
    const BivRat b = p_geom(validate(test::qo_data(1, {rv({"5/2"})})));
    CHECK(a.equals(b));
    const BivRat c = p_geom(validate(test::qo_data(1, {rv({"3/2"}), rv({"7/4"})})));
    CHECK_FALSE(a.equals(c));
}

TEST_CASE("surface example: interior series", "[motivic]")
{
    const LogJacSystem sys(validate(test::surface_example()));
    const InteriorResult r = p_interior_detailed(sys);
    CHECK(r.entries.size() == 5);
    for (const auto &e : r.entries) {
        CHECK(e.closed);
        CHECK(e.k == 2);
    }
    CHECK(r.value.equals(test::surface_interior_reference()));
}

TEST_CASE("surface example: full series", "[motivic]")
{
    const Validated v = validate(test::surface_example());
    const GeomResult g = p_geom_detailed(v);
    REQUIRE(g.parts.size() == 4);
    const BivRat expect = one_over(0, 1) + p_curve(2) + p_curve(4) + test::surface_interior_reference();
    CHECK(g.value.equals(expect));
    for (const auto &part : g.parts) {
        if (part.section.keep == std::vector<std::size_t>{0}) {
            CHECK(part.value.equals(p_curve(4)));
        }
        if (part.section.keep == std::vector<std::size_t>{1}) {
            CHECK(part.value.equals(p_curve(2)));
        }
    }
    CHECK(poles_contained(g.value, candidate_poles(v)));
    CHECK(g.poles == candidate_poles(v));
}

TEST_CASE("forced reconstruction reproduces closed terms", "[motivic]")
{
    AssemblyOptions forced;
    forced.force_reconstruction = true;
    for (const CharData &cd : {test::surface_example(), test::qo_data(2, {}), test::qo_data(1, {rv({"3/2"})})}) {
        const LogJacSystem sys(validate(cd));
        for (std::size_t k = 1; k <= sys.d(); ++k) {
            for (const auto &dc : dk_cones(sys, k)) {
                if (!dc.interior) {
                    continue;
                }
                const KTauEntry a = p_ktau(sys, k, dc.cone);
                const KTauEntry b = p_ktau(sys, k, dc.cone, forced);
                CHECK_FALSE(b.closed);
                CHECK(a.value.equals(b.value));
            }
        }
    }
}

TEST_CASE("collapsed classes in dimension three", "[motivic]")
{
    // ord_{J_1} and ord_{J_2} are proportional on some D_2 cones
    const LogJacSystem sys(validate(test::qo_data(3, {rv({"2/3", "1/5", "0"})})));
    const InteriorResult r = p_interior_detailed(sys);
    int rebuilt = 0;
    for (const auto &e : r.entries) {
        rebuilt += e.closed ? 0 : 1;
    }
    CHECK(rebuilt > 0);
    const long s = 30;
    std::vector<LPoly> total(s + 1);
    for (const auto &e : r.entries) {
        const auto x = e.value.expand(s);
        for (long i = 0; i <= s; ++i) {
            total[static_cast<std::size_t>(i)] += x[static_cast<std::size_t>(i)];
        }
    }
    CHECK(crosscheck(total, enumerate_classes(sys, s)).agree);
}

TEST_CASE("candidate poles on random branches", "[motivic]")
{
    std::mt19937 rng(77);
    int checked = 0;
    while (checked < 12) {
        const Validated v = test::random_branch(rng, 2);
        const GeomResult g = p_geom_detailed(v);
        CHECK(poles_contained(g.value, candidate_poles(v)));
        const LogJacSystem sys(v);
        const long s = 8;
        CHECK(crosscheck(p_interior(sys).expand(s), enumerate_classes(sys, s)).agree);
        ++checked;
    }
}

TEST_CASE("volume", "[motivic]")
{
    for (std::size_t d = 1; d <= 3; ++d) {
        const LVolRat v = motivic_volume(LogJacSystem(validate(test::qo_data(d, {}))));
        CHECK(v.equals(LVolRat(LPoly(1), {})));
    }
    const LogJacSystem sys(validate(test::surface_example()));
    const LVolRat vol = motivic_volume(sys);
    CHECK(vol.equals(L_minus_1_pow(2) * test::surface_volume_reference()));
    CHECK_FALSE(vol.equals(test::surface_volume_reference()));

    const long n = 40;
    const auto counts = volume_counts(sys, n);
    LPoly truncated;
    for (long i = 0; i <= n; ++i) {
        truncated.add_term(-i, counts[static_cast<std::size_t>(i)]);
    }
    CHECK(LVolRat(L_minus_1_pow(2) * truncated, {}).expand_inverse(n - 2) == vol.expand_inverse(n - 2));
}

TEST_CASE("section lattice choice", "[motivic]")
{
    const Validated v = validate(test::surface_example());
    AssemblyOptions branch;
    branch.section_lattice = SectionLattice::branch;
    const GeomResult g = p_geom_detailed(v, branch);
    CHECK(poles_contained(g.value, g.poles));
    CHECK(g.poles == candidate_poles(v, SectionLattice::branch));
    for (const auto &part : g.parts) {
        if (!part.section.section) {
            continue;
        }
        const LogJacSystem sys(*part.section.section);
        CHECK(crosscheck(part.value.expand(8), enumerate_classes(sys, 8)).agree);
    }
}
