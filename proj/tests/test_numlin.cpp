#include <catch_amalgamated.hpp>

#include <qomp/lattice.hpp>

using namespace qomp;

namespace
{

RatVec rv(std::initializer_list<const char *> xs)
{
    RatVec v;
    for (auto x : xs) {
        v.push_back(parse_rat(x));
    }
    return v;
}

Lattice surface_lattice()
{
    return lattice_from_generators({rv({"1", "0"}), rv({"0", "1"}), rv({"3/2", "0"}), rv({"7/4", "0"}), rv({"2", "1/2"})},
                                   2);
}

Lattice diag(std::initializer_list<const char *> xs)
{
    std::vector<RatVec> gens;
    std::size_t i = 0;
    for (auto x : xs) {
        RatVec v(xs.size(), Rat(0));
        v[i++] = parse_rat(x);
        gens.push_back(v);
    }
    return lattice_from_generators(gens, xs.size());
}

} // namespace

TEST_CASE("parse_rat handles signs and reduces")
{
    CHECK(parse_rat("6/4") == Rat(3, 2));
    CHECK(parse_rat("-2") == Rat(-2));
    CHECK(parse_rat(" 0/7 ") == Rat(0));
    CHECK_THROWS_AS(parse_rat("1/0"), Error);
    CHECK_THROWS_AS(parse_rat("x"), Error);
    CHECK_THROWS_AS(parse_rat("1.5"), Error);
}

TEST_CASE("hermite form and kernels")
{
    IntMat a{{2, 4}, {3, 6}, {1, 1}};
    auto h = row_hermite(a, true);
    CHECK(h.h.size() == 2);
    IntMat ker = left_kernel(a);
    REQUIRE(ker.size() == 1);
    for (std::size_t j = 0; j < 2; ++j) {
        Int s = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            s += ker[0][i] * a[i][j];
        }
        CHECK(s == 0);
    }
    CHECK(determinant({{2, 1}, {1, 3}}) == 5);
    CHECK(determinant({{0, 1, 0}, {1, 0, 0}, {0, 0, 4}}) == -4);
}

TEST_CASE("lattice_from_generators")
{
    CHECK(lattice_from_generators({rv({"1", "0"}), rv({"0", "1"})}, 2) == Lattice::standard(2));
    CHECK(surface_lattice() == diag({"1/4", "1/2"}));
    auto m = lattice_from_generators({rv({"1", "0", "0"}), rv({"0", "1", "0"}), rv({"0", "0", "1"}),
                                      rv({"1/2", "1/2", "0"}), rv({"1/2", "1/2", "1/4"})},
                                     3);
    CHECK(m.contains(rv({"1/2", "1/2", "0"})));
    CHECK(m.contains(rv({"0", "0", "1/4"})));
    CHECK_FALSE(m.contains(rv({"1/2", "0", "0"})));
    CHECK(lattice_index(Lattice::standard(3), m) == 8);
    CHECK_THROWS_AS(lattice_from_generators({rv({"1", "1"}), rv({"2", "2"})}, 2), Error);
}

TEST_CASE("canonical form ignores order, duplicates and redundant generators")
{
    auto a = lattice_from_generators({rv({"3/2", "0"}), rv({"0", "1"}), rv({"1", "0"}), rv({"3/2", "0"})}, 2);
    auto b = lattice_from_generators({rv({"1", "1"}), rv({"1/2", "1"}), rv({"1", "0"}), rv({"5/2", "1"})}, 2);
    CHECK(a == b);
}

TEST_CASE("lattice_index")
{
    auto z2 = Lattice::standard(2);
    CHECK(lattice_index(z2, z2) == 1);
    CHECK(lattice_index(z2, surface_lattice()) == 8);
    auto m1 = lattice_from_generators({rv({"1", "0"}), rv({"0", "1"}), rv({"3/2", "0"})}, 2);
    CHECK(lattice_index(z2, m1) == 2);
    CHECK(lattice_index(z2, m1) * lattice_index(m1, surface_lattice()) == lattice_index(z2, surface_lattice()));
    CHECK_THROWS_AS(lattice_index(surface_lattice(), z2), Error);
}

TEST_CASE("dual_lattice")
{
    CHECK(dual_lattice(Lattice::standard(3)) == Lattice::standard(3));
    CHECK(dual_lattice(surface_lattice()) == diag({"4", "2"}));
    auto skew = lattice_from_generators({rv({"2/3", "1/5"}), rv({"-1/2", "3"})}, 2);
    CHECK(dual_lattice(dual_lattice(skew)) == skew);
    for (const auto &row : dual_lattice(skew).basis()) {
        for (const auto &b : skew.basis()) {
            CHECK(is_integer(dot(row, b)));
        }
    }
}

TEST_CASE("member")
{
    auto m = lattice_from_generators({rv({"1", "0", "0"}), rv({"0", "1", "0"}), rv({"0", "0", "1"}),
                                      rv({"1/2", "1/2", "0"}), rv({"1/2", "1/2", "1/4"})},
                                     3);
    CHECK(member(surface_lattice(), rv({"0", "0"})));
    CHECK(member(dual_lattice(m), rv({"4", "2", "8"})));
    CHECK_FALSE(member(diag({"4", "2"}), rv({"2", "2"})));
}

TEST_CASE("intersect_coordinate_subspace")
{
    CHECK(intersect_coordinate_subspace(Lattice::standard(2), {0}) == Lattice::standard(1));
    CHECK(intersect_coordinate_subspace(surface_lattice(), {1}) == diag({"1/2"}));
    CHECK(intersect_coordinate_subspace(surface_lattice(), {0}) == diag({"1/4"}));
    auto skew = lattice_from_generators({rv({"1/2", "1/2"}), rv({"0", "1"})}, 2);
    CHECK(intersect_coordinate_subspace(skew, {0}) == diag({"1"}));
}
