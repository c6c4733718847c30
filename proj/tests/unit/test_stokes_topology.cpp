#include <numeric>

#include <catch_amalgamated.hpp>

#include "rdper/error.hpp"
#include "rdper/local_model.hpp"
#include "rdper/stokes_topology.hpp"

using namespace rdper;
namespace cm = rdper::cell_model;

namespace {

DimensionTable table(std::initializer_list<std::pair<int, int> > entries)
{
    DimensionTable t;
    for (auto [deg, dim] : entries)
        t.set(deg, dim);
    return t;
}

DimensionTable homology_of(const CellModelSpec& spec)
{
    const ChainComplexQ c = build_complex(spec);
    const DimensionTable h = homology_dims(c);
    // Euler characteristic from cells must match the one from homology.
    REQUIRE(c.euler_characteristic() == homology_euler_characteristic(h));
    return h;
}

}   // namespace

TEST_CASE("standard spaces", "[topology]")
{
    REQUIRE(homology_of(cm::Sphere2{}) == table({{0, 1}, {2, 1}}));
    REQUIRE(homology_of(cm::Torus2{}) == table({{0, 1}, {1, 2}, {2, 1}}));
    REQUIRE(homology_of(cm::WedgeOfCircles{5}) == table({{0, 1}, {1, 5}}));
    REQUIRE(homology_dims(ChainComplexQ{}) == DimensionTable{});
}

TEST_CASE("products follow the Kunneth formula", "[topology]")
{
    // S^1 x S^1 as a product of two one-cell circles, and the wedge of two circles times S^2.
    const ChainComplexQ s1 = build_complex(cm::WedgeOfCircles{1});
    REQUIRE(homology_dims(product(s1, s1)) == homology_dims(build_complex(cm::Torus2{})));
    const ChainComplexQ w = product(build_complex(cm::WedgeOfCircles{2}), build_complex(cm::Sphere2{}));
    REQUIRE(homology_dims(w) == table({{0, 1}, {1, 2}, {2, 1}, {3, 2}}));
}

TEST_CASE("non-nilpotent boundaries are rejected", "[topology]")
{
    SparseMatrix d1(1, 1), d2(1, 1);
    d1.add(0, 0, 1);
    d2.add(0, 0, 1);
    try
    {
        ChainComplexQ({1, 1, 1}, {SparseMatrix(0, 1), d1, d2});
        FAIL("expected BoundaryNotNilpotent");
    }
    catch (const Error& e)
    {
        REQUIRE(e.kind() == ErrorKind::BoundaryNotNilpotent);
    }
}

TEST_CASE("relative complex of a pair", "[topology]")
{
    const ChainComplexQ torus = product(build_complex(cm::WedgeOfCircles{1}), build_complex(cm::WedgeOfCircles{1}));
    CellMask vertex = empty_mask(torus);
    vertex[0][0] = true;
    // Collapsing a point gives the reduced homology of the torus.
    REQUIRE(homology_dims(relative(torus, vertex)) == table({{1, 2}, {2, 1}}));

    // (I, dI): one relative 1-cycle; an edge without its endpoints is not a subcomplex.
    SparseMatrix d1(2, 1);
    d1.add(0, 0, -1);
    d1.add(1, 0, 1);
    const ChainComplexQ interval({2, 1}, {SparseMatrix(0, 2), d1});
    CellMask ends = empty_mask(interval);
    ends[0] = {true, true};
    REQUIRE(homology_dims(relative(interval, ends)) == table({{1, 1}}));
    CellMask not_closed = empty_mask(interval);
    not_closed[1][0] = true;
    REQUIRE_THROWS_AS(relative(interval, not_closed), std::invalid_argument);
}

TEST_CASE("wedge bundle over the circle", "[topology]")
{
    for (int m = 1; m <= 6; ++m)
    {
        const auto h = homology_of(cm::WedgeBundleOverCircle{m});
        REQUIRE(h == table({{1, m}, {2, m}}));
        REQUIRE(h == rd_dimensions(ExponentialFactor::make(m, 0, 1.0), Stratum::ComponentAtCrossing));
    }
}

TEST_CASE("radial sheet quotient gives gcd in degrees 2 and 3", "[topology]")
{
    for (auto [m1, m2] : {std::pair{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}, {2, 4}})
    {
        const int n = 4 * (m1 + m2);
        const auto h = homology_of(cm::RadialSheetQuotient{m1, m2, n});
        const int d = std::gcd(m1, m2);
        REQUIRE(h == table({{2, d}, {3, d}}));
        REQUIRE(homology_of(cm::RadialSheetQuotient{m1, m2, 2 * n}) == h);
        REQUIRE(h == rd_dimensions(ExponentialFactor::make(m1, m2, 1.0), Stratum::CrossingPoint));
    }
    REQUIRE(homology_of(cm::RadialSheetQuotient{2, 2, 16}) == table({{2, 2}, {3, 2}}));
}

TEST_CASE("radial sheet quotient resolution bound", "[topology]")
{
    try
    {
        build_complex(cm::RadialSheetQuotient{2, 3, 19});
        FAIL("expected SpecTooCoarse");
    }
    catch (const Error& e)
    {
        REQUIRE(e.kind() == ErrorKind::SpecTooCoarse);
    }
}

TEST_CASE("JSON export lists boundary triplets", "[topology]")
{
    const auto j = to_json(build_complex(cm::WedgeBundleOverCircle{1}));
    REQUIRE(j["dims"].size() == 3);
    REQUIRE(j["boundaries"].size() == 2);
    REQUIRE(describe(cm::RadialSheetQuotient{2, 3, 20}) == "RadialSheetQuotient(2, 3, 20)");
}
