#include <cmath>
#include <complex>
#include <numeric>
#include <queue>
#include <random>
#include <vector>

#include <catch_amalgamated.hpp>

#include "rdper/error.hpp"
#include "rdper/local_model.hpp"

using namespace rdper;

namespace {

const double pi = std::acos(-1.0);

// Breadth-first flood fill on the cell-centre grid; independent of the union-find in the library.
int flood_fill_components(const ExponentialFactor& model, int n)
{
    std::vector<int> label(static_cast<std::size_t>(n) * n, -1);
    auto inside = [&](int i, int j) {
        return stokes_contains(model, 2 * pi * (i + 0.5) / n, 2 * pi * (j + 0.5) / n);
    };
    int count = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
        {
            if (label[i * n + j] >= 0 || !inside(i, j))
                continue;
            std::queue<std::pair<int, int> > q;
            q.push({i, j});
            label[i * n + j] = count;
            while (!q.empty())
            {
                auto [a, b] = q.front();
                q.pop();
                const int nb[4][2] = {{a + 1, b}, {a - 1, b}, {a, b + 1}, {a, b - 1}};
                for (auto& p : nb)
                {
                    const int x = (p[0] + n) % n, y = (p[1] + n) % n;
                    if (label[x * n + y] < 0 && inside(x, y))
                    {
                        label[x * n + y] = count;
                        q.push({x, y});
                    }
                }
            }
            ++count;
        }
    return count;
}

ExponentialFactor model(int m1, int m2, std::complex<double> u0 = 1.0)
{
    return ExponentialFactor::make(m1, m2, u0);
}

ErrorKind kind_of(auto&& f)
{
    try
    {
        f();
    }
    catch (const Error& e)
    {
        return e.kind();
    }
    FAIL("expected rdper::Error");
    return ErrorKind::ConfigError;
}

}   // namespace

TEST_CASE("make_model validation", "[local_model]")
{
    REQUIRE_NOTHROW(model(1, 2));
    REQUIRE(kind_of([] { model(0, 0); }) == ErrorKind::NotIrregular);
    REQUIRE(kind_of([] { model(1, -2); }) == ErrorKind::NotGood);
    REQUIRE(kind_of([] { model(1, 1, 0.0); }) == ErrorKind::ZeroUnit);
}

TEST_CASE("stokes_contains on the documented directions", "[local_model]")
{
    REQUIRE(stokes_contains(model(1, 0), pi, 0.3));
    REQUIRE_FALSE(stokes_contains(model(1, 0), 0.0, 1.0));
    REQUIRE(stokes_contains(model(1, 1), pi / 2, pi / 2));
    // Open interval: phase exactly pi/2 is not Stokes. -theta1 = -3pi/2 == pi/2 (mod 2pi).
    REQUIRE_FALSE(stokes_contains(model(1, 0, std::polar(1.0, pi / 2)), 0.0, 0.0));
}

TEST_CASE("stokes_contains is 2pi periodic and shift invariant", "[local_model]")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> angle(0, 2 * pi);
    for (int trial = 0; trial < 500; ++trial)
    {
        const int m1 = 1 + trial % 4, m2 = trial % 3;
        const double arg = angle(rng), t1 = angle(rng), t2 = angle(rng);
        auto a = model(m1, m2, std::polar(1.0, arg));
        REQUIRE(stokes_contains(a, t1, t2) == stokes_contains(a, t1 + 2 * pi, t2 - 2 * pi));
        // Rotating arg(u0) by m1*delta while moving theta1 by delta keeps the phase.
        const double delta = 0.25;
        auto b = model(m1, m2, std::polar(1.0, arg + m1 * delta));
        REQUIRE(stokes_contains(a, t1, t2) == stokes_contains(b, t1 + delta, t2));
    }
}

TEST_CASE("Stokes set has measure one half", "[local_model]")
{
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> angle(0, 2 * pi);
    const int samples = 40000;
    for (auto u0 : {std::complex<double>(1.0), std::polar(1.0, 1.1)})
    {
        auto a = model(3, 2, u0);
        int hits = 0;
        for (int s = 0; s < samples; ++s)
            hits += stokes_contains(a, angle(rng), angle(rng));
        const double frac = static_cast<double>(hits) / samples;
        const double sigma = std::sqrt(0.25 / samples);
        REQUIRE(std::abs(frac - 0.5) < 3 * sigma);
    }
}

TEST_CASE("component count equals gcd and matches a flood-fill oracle", "[local_model]")
{
    REQUIRE(stokes_component_count(model(2, 3), 64) == 1);
    REQUIRE(stokes_component_count(model(4, 6), 128) == 2);
    REQUIRE(stokes_component_count(model(3, 3, std::polar(1.0, pi / 4)), 256) == 3);
    for (int m1 = 1; m1 <= 5; ++m1)
        for (int m2 = 1; m2 <= 5; ++m2)
        {
            auto a = model(m1, m2, std::polar(1.0, 0.37));
            const int n = 8 * (m1 + m2) * 2;
            const int count = stokes_component_count(a, n);
            REQUIRE(count == std::gcd(m1, m2));
            REQUIRE(count == flood_fill_components(a, n));
        }
}

TEST_CASE("component count preconditions", "[local_model]")
{
    REQUIRE(kind_of([] { stokes_component_count(model(2, 3), 39); }) == ErrorKind::ResolutionTooCoarse);
    REQUIRE(kind_of([] { stokes_component_count(model(2, 0), 64); }) == ErrorKind::InvalidStratum);
}

TEST_CASE("dimension tables", "[local_model]")
{
    REQUIRE(rd_dimensions(model(2, 2), Stratum::CrossingPoint).to_string() == "{2:2, 3:2}");
    REQUIRE(rd_dimensions(model(3, 0), Stratum::SmoothPoint).to_string() == "{1:3}");
    REQUIRE(rd_dimensions(model(5, 0), Stratum::ComponentAtCrossing).to_string() == "{1:5, 2:5}");
    REQUIRE(dr_dimensions(model(4, 6), Stratum::CrossingPoint).to_string() == "{0:2, 1:2}");
    REQUIRE(dr_dimensions(model(1, 0), Stratum::SmoothPoint).to_string() == "{0:1}");
    REQUIRE(dr_dimensions(model(2, 2), Stratum::ComponentAtCrossing).to_string() == "{0:2, 1:2}");
    REQUIRE(kind_of([] { rd_dimensions(model(3, 1), Stratum::SmoothPoint); }) == ErrorKind::InvalidStratum);
}

TEST_CASE("dimension tables do not depend on u0", "[local_model]")
{
    for (auto s : {Stratum::CrossingPoint, Stratum::ComponentAtCrossing})
        REQUIRE(rd_dimensions(model(4, 6), s) == rd_dimensions(model(4, 6, {0.0, -3.0}), s));
}

TEST_CASE("duality holds for every valid model and stratum", "[local_model]")
{
    for (int m1 = 1; m1 <= 8; ++m1)
    {
        REQUIRE(duality_check(model(m1, 0), Stratum::SmoothPoint));
        for (int m2 = 0; m2 <= 8; ++m2)
        {
            REQUIRE(duality_check(model(m1, m2), Stratum::CrossingPoint));
            REQUIRE(duality_check(model(m1, m2), Stratum::ComponentAtCrossing));
        }
    }
}

TEST_CASE("JSON round trip", "[local_model]")
{
    auto a = model(4, 6, {0.5, -2.0});
    auto j = dimension_report_json(a, Stratum::CrossingPoint, rd_dimensions(a, Stratum::CrossingPoint));
    REQUIRE(j["stratum"] == "crossing");
    REQUIRE(j["dims"]["3"] == 2);
    auto b = exponential_factor_from_json(j);
    REQUIRE(b.m1() == 4);
    REQUIRE(b.u0() == a.u0());
    REQUIRE(dimension_table_from_json(j["dims"]) == rd_dimensions(a, Stratum::CrossingPoint));
    REQUIRE(stratum_from_string("component") == Stratum::ComponentAtCrossing);
}
