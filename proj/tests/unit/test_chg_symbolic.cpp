#include <random>

#include <catch_amalgamated.hpp>

#include "rdper/chg_symbolic.hpp"
#include "rdper/error.hpp"

using namespace rdper;

namespace {

mpq_class q(long n, long d = 1)
{
    mpq_class v(n, d);
    v.canonicalize();
    return v;
}

CHGParams p_half() { return CHGParams::make(q(-1, 2), q(-1, 2), q(-2), q(1)); }

std::vector<CHGParams> instantiations()
{
    return {
        p_half(),
        CHGParams::make(q(1, 3), q(1, 3), q(-11, 3), q(2)),
        CHGParams::make(q(1, 5), q(2, 5), q(-18, 5), q(3)),
        CHGParams::make(q(-1, 3), q(-5, 4), q(-17, 12), q(-1, 2)),
        CHGParams::make(q(3, 7), q(-2, 3), q(-58, 21), q(5, 4)),
    };
}

mpq_class pw(const mpq_class& b, int n)
{
    mpq_class r = 1;
    for (int i = 0; i < n; ++i)
        r *= b;
    return r;
}

Poly2 random_poly(std::mt19937& rng, int degree)
{
    std::uniform_int_distribution<int> coef(-5, 5);
    Poly2 p;
    for (int d = 0; d <= degree; ++d)
        for (int i = 0; i <= d; ++i)
            p += Poly2::monomial(i, d - i, coef(rng));
    return p;
}

const Poly2 S = Poly2(1) + Poly2::monomial(1, 0) + Poly2::monomial(0, 1);

}   // namespace

TEST_CASE("polynomial arithmetic", "[chg]")
{
    const Poly2 a = Poly2::monomial(1, 0) + Poly2(2);
    const Poly2 b = Poly2::monomial(0, 1, q(-1, 2));
    REQUIRE((a * b).coeff(1, 1) == q(-1, 2));
    REQUIRE((a * b).coeff(0, 1) == -1);
    REQUIRE((a - a).is_zero());
    REQUIRE(a.pow(3).coeff(1, 0) == 12);
    REQUIRE(S.pow(2).derivative(0) == mpq_class(2) * S);
    REQUIRE(a.pow(2).evaluate(q(3), q(0)) == 25);
    REQUIRE((a * b).to_string() == "-1/2*u1*u2 - u2");
    REQUIRE(Poly2().total_degree() == -1);
}

TEST_CASE("rational functions", "[chg]")
{
    // d/du1 (u1 / s) = (1 + u2) / s^2
    const RatFunc2 f(Poly2::monomial(1, 0), 0, 0, 1);
    const RatFunc2 expected(Poly2(1) + Poly2::monomial(0, 1), 0, 0, 2);
    REQUIRE(f.derivative(0).equals(expected));
    // d/du2 (1 / (u1 u2^2)) = -2 / (u1 u2^3)
    REQUIRE(RatFunc2(Poly2(1), 1, 2, 0).derivative(1).equals(RatFunc2(Poly2(-2), 1, 3, 0)));

    const RatFunc2 g(Poly2::monomial(2, 1) * S, 1, 1, 1);
    auto poly = g.as_polynomial();
    REQUIRE(poly.has_value());
    REQUIRE(*poly == Poly2::monomial(1, 0));
    REQUIRE_FALSE(RatFunc2(Poly2::monomial(2, 1), 0, 0, 1).as_polynomial().has_value());

    REQUIRE(f.evaluate(q(1), q(2)) == q(1, 4));
    try
    {
        f.evaluate(q(-1), q(0));
        FAIL("expected SingularPoint");
    }
    catch (const Error& e)
    {
        REQUIRE(e.kind() == ErrorKind::SingularPoint);
    }
}

TEST_CASE("parameter validation", "[chg]")
{
    auto kind_of = [](auto&& fn) {
        try
        {
            fn();
        }
        catch (const Error& e)
        {
            return e.kind();
        }
        return ErrorKind::ConfigError;
    };
    REQUIRE(kind_of([] { CHGParams::make(q(-1, 2), q(-1, 2), q(-1), q(1)); }) == ErrorKind::InvalidParams);
    REQUIRE(kind_of([] { CHGParams::make(q(1), q(-3, 2), q(-5, 2), q(1)); }) == ErrorKind::InvalidParams);
    REQUIRE(kind_of([] { CHGParams::make(q(-3, 2), q(-2), q(1, 2), q(1)); }) == ErrorKind::InvalidParams);
    REQUIRE(kind_of([] { CHGParams::make(q(-1, 2), q(-1, 2), q(-2), q(0)); }) == ErrorKind::InvalidParams);
    REQUIRE(kind_of([] { require_regular_point(q(2), q(2)); }) == ErrorKind::SingularPoint);
    REQUIRE(kind_of([] { check_gm_relations(p_half(), q(0), q(3)); }) == ErrorKind::SingularPoint);
    REQUIRE(to_json(p_half())["c"] == "-2");
}

TEST_CASE("nabla matches the closed form on monomials", "[chg]")
{
    // nabla(u1^i u2^j s^k) du1 component = ((a+i)/u1 + (c+k)/s + alpha x) u1^i u2^j s^k
    const auto params = CHGParams::make(q(1, 3), q(1, 3), q(-11, 3), q(2));
    const mpq_class x = 3, y = -2;
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j)
            for (int k = 0; k <= 2; ++k)
            {
                const RatFunc2 h(Poly2::monomial(i, j) * S.pow(k));
                const auto nh = nabla_function(params, x, y, h);
                mpq_class u1 = q(num(rng), den(rng)), u2 = q(num(rng), den(rng));
                const mpq_class s = 1 + u1 + u2;
                if (u1 == 0 || u2 == 0 || s == 0)
                    continue;
                const mpq_class base = pw(u1, i) * pw(u2, j) * pw(s, k);
                INFO(i << j << k << " " << u1.get_str() << " " << u2.get_str());
                REQUIRE(nh.f.evaluate(u1, u2) == ((params.a + i) / u1 + (params.c + k) / s + params.alpha * x) * base);
                REQUIRE(nh.g.evaluate(u1, u2) == ((params.b + j) / u2 + (params.c + k) / s + params.alpha * y) * base);
            }
}

TEST_CASE("nabla squares to zero", "[chg]")
{
    std::mt19937 rng(3);
    for (const auto& params : instantiations())
        for (int trial = 0; trial < 20; ++trial)
        {
            const RatFunc2 h(random_poly(rng, 3), trial % 2, trial % 3 == 0, trial % 2);
            REQUIRE(nabla_one_form(params, q(2), q(5), nabla_function(params, q(2), q(5), h)).is_zero());
        }
}

TEST_CASE("printed relations hold for several instantiations", "[chg]")
{
    const std::vector<std::pair<mpq_class, mpq_class> > pts = {{q(-1), q(-2)}, {q(1), q(3)}, {q(2), q(5)},
                                                               {q(3), q(7)}, {q(1, 2), q(-4, 3)}};
    for (const auto& params : instantiations())
        for (const auto& [x, y] : pts)
        {
            const auto report = check_gm_relations(params, x, y);
            REQUIRE(report.checks.size() == 4);
            for (const auto& c : report.checks)
            {
                INFO(c.name << ": " << c.residual);
                REQUIRE(c.pass);
            }
            REQUIRE_NOTHROW(report.require());
        }
}

TEST_CASE("perturbed relations are rejected", "[chg]")
{
    const auto params = p_half();
    auto printed = printed_relations(params, q(-1), q(-2));
    printed.gm1 += Poly2::monomial(0, 1);   // 1+a -> 2+a on u2
    const auto report = check_gm_relations(params, q(-1), q(-2), printed);
    REQUIRE_FALSE(report.all_pass());
    REQUIRE_FALSE(report.checks[0].pass);
    REQUIRE(report.checks[1].pass);
    try
    {
        report.require();
        FAIL("expected IdentityFailed");
    }
    catch (const Error& e)
    {
        REQUIRE(e.kind() == ErrorKind::IdentityFailed);
    }

    auto bad3 = printed_relations(params, q(1), q(3));
    bad3.gm3_reduced[2] += 1;
    REQUIRE_FALSE(check_gm_relations(params, q(1), q(3), bad3).checks[3].pass);
}

TEST_CASE("reduction of u1^2 by hand", "[chg]")
{
    for (const auto& params : instantiations())
    {
        const mpq_class x = 2, y = 5;
        const mpq_class &a = params.a, &b = params.b, &al = params.alpha;
        // u1^2 = -u1 u2 - (1 - (1+b)/(al x)) u1 - (1+a)/(al x) (u2 + 1), then u1 u2 from its own relation
        const mpq_class uu1 = -(1 + b) / (al * (y - x)), uu2 = (1 + a) / (al * (y - x));
        const std::array<mpq_class, 3> expected = {
            -(1 + a) / (al * x),
            -uu1 - 1 + (1 + b) / (al * x),
            -uu2 - (1 + a) / (al * x),
        };
        REQUIRE(reduce_to_basis(params, x, y, 2, 0) == expected);
        REQUIRE(reduce_to_basis(params, x, y, 1, 1) == std::array<mpq_class, 3>{0, uu1, uu2});
        REQUIRE(reduce_to_basis(params, x, y, 0, 1) == std::array<mpq_class, 3>{0, 0, 1});
    }
}

TEST_CASE("reduction kills exact forms and is confluent", "[chg]")
{
    std::mt19937 rng(17);
    const mpq_class x = q(3), y = q(7);
    for (const auto& params : instantiations())
    {
        const DeRhamReducer base(params, x, y, 4);
        for (unsigned seed : {1u, 2u, 99u})
        {
            const DeRhamReducer shuffled(params, x, y, 4, seed);
            for (int k = 0; k <= 4; ++k)
                for (int l = 0; k + l <= 4; ++l)
                    REQUIRE(shuffled.reduce_monomial(k, l) == base.reduce_monomial(k, l));
        }
        for (int trial = 0; trial < 10; ++trial)
        {
            const Poly2 p = random_poly(rng, 4);
            // exact form of degree <= 4: nabla of (g1 du1 + g2 du2) s with deg g <= 1
            const OneForm w{RatFunc2(random_poly(rng, 1) * Poly2::monomial(0, 1) * S),
                            RatFunc2(random_poly(rng, 1) * Poly2::monomial(1, 0) * S)};
            const auto exact = nabla_one_form(params, x, y, w).as_polynomial();
            REQUIRE(exact.has_value());
            REQUIRE(exact->total_degree() <= 4);
            REQUIRE(base.reduce(p + *exact) == base.reduce(p));
        }
        REQUIRE_THROWS_AS(base.reduce(Poly2::monomial(5, 0)), std::invalid_argument);
    }
}

TEST_CASE("connection matrices agree with the reduction", "[chg]")
{
    for (const auto& params : instantiations())
    {
        REQUIRE(gm_matrix_mismatches(params, printed_gm_matrix(params), default_sample_points(8)).empty());
        REQUIRE_NOTHROW(gm_matrix(params));
    }
    const auto params = p_half();
    auto m = printed_gm_matrix(params);
    m.ax[1][1] += RatFunc2::constant(1, LinearForm::y_minus_x());
    const auto bad = gm_matrix_mismatches(params, m, default_sample_points(3));
    REQUIRE(bad.size() == 3);
    REQUIRE(bad.front().rfind("Ax[1][1]", 0) == 0);
}

TEST_CASE("integrability", "[chg]")
{
    const std::vector<std::pair<mpq_class, mpq_class> > pts = {{q(2), q(5)}, {q(3), q(7)}, {q(-1, 2), q(4, 3)}};
    for (const auto& params : instantiations())
    {
        const auto report = check_integrability(gm_matrix(params), pts);
        REQUIRE(report.all_zero());
        REQUIRE(to_json(report)["pass"] == true);
    }
    auto m = printed_gm_matrix(p_half());
    m.ay[0][2] += RatFunc2(Poly2::monomial(1, 0), 0, 0, 0, LinearForm::y_minus_x());
    const auto bad = check_integrability(m, pts);
    REQUIRE_FALSE(bad.all_zero());
    try
    {
        bad.require();
        FAIL("expected IntegrabilityFailed");
    }
    catch (const Error& e)
    {
        REQUIRE(e.kind() == ErrorKind::IntegrabilityFailed);
    }
}
