#include <cmath>

#include <catch_amalgamated.hpp>

#include "rdper/error.hpp"
#include "rdper/periods_numeric.hpp"

using namespace rdper;
using cd = std::complex<double>;

namespace {

CHGParams reference()
{
    return CHGParams::make(mpq_class(-1, 2), mpq_class(-1, 2), mpq_class(-2), mpq_class(1));
}

double rel_diff(const complex_t& a, const complex_t& b)
{
    return static_cast<double>(abs(a - b) / abs(b));
}

template <class F>
ErrorKind kind_of(F&& fn)
{
    try
    {
        fn();
    }
    catch (const Error& e)
    {
        return e.kind();
    }
    FAIL("no rdper::Error thrown");
    return ErrorKind::ConfigError;
}

}   // namespace

TEST_CASE("integrand values", "[periods]")
{
    const auto p = reference();
    const auto pt = EvaluationPoint::make(p, -1.0, -1.0);
    // 1 * 1 * 3^-2 * e^-2
    const complex_t v = integrand(p, pt, OmegaTag::Du, 1, 1);
    REQUIRE(static_cast<double>(abs(v - complex_t(exp(real_t(-2)) / 9))) < 1e-30);
    REQUIRE(static_cast<double>(abs(integrand(p, pt, OmegaTag::U1Du, 2, 1) - real_t(2) * integrand(p, pt, OmegaTag::Du, 2, 1))) < 1e-30);
    REQUIRE(static_cast<double>(abs(integrand(p, pt, OmegaTag::U2Du, 2, 3) - real_t(3) * integrand(p, pt, OmegaTag::Du, 2, 3))) < 1e-30);
    REQUIRE_THROWS_AS(integrand(p, pt, OmegaTag::Du, 0, 1), std::invalid_argument);
}

TEST_CASE("quad precision conversion", "[periods]")
{
    const real_t third = to_real(mpq_class(1, 3));
    REQUIRE(static_cast<double>(abs(3 * third - 1)) < 1e-32);
}

TEST_CASE("two engines agree", "[periods]")
{
    const auto p = reference();
    QuadratureSpec spec;
    for (auto [x, y] : {std::pair{cd(-1, 0), cd(-2, 0)}, std::pair{cd(-1, 0.5), cd(-2, -0.3)}})
    {
        const auto pt = EvaluationPoint::make(p, x, y);
        const auto de = period_vector(p, pt, spec);
        const auto gk = period_vector(p, pt, spec, Engine::GaussKronrod);
        for (int i = 0; i < 3; ++i)
        {
            REQUIRE(rel_diff(de.values[i], gk.values[i]) < 1e-8);
            REQUIRE(de.err[i] <= spec.rel_tol * static_cast<double>(abs(de.values[i])));
            REQUIRE(abs(de.values[i]) > 0);
        }
    }
}

TEST_CASE("second parameter set against the oracle", "[periods]")
{
    const auto p = CHGParams::make(mpq_class(1, 3), mpq_class(-2, 3), mpq_class(-8, 3), mpq_class(2));
    const auto pt = EvaluationPoint::make(p, -0.5, -1.5);
    const auto de = integrate_moments(p, pt, {}, {{0, 0}, {2, 1}});
    const auto gk = integrate_moments(p, pt, {}, {{0, 0}, {2, 1}}, Engine::GaussKronrod);
    REQUIRE(rel_diff(de.values[0], gk.values[0]) < 1e-8);
    REQUIRE(rel_diff(de.values[1], gk.values[1]) < 1e-8);
}

TEST_CASE("scaling alpha and the point together leaves the periods unchanged", "[periods]")
{
    const auto p1 = reference();
    const auto p2 = CHGParams::make(p1.a, p1.b, p1.c, mpq_class(2));
    const auto f1 = period_vector(p1, EvaluationPoint::make(p1, -1.0, -2.0), {});
    const auto f2 = period_vector(p2, EvaluationPoint::make(p2, -0.5, -1.0), {});
    for (int i = 0; i < 3; ++i)
        REQUIRE(rel_diff(f1.values[i], f2.values[i]) < 1e-12);
}

TEST_CASE("real data gives real periods", "[periods]")
{
    const auto p = reference();
    QuadratureSpec spec;
    const auto f = period_vector(p, EvaluationPoint::make(p, -3.0, -0.7), spec);
    for (const auto& v : f.values)
    {
        REQUIRE(static_cast<double>(abs(v.imag())) <= spec.abs_tol);
        REQUIRE(v.real() > 0);
    }
}

TEST_CASE("halving the tolerance stays within the error estimate", "[periods]")
{
    const auto p = reference();
    const auto pt = EvaluationPoint::make(p, cd(-1.5, 0.2), -0.8);
    QuadratureSpec loose;
    loose.rel_tol = 1e-6;
    QuadratureSpec tight = loose;
    tight.rel_tol = loose.rel_tol / 2;
    const auto a = period_vector(p, pt, loose), b = period_vector(p, pt, tight);
    for (int i = 0; i < 3; ++i)
        REQUIRE(static_cast<double>(abs(a.values[i] - b.values[i])) <= a.err[i]);
}

TEST_CASE("exact forms integrate to zero", "[periods]")
{
    const auto p = reference();
    QuadratureSpec spec;
    for (auto [x, y] : {std::pair{-1.0, -2.0}, std::pair{-2.0, -1.0}})
    {
        const auto pt = EvaluationPoint::make(p, x, y);
        const double norm = period_vector(p, pt, spec).norm();
        for (const auto& r : exactness_residual(p, pt, spec))
            REQUIRE(static_cast<double>(abs(r)) <= 1e-8 * norm);
    }
}

TEST_CASE("finite differences follow the connection matrices", "[periods]")
{
    const auto p = reference();
    QuadratureSpec spec;
    spec.rel_tol = 1e-9;
    const auto pt = EvaluationPoint::make(p, -1.0, -2.0);
    const auto r = gm_residual(p, pt, 1e-3, spec);
    REQUIRE(r.du_x_identity <= 1e-5);
    REQUIRE(r.du_y_identity <= 1e-5);
    REQUIRE(r.central_residual <= 1e-4);
    REQUIRE(r.residual <= r.central_residual);

    // Central differences converge at second order.
    const auto pt2 = EvaluationPoint::make(p, -1.5, -0.6);
    for (const auto& q : {pt, pt2})
    {
        const double e1 = gm_residual(p, q, 0.02, spec).central_residual;
        const double e2 = gm_residual(p, q, 0.01, spec).central_residual;
        REQUIRE(e1 / e2 == Catch::Approx(4.0).margin(0.3));
    }
}

TEST_CASE("the transposed matrix convention is forced", "[periods]")
{
    // dF_du/dx = alpha F_u1du sits in column 0 of Ax, row 1.
    const auto p = reference();
    const auto [ax, ay] = gm_matrices_at(p, -1.0, -2.0);
    REQUIRE(ax[1][0] == complex_t(1));
    REQUIRE(ax[0][1] != complex_t(1));
    REQUIRE(ay[2][0] == complex_t(1));
}

TEST_CASE("periods_numeric errors", "[periods]")
{
    const auto p = reference();
    QuadratureSpec spec;
    REQUIRE(kind_of([&] { period_vector(p, EvaluationPoint::make(p, 1.0, -2.0), spec); })
            == ErrorKind::ChamberViolation);
    REQUIRE(kind_of([&] { exactness_residual(p, EvaluationPoint::make(p, -1.0, 0.5), spec); })
            == ErrorKind::ChamberViolation);
    const auto neg = CHGParams::make(mpq_class(-1, 2), mpq_class(-1, 2), mpq_class(-2), mpq_class(-1));
    REQUIRE(kind_of([&] { period_vector(neg, EvaluationPoint::make(neg, -1.0, -2.0), spec); })
            == ErrorKind::ChamberViolation);
    REQUIRE_NOTHROW(period_vector(neg, EvaluationPoint::make(neg, 1.0, 2.0), spec));

    const auto steep = CHGParams::make(mpq_class(-3, 2), mpq_class(1, 2), mpq_class(-2), mpq_class(1));
    REQUIRE(kind_of([&] { period_vector(steep, EvaluationPoint::make(steep, -1.0, -2.0), spec); })
            == ErrorKind::InvalidParams);

    QuadratureSpec bad = spec;
    bad.digits = 40;
    REQUIRE(kind_of([&] { bad.validate(); }) == ErrorKind::InvalidQuadratureSpec);
    bad = spec;
    bad.rel_tol = 1e-22;
    REQUIRE(kind_of([&] { bad.validate(); }) == ErrorKind::InvalidQuadratureSpec);

    QuadratureSpec short_mesh;
    short_mesh.digits = 33;
    short_mesh.rel_tol = 1e-27;
    short_mesh.max_level = 2;
    REQUIRE(kind_of([&] { period_vector(p, EvaluationPoint::make(p, -1.0, -2.0), short_mesh); })
            == ErrorKind::NoConvergence);

    REQUIRE(kind_of([&] { gm_residual(p, EvaluationPoint::make(p, -1.0, -2.0), 0.5, spec); })
            == ErrorKind::StepTooLarge);
}

TEST_CASE("csv and json output", "[periods]")
{
    const auto p = reference();
    const auto f = period_vector(p, EvaluationPoint::make(p, -1.0, -2.0), {});
    const std::string header = period_csv_header(), row = to_csv_row(f);
    REQUIRE(std::count(header.begin(), header.end(), ',') == std::count(row.begin(), row.end(), ','));
    REQUIRE(row.rfind("-1/2,-1/2,-2,1,-1,0,-2,0,", 0) == 0);
    const auto j = to_json(f);
    REQUIRE(j["params"]["alpha"] == "1");
    REQUIRE(std::stod(j["periods"]["du"]["re"].get<std::string>()) == Catch::Approx(static_cast<double>(f.values[0].real())));
}
