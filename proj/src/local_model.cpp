#include "rdper/local_model.hpp"

#include <cmath>
#include <numeric>
#include <unordered_set>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/pending/disjoint_sets.hpp>

#include "rdper/error.hpp"

namespace rdper {

namespace {

constexpr double two_pi = boost::math::constants::two_pi<double>();
constexpr double half_pi = boost::math::constants::half_pi<double>();

int count_components(const ExponentialFactor& model, int n)
{
    const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::vector<char> inside(cells);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
        {
            const double t1 = two_pi * (i + 0.5) / n;
            const double t2 = two_pi * (j + 0.5) / n;
            inside[static_cast<std::size_t>(i) * n + j] = stokes_contains(model, t1, t2);
        }

    std::vector<std::size_t> rank(cells), parent(cells);
    boost::disjoint_sets<std::size_t*, std::size_t*> sets(rank.data(), parent.data());
    for (std::size_t c = 0; c < cells; ++c)
        if (inside[c])
            sets.make_set(c);

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
        {
            const std::size_t c = static_cast<std::size_t>(i) * n + j;
            if (!inside[c])
                continue;
            const std::size_t right = static_cast<std::size_t>((i + 1) % n) * n + j;
            const std::size_t up = static_cast<std::size_t>(i) * n + (j + 1) % n;
            if (inside[right])
                sets.union_set(c, right);
            if (inside[up])
                sets.union_set(c, up);
        }

    std::unordered_set<std::size_t> roots;
    for (std::size_t c = 0; c < cells; ++c)
        if (inside[c])
            roots.insert(sets.find_set(c));
    return static_cast<int>(roots.size());
}

}   // namespace

std::string_view to_string(Stratum stratum)
{
    switch (stratum)
    {
        case Stratum::CrossingPoint: return "crossing";
        case Stratum::ComponentAtCrossing: return "component";
        case Stratum::SmoothPoint: return "smooth";
    }
    return "unknown";
}

Stratum stratum_from_string(std::string_view name)
{
    if (name == "crossing")
        return Stratum::CrossingPoint;
    if (name == "component")
        return Stratum::ComponentAtCrossing;
    if (name == "smooth")
        return Stratum::SmoothPoint;
    throw Error(ErrorKind::InvalidStratum, "unknown stratum '" + std::string(name) + "'");
}

ExponentialFactor ExponentialFactor::make(int m1, int m2, std::complex<double> u0)
{
    if (m1 < 0 || m2 < 0)
        throw Error(ErrorKind::NotGood, "pole orders must be non-negative, got (" + std::to_string(m1)
                                            + ", " + std::to_string(m2) + ")");
    if (m1 == 0 && m2 == 0)
        throw Error(ErrorKind::NotIrregular, "m1 = m2 = 0 describes a regular singular model");
    if (u0 == std::complex<double>(0.0, 0.0))
        throw Error(ErrorKind::ZeroUnit, "u(0) must be nonzero");
    return ExponentialFactor(m1, m2, u0);
}

int pole_gcd(int m1, int m2)
{
    return std::gcd(m1, m2);
}

bool stokes_contains(const ExponentialFactor& model, double theta1, double theta2)
{
    const double phase = -model.m1() * theta1 - model.m2() * theta2 + std::arg(model.u0());
    double reduced = std::fmod(phase, two_pi);
    if (reduced < 0)
        reduced += two_pi;
    return reduced > half_pi && reduced < 3.0 * half_pi;
}

int stokes_component_count(const ExponentialFactor& model, int samples_per_axis)
{
    if (model.m1() < 1 || model.m2() < 1)
        throw Error(ErrorKind::InvalidStratum, "component counting needs m1, m2 >= 1");
    if (samples_per_axis < 8 * (model.m1() + model.m2()))
        throw Error(ErrorKind::ResolutionTooCoarse,
                    "samples_per_axis " + std::to_string(samples_per_axis) + " < 8 (m1 + m2)");
    const int coarse = count_components(model, samples_per_axis);
    const int fine = count_components(model, 2 * samples_per_axis);
    if (coarse != fine)
        throw Error(ErrorKind::ResolutionTooCoarse, "component count changed from " + std::to_string(coarse)
                                                        + " to " + std::to_string(fine) + " under refinement");
    return coarse;
}

DimensionTable rd_dimensions(const ExponentialFactor& model, Stratum stratum)
{
    DimensionTable t;
    switch (stratum)
    {
        case Stratum::CrossingPoint:
        {
            const int d = pole_gcd(model.m1(), model.m2());
            t.set(2, d);
            t.set(3, d);
            break;
        }
        case Stratum::ComponentAtCrossing:
            t.set(1, model.m1());
            t.set(2, model.m1());
            break;
        case Stratum::SmoothPoint:
            if (model.m2() != 0)
                throw Error(ErrorKind::InvalidStratum, "a smooth point requires m2 = 0");
            t.set(1, model.m1());
            break;
    }
    return t;
}

DimensionTable dr_dimensions(const ExponentialFactor& model, Stratum stratum)
{
    DimensionTable t;
    switch (stratum)
    {
        case Stratum::CrossingPoint:
        {
            const int d = pole_gcd(model.m1(), model.m2());
            t.set(0, d);
            t.set(1, d);
            break;
        }
        case Stratum::ComponentAtCrossing:
            t.set(0, model.m1());
            t.set(1, model.m1());
            break;
        case Stratum::SmoothPoint:
            if (model.m2() != 0)
                throw Error(ErrorKind::InvalidStratum, "a smooth point requires m2 = 0");
            t.set(0, model.m1());
            break;
    }
    return t;
}

int pairing_offset(Stratum stratum)
{
    return stratum == Stratum::CrossingPoint ? 2 : 1;
}

bool duality_check(const ExponentialFactor& model, Stratum stratum)
{
    const DimensionTable rd = rd_dimensions(model, stratum);
    const DimensionTable dr = dr_dimensions(model, stratum);
    const int offset = pairing_offset(stratum);
    const int top = std::max(rd.max_degree(), dr.max_degree() + offset);
    for (int p = 0; p + offset <= top; ++p)
        if (dr.at(p) != rd.at(p + offset))
            return false;
    // Nothing in rd may sit below the first paired degree (degree 0 is never stored).
    for (int q = 1; q < offset; ++q)
        if (rd.at(q) != 0)
            return false;
    return true;
}

nlohmann::json to_json(const ExponentialFactor& model)
{
    return {{"m1", model.m1()}, {"m2", model.m2()}, {"u0_re", model.u0().real()}, {"u0_im", model.u0().imag()}};
}

ExponentialFactor exponential_factor_from_json(const nlohmann::json& j)
{
    return ExponentialFactor::make(j.at("m1").get<int>(), j.at("m2").get<int>(),
                                   {j.at("u0_re").get<double>(), j.at("u0_im").get<double>()});
}

nlohmann::json dimension_report_json(const ExponentialFactor& model, Stratum stratum, const DimensionTable& dims)
{
    nlohmann::json j = to_json(model);
    j["stratum"] = std::string(to_string(stratum));
    j["dims"] = to_json(dims);
    return j;
}

}   // namespace rdper
