#include "rdper/periods_numeric.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rdper/error.hpp"

namespace rdper {

namespace {

const real_t half_pi = boost::math::constants::half_pi<real_t>();

complex_t to_complex(std::complex<double> z)
{
    return complex_t(real_t(z.real()), real_t(z.imag()));
}

real_t cabs(const complex_t& z)
{
    return abs(z);
}

std::string fmt(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string fmt(const real_t& v)
{
    std::ostringstream os;
    os << std::setprecision(25) << v;
    return os.str();
}

void require_integrable(const CHGParams& params, const EvaluationPoint& point)
{
    if (!point.in_chamber())
        throw Error(ErrorKind::ChamberViolation, "Re(alpha x) and Re(alpha y) must both be negative");
    if (params.a <= -1 || params.b <= -1)
        throw Error(ErrorKind::InvalidParams, "a > -1 and b > -1 are needed for integrability at the axes");
}

// Per-axis data of the product exp-sinh mesh at one level.
struct Axis
{
    std::vector<real_t> u;
    std::vector<complex_t> factor;   // u^e exp(beta u) times the exp-sinh Jacobian
    std::vector<real_t> mag;         // |factor| times a bound for the remaining growth
};

Axis build_axis(real_t e, const complex_t& beta, real_t c_plus, int n, real_t h)
{
    Axis ax;
    ax.u.reserve(2 * n + 1);
    for (int j = -n; j <= n; ++j)
    {
        const real_t t = j * h;
        const real_t u = exp(half_pi * sinh(t));
        const real_t w = half_pi * cosh(t) * u;
        const complex_t f = pow(u, e) * exp(beta * u) * w;
        ax.u.push_back(u);
        ax.factor.push_back(f);
        ax.mag.push_back(cabs(f) * pow(1 + u, c_plus));
    }
    return ax;
}

// Half-width of the t range: the integrable endpoint u^e decays like u^{1+e} for u -> 0.
real_t axis_tmax(real_t e)
{
    const real_t need = 160 / (boost::math::constants::pi<real_t>() * (1 + e));
    return std::clamp<real_t>(asinh(need), real_t(4), real_t(9));
}

MomentTable de_moments(const CHGParams& params, const EvaluationPoint& point, const QuadratureSpec& spec,
                       const std::vector<std::pair<int, int> >& monomials)
{
    const real_t a = to_real(params.a), b = to_real(params.b), c = to_real(params.c);
    const complex_t alpha(to_real(params.alpha), real_t(0));
    const complex_t bx = alpha * to_complex(point.x), by = alpha * to_complex(point.y);
    int kmax = 0;
    for (const auto& [k, l] : monomials)
        kmax = std::max({kmax, k, l});
    const real_t c_plus = std::max(c, real_t(0)) + kmax;
    const real_t h0 = 0.5;
    const int n1 = static_cast<int>(ceil(axis_tmax(a) / h0)), n2 = static_cast<int>(ceil(axis_tmax(b) / h0));

    const std::size_t nm = monomials.size();
    std::vector<complex_t> raw(nm, complex_t(0)), prev(nm, complex_t(0));
    MomentTable out;
    out.monomials = monomials;
    out.err.assign(nm, 0.0);

    for (int level = 0; level <= spec.max_level; ++level)
    {
        const real_t h = h0 / (1 << level);
        const int s1 = n1 << level, s2 = n2 << level;
        const Axis ax1 = build_axis(a, bx, c_plus, s1, h);
        const Axis ax2 = build_axis(b, by, c_plus, s2, h);
        const real_t cut = real_t(1e-45) * *std::max_element(ax1.mag.begin(), ax1.mag.end())
                           * *std::max_element(ax2.mag.begin(), ax2.mag.end());

        for (int i = 0; i <= 2 * s1; ++i)
        {
            if (ax1.mag[i] == 0)
                continue;
            const bool old_i = level == 0 || (i - s1) % 2 == 0;
            for (int j = 0; j <= 2 * s2; ++j)
            {
                // Pairs on the previous (coarser) grid are already in `raw`.
                if (level > 0 && old_i && (j - s2) % 2 == 0)
                    continue;
                if (ax1.mag[i] * ax2.mag[j] < cut)
                    continue;
                const real_t u1 = ax1.u[i], u2 = ax2.u[j];
                const complex_t base = ax1.factor[i] * ax2.factor[j] * pow(1 + u1 + u2, c);
                for (std::size_t m = 0; m < nm; ++m)
                {
                    const auto [k, l] = monomials[m];
                    raw[m] += base * real_t(pow(u1, k) * pow(u2, l));
                }
            }
        }

        bool converged = level >= 2;
        std::vector<complex_t> now(nm);
        for (std::size_t m = 0; m < nm; ++m)
        {
            now[m] = raw[m] * (h * h);
            const double err = static_cast<double>(cabs(now[m] - prev[m]));
            out.err[m] = err;
            if (err > std::max(spec.abs_tol, spec.rel_tol * static_cast<double>(cabs(now[m]))))
                converged = false;
        }
        prev = now;
        out.levels = level + 1;
        if (converged)
        {
            out.values = std::move(now);
            return out;
        }
    }
    throw Error(ErrorKind::NoConvergence, "double-exponential mesh did not converge within "
                                              + std::to_string(spec.max_level) + " levels");
}

// Iterated Gauss-Kronrod after u = t^p, p = 1/(1+e), which turns u^e du into p dt.
MomentTable gk_moments(const CHGParams& params, const EvaluationPoint& point, const QuadratureSpec& spec,
                       const std::vector<std::pair<int, int> >& monomials)
{
    using GK = boost::math::quadrature::gauss_kronrod<real_t, 61>;
    const real_t p1 = 1 / (1 + to_real(params.a)), p2 = 1 / (1 + to_real(params.b)), c = to_real(params.c);
    const complex_t alpha(to_real(params.alpha), real_t(0));
    const complex_t bx = alpha * to_complex(point.x), by = alpha * to_complex(point.y);
    const bool has_imag = bx.imag() != 0 || by.imag() != 0;
    const real_t inf = std::numeric_limits<real_t>::infinity();
    const real_t inner_tol = 1e-24, outer_tol = std::min(real_t(1e-20), real_t(spec.rel_tol) * real_t(1e-6));
    const real_t underflow = -11000;

    MomentTable out;
    out.monomials = monomials;
    for (const auto& [k, l] : monomials)
    {
        std::array<real_t, 2> parts{0, 0};
        real_t err_total = 0;
        for (int part = 0; part < (has_imag ? 2 : 1); ++part)
        {
            auto outer = [&, k = k, l = l](real_t t1) -> real_t {
                const real_t u1 = pow(t1, p1);
                const complex_t e1 = bx * u1;
                if (e1.real() < underflow)
                    return 0;
                const complex_t f1 = exp(e1) * real_t(pow(u1, k)) * p1 * p2;
                auto inner = [&](real_t t2) -> real_t {
                    const real_t u2 = pow(t2, p2);
                    const complex_t e2 = by * u2;
                    if (e2.real() < underflow)
                        return 0;
                    const complex_t v = f1 * exp(e2) * real_t(pow(u2, l) * pow(1 + u1 + u2, c));
                    return part == 0 ? v.real() : v.imag();
                };
                return GK::integrate(inner, real_t(0), inf, 20, inner_tol);
            };
            real_t err = 0;
            parts[part] = GK::integrate(outer, real_t(0), inf, 20, outer_tol, &err);
            err_total += err;
        }
        out.values.emplace_back(parts[0], parts[1]);
        out.err.push_back(static_cast<double>(err_total));
    }
    return out;
}

}   // namespace

real_t to_real(const mpq_class& q)
{
    return real_t(q.get_num().get_str()) / real_t(q.get_den().get_str());
}

EvaluationPoint EvaluationPoint::make(const CHGParams& params, std::complex<double> x, std::complex<double> y)
{
    const double alpha = params.alpha.get_d();
    return {x, y, (alpha * x).real() < 0, (alpha * y).real() < 0};
}

void QuadratureSpec::validate() const
{
    if (digits < 1 || digits > working_digits)
        throw Error(ErrorKind::InvalidQuadratureSpec,
                    "digits must lie in 1.." + std::to_string(working_digits) + ", got " + std::to_string(digits));
    if (!(rel_tol > 0) || !(abs_tol > 0))
        throw Error(ErrorKind::InvalidQuadratureSpec, "tolerances must be positive");
    if (rel_tol < std::pow(10.0, -(digits - 6)))
        throw Error(ErrorKind::InvalidQuadratureSpec,
                    "rel_tol " + fmt(rel_tol) + " leaves fewer than 6 guard digits at precision "
                        + std::to_string(digits));
    if (max_level < 2 || max_level > 14)
        throw Error(ErrorKind::InvalidQuadratureSpec, "max_level must lie in 2..14");
}

complex_t integrand(const CHGParams& params, const EvaluationPoint& point, OmegaTag omega, real_t u1, real_t u2)
{
    if (!(u1 > 0 && u2 > 0))
        throw std::invalid_argument("integrand: u1, u2 must be positive");
    const complex_t alpha(to_real(params.alpha), real_t(0));
    const complex_t expo = alpha * (to_complex(point.x) * u1 + to_complex(point.y) * u2);
    complex_t v = exp(expo) * real_t(pow(u1, to_real(params.a)) * pow(u2, to_real(params.b))
                                     * pow(1 + u1 + u2, to_real(params.c)));
    if (omega == OmegaTag::U1Du)
        v *= u1;
    else if (omega == OmegaTag::U2Du)
        v *= u2;
    return v;
}

MomentTable integrate_moments(const CHGParams& params, const EvaluationPoint& point, const QuadratureSpec& spec,
                              const std::vector<std::pair<int, int> >& monomials, Engine engine)
{
    spec.validate();
    require_integrable(params, point);
    for (const auto& [k, l] : monomials)
        if (k < 0 || l < 0)
            throw std::invalid_argument("integrate_moments: exponents must be non-negative");
    return engine == Engine::DoubleExponential ? de_moments(params, point, spec, monomials)
                                               : gk_moments(params, point, spec, monomials);
}

double PeriodVector::norm() const
{
    double n = 0;
    for (const auto& v : values)
        n = std::max(n, static_cast<double>(cabs(v)));
    return n;
}

PeriodVector period_vector(const CHGParams& params, const EvaluationPoint& point, const QuadratureSpec& spec,
                           Engine engine)
{
    const auto t = integrate_moments(params, point, spec, {{0, 0}, {1, 0}, {0, 1}}, engine);
    return {{t.values[0], t.values[1], t.values[2]}, {t.err[0], t.err[1], t.err[2]}, point, params};
}

std::array<complex_t, 3> exactness_residual(const CHGParams& params, const EvaluationPoint& point,
                                            const QuadratureSpec& spec)
{
    const auto t = integrate_moments(params, point, spec, {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}});
    const auto& M = t.values;   // 1, u1, u2, u1^2, u1 u2, u2^2
    const complex_t al(to_real(params.alpha), real_t(0));
    const complex_t x = to_complex(point.x), y = to_complex(point.y);
    const complex_t a1(1 + to_real(params.a), real_t(0)), b1(1 + to_real(params.b), real_t(0));
    const complex_t ax = al * x, ay = al * y;

    const complex_t gm1 = ax * M[3] + ax * M[4] + (ax - b1) * M[1] + a1 * M[2] + a1 * M[0];
    const complex_t gm2 = -(ay * M[5] + ay * M[4] + b1 * M[1] + (ay - a1) * M[2] + b1 * M[0]);
    const complex_t gm3 = al * M[4] + b1 / (y - x) * M[1] - a1 / (y - x) * M[2];
    return {gm1, gm2, gm3};
}

std::pair<Matrix3, Matrix3> gm_matrices_at(const CHGParams& params, std::complex<double> xd, std::complex<double> yd)
{
    const complex_t x = to_complex(xd), y = to_complex(yd), L = y - x;
    const complex_t a1(1 + to_real(params.a), real_t(0)), b1(1 + to_real(params.b), real_t(0));
    const complex_t al(to_real(params.alpha), real_t(0)), z(real_t(0), real_t(0));
    Matrix3 ax = {{
        {z, -a1 / x, z},
        {al, b1 * y / (x * L) - al, -b1 / L},
        {z, -a1 * y / (x * L), a1 / L},
    }};
    Matrix3 ay = {{
        {z, z, -b1 / y},
        {z, -b1 / L, b1 * x / (y * L)},
        {al, a1 / L, -a1 * x / (y * L) - al},
    }};
    return {ax, ay};
}

GMResidual gm_residual(const CHGParams& params, const EvaluationPoint& point, double step,
                       const QuadratureSpec& spec)
{
    const double scale = std::min({std::abs(point.x), std::abs(point.y), std::abs(point.x - point.y)});
    if (!(step > 0) || step > 0.1 * scale)
        throw Error(ErrorKind::StepTooLarge, "step " + fmt(step) + " is not small against |x|, |y|, |x - y| = "
                                                 + fmt(scale));
    const PeriodVector F = period_vector(params, point, spec);
    const auto [ax, ay] = gm_matrices_at(params, point.x, point.y);

    using Vec = std::array<complex_t, 3>;
    auto at = [&](std::complex<double> dx, std::complex<double> dy) {
        return period_vector(params, EvaluationPoint::make(params, point.x + dx, point.y + dy), spec).values;
    };
    auto central = [&](bool along_x, double h) {
        const std::complex<double> dx = along_x ? h : 0.0, dy = along_x ? 0.0 : h;
        const Vec plus = at(dx, dy), minus = at(-dx, -dy);
        Vec d;
        for (int j = 0; j < 3; ++j)
            d[j] = (plus[j] - minus[j]) / real_t(2 * h);
        return d;
    };

    GMResidual out{0, 0, 0, 0, 0, 0, 0};
    for (bool along_x : {true, false})
    {
        const Matrix3& A = along_x ? ax : ay;
        Vec expected;
        real_t size = 0;
        for (int j = 0; j < 3; ++j)
        {
            expected[j] = complex_t(0);
            for (int i = 0; i < 3; ++i)
                expected[j] += A[i][j] * F.values[i];
            size = std::max(size, cabs(expected[j]));
        }
        const Vec coarse = central(along_x, step), fine = central(along_x, step / 2);
        for (int j = 0; j < 3; ++j)
        {
            const complex_t rich = (real_t(4) * fine[j] - coarse[j]) / real_t(3);
            out.residual = std::max(out.residual, static_cast<double>(cabs(rich - expected[j]) / size));
            out.central_residual
                = std::max(out.central_residual, static_cast<double>(cabs(coarse[j] - expected[j]) / size));
            out.richardson_estimate
                = std::max(out.richardson_estimate, static_cast<double>(cabs(rich - fine[j]) / size));
            if (j == 0)
            {
                const complex_t target = complex_t(to_real(params.alpha), real_t(0)) * F.values[along_x ? 1 : 2];
                (along_x ? out.du_x_identity : out.du_y_identity)
                    = static_cast<double>(cabs(rich - target) / cabs(target));
                (along_x ? out.du_x_central : out.du_y_central)
                    = static_cast<double>(cabs(coarse[j] - target) / cabs(target));
            }
        }
    }
    if (out.richardson_estimate > max_richardson_correction)
        throw Error(ErrorKind::StepTooLarge, "Richardson correction " + fmt(out.richardson_estimate)
                                                 + " exceeds " + fmt(max_richardson_correction));
    return out;
}

std::string period_csv_header()
{
    return "a,b,c,alpha,x_re,x_im,y_re,y_im,F_du_re,F_du_im,F_u1du_re,F_u1du_im,F_u2du_re,F_u2du_im,"
           "err_du,err_u1du,err_u2du";
}

std::string to_csv_row(const PeriodVector& v)
{
    std::ostringstream os;
    os << v.params.a.get_str() << ',' << v.params.b.get_str() << ',' << v.params.c.get_str() << ','
       << v.params.alpha.get_str() << ',' << fmt(v.point.x.real()) << ',' << fmt(v.point.x.imag()) << ','
       << fmt(v.point.y.real()) << ',' << fmt(v.point.y.imag());
    for (const auto& z : v.values)
        os << ',' << fmt(z.real()) << ',' << fmt(z.imag());
    for (double e : v.err)
        os << ',' << fmt(e);
    return os.str();
}

nlohmann::json to_json(const PeriodVector& v)
{
    nlohmann::json values = nlohmann::json::object();
    const char* names[] = {"du", "u1du", "u2du"};
    for (int i = 0; i < 3; ++i)
        values[names[i]] = {{"re", fmt(v.values[i].real())}, {"im", fmt(v.values[i].imag())}, {"err", v.err[i]}};
    return {{"params", to_json(v.params)},
            {"x", {v.point.x.real(), v.point.x.imag()}},
            {"y", {v.point.y.real(), v.point.y.imag()}},
            {"periods", values}};
}

nlohmann::json to_json(const GMResidual& r)
{
    return {{"residual", r.residual},
            {"central_residual", r.central_residual},
            {"richardson_estimate", r.richardson_estimate},
            {"du_x_identity", r.du_x_identity},
            {"du_y_identity", r.du_y_identity},
            {"du_x_central", r.du_x_central},
            {"du_y_central", r.du_y_central}};
}

}   // namespace rdper
