/**
 * Periods of the confluent hypergeometric example over the positive quadrant
 *
 *   F_w(x, y) = int_{(0,inf)^2} u1^a u2^b (1 + u1 + u2)^c exp(alpha (x u1 + y u2)) w,
 *
 * w in {du, u1 du, u2 du}, with principal branches. Arithmetic is carried out
 * in quad precision (about 33 significant digits).
 */
#ifndef RDPER_PERIODS_NUMERIC_HPP
#define RDPER_PERIODS_NUMERIC_HPP

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>
#include <json.hpp>

#include "rdper/chg_symbolic.hpp"

namespace rdper {

using real_t = boost::multiprecision::float128;
using complex_t = boost::multiprecision::complex128;

/// Decimal digits carried by real_t.
constexpr int working_digits = 33;

real_t to_real(const mpq_class& q);

struct EvaluationPoint
{
    std::complex<double> x;
    std::complex<double> y;
    bool decay_x;   // Re(alpha x) < 0
    bool decay_y;   // Re(alpha y) < 0

    static EvaluationPoint make(const CHGParams& params, std::complex<double> x, std::complex<double> y);
    bool in_chamber() const { return decay_x && decay_y; }
};

struct QuadratureSpec
{
    double rel_tol = 1e-10;
    double abs_tol = 1e-30;
    int max_level = 8;    // halvings of the initial mesh width 1/2
    int digits = 25;      // requested precision; must not exceed working_digits

    /// Throws InvalidQuadratureSpec.
    void validate() const;
};

enum class OmegaTag
{
    Du,
    U1Du,
    U2Du,
};

enum class Engine
{
    DoubleExponential,   // iterated exp-sinh on a shared product mesh
    GaussKronrod,        // iterated adaptive 61-point Gauss-Kronrod, used as an oracle
};

/// U times 1, u1 or u2 at a point of the open quadrant; no chamber check.
complex_t integrand(const CHGParams& params, const EvaluationPoint& point, OmegaTag omega, real_t u1, real_t u2);

struct MomentTable
{
    std::vector<std::pair<int, int> > monomials;
    std::vector<complex_t> values;   // integral of U u1^k u2^l
    std::vector<double> err;
    int levels = 0;                  // mesh levels used (DE) or 0 (GK)
};

/**
 * Integrals of U u1^k u2^l over the quadrant for each requested monomial.
 * Throws ChamberViolation outside the decay chamber, InvalidParams if
 * a <= -1 or b <= -1, and NoConvergence when max_level is exhausted.
 */
MomentTable integrate_moments(const CHGParams& params, const EvaluationPoint& point, const QuadratureSpec& spec,
                              const std::vector<std::pair<int, int> >& monomials,
                              Engine engine = Engine::DoubleExponential);

struct PeriodVector
{
    std::array<complex_t, 3> values;   // F_du, F_u1du, F_u2du
    std::array<double, 3> err;
    EvaluationPoint point;
    CHGParams params;

    double norm() const;   // max modulus
};

PeriodVector period_vector(const CHGParams& params, const EvaluationPoint& point, const QuadratureSpec& spec,
                           Engine engine = Engine::DoubleExponential);

/// Integrals of U times the two written-out relations and the u1 u2 relation; all three vanish.
std::array<complex_t, 3> exactness_residual(const CHGParams& params, const EvaluationPoint& point,
                                            const QuadratureSpec& spec);

/// Printed connection matrices evaluated at a complex point.
using Matrix3 = std::array<std::array<complex_t, 3>, 3>;
std::pair<Matrix3, Matrix3> gm_matrices_at(const CHGParams& params, std::complex<double> x, std::complex<double> y);

struct GMResidual
{
    double residual;              // max relative residual of the six identities, Richardson derivatives
    double central_residual;      // same with plain central differences at `step`
    double richardson_estimate;   // relative size of the Richardson correction
    double du_x_identity;         // |dF_du/dx - alpha F_u1du| / |alpha F_u1du|
    double du_y_identity;         // |dF_du/dy - alpha F_u2du| / |alpha F_u2du|
    double du_x_central;          // du_x_identity with plain central differences
    double du_y_central;
};

/// Largest relative Richardson correction accepted by gm_residual.
constexpr double max_richardson_correction = 1e-3;

/**
 * Central differences of the periods in x and y against Ax^T F and Ay^T F
 * (column j of the printed matrices is the image of basis element j).
 * Throws StepTooLarge if the Richardson correction exceeds
 * max_richardson_correction or the step is not small against |x|, |y|, |x - y|.
 */
GMResidual gm_residual(const CHGParams& params, const EvaluationPoint& point, double step,
                       const QuadratureSpec& spec);

std::string period_csv_header();
std::string to_csv_row(const PeriodVector& v);

nlohmann::json to_json(const PeriodVector& v);
nlohmann::json to_json(const GMResidual& r);

}   // namespace rdper

#endif
