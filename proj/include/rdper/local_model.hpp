/**
 * Good rank-1 local models e^alpha with alpha = x1^{-m1} x2^{-m2} u(x).
 *
 * Only (m1, m2, u(0)) is retained: the dimension formulas and the Stokes set
 * depend on nothing else. The dimension tables below are the closed-form
 * answers for the three local strata of a normal crossing divisor; the
 * topology and truncated-operator modules recompute them independently.
 */
#ifndef RDPER_LOCAL_MODEL_HPP
#define RDPER_LOCAL_MODEL_HPP

#include <complex>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rdper/dimension_table.hpp"

namespace rdper {

enum class Stratum
{
    CrossingPoint,          // D = {x1 x2 = 0}, invariants at the origin
    ComponentAtCrossing,    // contribution of D1 near a crossing point
    SmoothPoint,            // D = {x1 = 0}
};

std::string_view to_string(Stratum stratum);
Stratum stratum_from_string(std::string_view name);   // "crossing" | "component" | "smooth"

class ExponentialFactor
{
    public:
        /**
         * Validating constructor.
         *
         * Throws Error{NotGood} for a negative exponent, Error{NotIrregular}
         * for m1 = m2 = 0 and Error{ZeroUnit} for u0 = 0.
         */
        static ExponentialFactor make(int m1, int m2, std::complex<double> u0);

        int m1() const { return m1_; }
        int m2() const { return m2_; }
        std::complex<double> u0() const { return u0_; }

    private:
        ExponentialFactor(int m1, int m2, std::complex<double> u0) : m1_(m1), m2_(m2), u0_(u0) {}

        int m1_;
        int m2_;
        std::complex<double> u0_;
};

/// gcd with gcd(0, m) = m.
int pole_gcd(int m1, int m2);

/**
 * Stokes membership of the direction (theta1, theta2): the phase
 * -m1*theta1 - m2*theta2 + arg(u0), reduced mod 2pi, lies in the open
 * interval (pi/2, 3pi/2).
 */
bool stokes_contains(const ExponentialFactor& model, double theta1, double theta2);

/**
 * Number of connected components of the Stokes set on the torus S^1 x S^1.
 *
 * Samples cell centres of a samples_per_axis^2 grid, joins 4-neighbours with
 * torus wraparound, and repeats on the doubled grid. Requires m1, m2 >= 1 and
 * samples_per_axis >= 8 (m1 + m2); throws ResolutionTooCoarse otherwise or
 * when the doubled grid disagrees.
 */
int stokes_component_count(const ExponentialFactor& model, int samples_per_axis);

/// Rapid-decay homology dimensions (degree 0 omitted).
DimensionTable rd_dimensions(const ExponentialFactor& model, Stratum stratum);

/// De Rham cohomology dimensions of the irregularity complex.
DimensionTable dr_dimensions(const ExponentialFactor& model, Stratum stratum);

/// Degree offset between paired de Rham and rapid-decay degrees (dR p <-> rd p + offset).
int pairing_offset(Stratum stratum);

/// True iff dr_dimensions(p) == rd_dimensions(p + offset) for every degree p.
bool duality_check(const ExponentialFactor& model, Stratum stratum);

nlohmann::json to_json(const ExponentialFactor& model);
ExponentialFactor exponential_factor_from_json(const nlohmann::json& j);

/// {"m1", "m2", "u0_re", "u0_im", "stratum", "dims"}
nlohmann::json dimension_report_json(const ExponentialFactor& model, Stratum stratum,
                                     const DimensionTable& dims);

}   // namespace rdper

#endif
