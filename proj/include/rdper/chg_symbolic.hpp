/**
 * Exact symbolic layer for the two-variable confluent hypergeometric example
 *
 *   U = u1^a u2^b (1 + u1 + u2)^c exp(alpha (x u1 + y u2)),  nabla = d + dlog U,
 *
 * with rational parameters. Everything is checked per instantiation as an
 * exact polynomial identity over Q; there are no tolerances anywhere here.
 */
#ifndef RDPER_CHG_SYMBOLIC_HPP
#define RDPER_CHG_SYMBOLIC_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace rdper {

/// Polynomial in two variables with rational coefficients; zero coefficients are never stored.
class Poly2
{
    public:
        using Exponent = std::pair<int, int>;

        Poly2() = default;
        Poly2(const mpq_class& c);   // NOLINT: constants convert implicitly
        Poly2(int c) : Poly2(mpq_class(c)) {}   // NOLINT

        static Poly2 monomial(int i, int j, const mpq_class& c = 1);

        const std::map<Exponent, mpq_class>& terms() const { return terms_; }
        mpq_class coeff(int i, int j) const;
        bool is_zero() const { return terms_.empty(); }
        int total_degree() const;   // -1 for the zero polynomial

        Poly2& operator+=(const Poly2& o);
        Poly2& operator-=(const Poly2& o);
        Poly2& operator*=(const mpq_class& c);
        friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
        friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
        friend Poly2 operator*(const Poly2& a, const Poly2& b);
        friend Poly2 operator*(Poly2 a, const mpq_class& c) { return a *= c; }
        friend Poly2 operator*(const mpq_class& c, Poly2 a) { return a *= c; }
        Poly2 operator-() const { return *this * mpq_class(-1); }
        bool operator==(const Poly2& o) const { return terms_ == o.terms_; }

        Poly2 pow(int n) const;
        Poly2 derivative(int var) const;   // var = 0 or 1
        mpq_class evaluate(const mpq_class& v1, const mpq_class& v2) const;

        /// "3/2*u1^2*u2 - u2 + 1" with the given variable names.
        std::string to_string(const char* v1 = "u1", const char* v2 = "u2") const;

    private:
        void add_term(int i, int j, const mpq_class& c);

        std::map<Exponent, mpq_class> terms_;
};

/// L = c0 + c1 v1 + c2 v2; the third denominator factor of RatFunc2.
struct LinearForm
{
    mpq_class c0, c1, c2;

    static LinearForm one_plus_sum() { return {1, 1, 1}; }       // s = 1 + u1 + u2
    static LinearForm y_minus_x() { return {0, -1, 1}; }         // y - x in the (x, y) chart
    Poly2 as_poly() const;
    bool operator==(const LinearForm& o) const { return c0 == o.c0 && c1 == o.c1 && c2 == o.c2; }
};

/**
 * numerator / (v1^p v2^q L^r). Equality is decided by cross-multiplication
 * and expansion, never by cancelling common factors.
 */
class RatFunc2
{
    public:
        RatFunc2() = default;
        RatFunc2(Poly2 num, int p = 0, int q = 0, int r = 0, LinearForm form = LinearForm::one_plus_sum());

        static RatFunc2 constant(const mpq_class& c, LinearForm form = LinearForm::one_plus_sum());

        const Poly2& numerator() const { return num_; }
        int p() const { return p_; }
        int q() const { return q_; }
        int r() const { return r_; }
        const LinearForm& form() const { return form_; }

        RatFunc2& operator+=(const RatFunc2& o);
        RatFunc2& operator-=(const RatFunc2& o);
        friend RatFunc2 operator+(RatFunc2 a, const RatFunc2& b) { return a += b; }
        friend RatFunc2 operator-(RatFunc2 a, const RatFunc2& b) { return a -= b; }
        friend RatFunc2 operator*(const RatFunc2& a, const RatFunc2& b);
        friend RatFunc2 operator*(const mpq_class& c, const RatFunc2& a);
        RatFunc2 operator-() const { return mpq_class(-1) * *this; }

        RatFunc2 derivative(int var) const;

        /// Cross-multiplied equality.
        bool equals(const RatFunc2& o) const;
        bool is_zero() const { return num_.is_zero(); }

        /// Throws SingularPoint if the denominator vanishes.
        mpq_class evaluate(const mpq_class& v1, const mpq_class& v2) const;

        /// The polynomial this function equals, if the denominator divides the numerator exactly.
        std::optional<Poly2> as_polynomial() const;

        std::string to_string(const char* v1 = "u1", const char* v2 = "u2") const;

    private:
        Poly2 num_;
        int p_ = 0, q_ = 0, r_ = 0;
        LinearForm form_ = LinearForm::one_plus_sum();
};

/// Parameters (a, b, c, alpha) with a + b + c = -3, a and b not integers, alpha != 0.
struct CHGParams
{
    mpq_class a, b, c, alpha;

    /// Throws InvalidParams when a constraint fails.
    static CHGParams make(const mpq_class& a, const mpq_class& b, const mpq_class& c, const mpq_class& alpha);
};

nlohmann::json to_json(const CHGParams& p);

/// f du1 + g du2
struct OneForm
{
    RatFunc2 f;
    RatFunc2 g;
};

/// Throws SingularPoint for x = 0, y = 0 or x = y.
void require_regular_point(const mpq_class& x, const mpq_class& y);

/// nabla h = (dh/du1 + h w1) du1 + (dh/du2 + h w2) du2 with w = dlog U.
OneForm nabla_function(const CHGParams& params, const mpq_class& x, const mpq_class& y, const RatFunc2& h);

/// Coefficient of du = du1 ^ du2 in nabla(f du1 + g du2).
RatFunc2 nabla_one_form(const CHGParams& params, const mpq_class& x, const mpq_class& y, const OneForm& form);

/// The relations as printed, instantiated at (params, x, y). Tests perturb these.
struct PrintedRelations
{
    Poly2 gm1;                         // nabla(u1 s du2) written out
    Poly2 gm2;                         // nabla(u2 s du1) written out, including the overall sign
    OneForm nab1;                      // the combination whose nabla yields the u1 u2 relation
    Poly2 gm3;                         // alpha u1 u2 + (1+b)/(y-x) u1 - (1+a)/(y-x) u2
    std::array<mpq_class, 3> gm3_reduced;   // class of alpha u1 u2 du in the basis du, u1 du, u2 du
};

PrintedRelations printed_relations(const CHGParams& params, const mpq_class& x, const mpq_class& y);

struct IdentityCheck
{
    std::string name;
    bool pass;
    std::string residual;   // stringified residual polynomial, "0" on success
};

struct IdentityReport
{
    std::vector<IdentityCheck> checks;

    bool all_pass() const;
    void require() const;   // throws IdentityFailed with the first failing residual
};

/**
 * GMI, GMII, nab1 (nabla of the combination equals (1+c)(y-x) times gm3) and
 * GMIII (the reducer maps alpha u1 u2 du to the printed triple).
 */
IdentityReport check_gm_relations(const CHGParams& params, const mpq_class& x, const mpq_class& y,
                                  const PrintedRelations& printed);
IdentityReport check_gm_relations(const CHGParams& params, const mpq_class& x, const mpq_class& y);

/**
 * Rewrites polynomial 2-forms into the basis du, u1 du, u2 du.
 *
 * The exact forms nabla(u1^{k+1} u2^l s du2) and nabla(u1^k u2^{l+1} s du1)
 * of degree <= max_degree + 2 are put in reduced echelon form for the order
 * "higher total degree first, then larger power of u1". A polynomial of degree
 * <= max_degree is reduced by these pivots. Construction throws
 * ReductionDiverged if a non-basis monomial of degree <= max_degree is not a
 * pivot or a basis monomial is. `shuffle_seed` permutes the generators before
 * elimination; the result must not depend on it.
 */
class DeRhamReducer
{
    public:
        DeRhamReducer(const CHGParams& params, const mpq_class& x, const mpq_class& y, int max_degree,
                      unsigned shuffle_seed = 0);

        std::array<mpq_class, 3> reduce(const Poly2& p) const;
        std::array<mpq_class, 3> reduce_monomial(int k, int l) const { return reduce(Poly2::monomial(k, l)); }

        const std::vector<Poly2>& generators() const { return generators_; }
        int max_degree() const { return max_degree_; }

    private:
        int column(int i, int j) const;

        int max_degree_;
        int top_;
        std::vector<Poly2> generators_;
        std::vector<std::pair<int, int> > monomials_;            // column -> exponent
        std::vector<std::vector<mpq_class> > pivot_rows_;          // reduced echelon rows
        std::vector<int> pivot_of_column_;                         // index into pivot_rows_ or -1
};

std::array<mpq_class, 3> reduce_to_basis(const CHGParams& params, const mpq_class& x, const mpq_class& y, int k,
                                         int l);

/// Connection matrices in the (x, y) chart; entries are functions of x, y with denominators x^p y^q (y-x)^r.
struct GMMatrix
{
    std::array<std::array<RatFunc2, 3>, 3> ax;
    std::array<std::array<RatFunc2, 3>, 3> ay;
};

/// The matrices exactly as printed (column j is the image of basis element j).
GMMatrix printed_gm_matrix(const CHGParams& params);

/// Entries of `m` that disagree with the reduction of alpha u1^{k+1} u2^l du and alpha u1^k u2^{l+1} du.
std::vector<std::string> gm_matrix_mismatches(const CHGParams& params, const GMMatrix& m,
                                              const std::vector<std::pair<mpq_class, mpq_class> >& points);

/// Default rational sample points in general position.
std::vector<std::pair<mpq_class, mpq_class> > default_sample_points(int count);

/// printed_gm_matrix verified column by column at default points; throws MatrixMismatch.
GMMatrix gm_matrix(const CHGParams& params);

struct IntegrabilityPoint
{
    mpq_class x, y;
    std::array<std::array<mpq_class, 3>, 3> residual;   // dAy/dx - dAx/dy - [Ax, Ay]
    bool zero;
};

struct IntegrabilityReport
{
    std::vector<IntegrabilityPoint> points;
    bool all_zero() const;
    void require() const;   // throws IntegrabilityFailed with the first nonzero residual
};

IntegrabilityReport check_integrability(const GMMatrix& m,
                                        const std::vector<std::pair<mpq_class, mpq_class> >& points);

nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const IntegrabilityReport& r);

}   // namespace rdper

#endif
