/**
 * Coefficient-recursion operators on truncated Laurent and power series.
 *
 * An operator is a finite list of stencil terms: a term moves the coefficient
 * of x1^k x2^l in one source component to x1^{k+dk} x2^{l+dl} in one target
 * component, scaled by an affine function of (k, l). Truncating to the window
 * |k| + |l| <= T turns the operator into an exact integer matrix whose rows
 * are target monomials with a fully resolved stencil.
 *
 * Each space classifies an index as Inside (a basis vector), Absent (the
 * coefficient is identically zero, so the term is dropped) or Unknown (the
 * coefficient is modded out or not modelled, so any row that needs it is
 * dropped rather than zero padded).
 */
#ifndef RDPER_LAURENT_OPS_HPP
#define RDPER_LAURENT_OPS_HPP

#include <compare>
#include <string>
#include <vector>

#include <json.hpp>

#include "rdper/sparse_matrix.hpp"

namespace rdper {

struct MonomialIndex
{
    int k;
    int l;

    int degree() const { return (k < 0 ? -k : k) + (l < 0 ? -l : l); }
    auto operator<=>(const MonomialIndex&) const = default;
};

enum class Membership
{
    Inside,
    Absent,
    Unknown,
};

class SeriesSpace
{
    public:
        enum class Kind
        {
            FullPower,          // k, l >= 0
            PStrip,             // FullPower minus {k > M and l > N}
            ShiftedFull,        // x1^s1 x2^s2 FullPower
            QuotientByP,        // FullPower / P_MN, realized as x1^{M+1} x2^{N+1} FullPower
            OneVarPolar,        // z^{-1}, z^{-2}, ...; l = 0
            PolarTimesPower,    // z^{-j} x2^l with j >= 1, l >= 0
            NegQuadMero,        // k < a, l < b, minus the deep corner beyond `depth`
        };

        static SeriesSpace full_power();
        static SeriesSpace p_strip(int m, int n);
        static SeriesSpace shifted_full(int s1, int s2);
        static SeriesSpace quotient_by_p(int m, int n);
        static SeriesSpace one_var_polar();
        static SeriesSpace polar_times_power();
        static SeriesSpace neg_quad_mero(int a, int b, int depth);

        Kind kind() const { return kind_; }
        Membership classify(MonomialIndex idx) const;
        bool is_quotient() const;
        std::string describe() const;

    private:
        SeriesSpace(Kind kind, int p = 0, int q = 0, int r = 0) : kind_(kind), p_(p), q_(q), r_(r) {}

        Kind kind_;
        int p_, q_, r_;
};

/// coefficient(k, l) = ck * k + cl * l + c0, evaluated at the source index.
struct StencilTerm
{
    int source;
    int target;
    int dk;
    int dl;
    int ck;
    int cl;
    int c0;
};

struct OperatorKind
{
    enum class Tag
    {
        DCrossing,
        ECrossing,
        EOnP,
        AOp,
        RhoOneVar,
        PhiSmooth,
        PsiSmooth,
        PhiBarCrossing,
    };

    Tag tag;
    int m1 = 0;
    int m2 = 0;

    static OperatorKind d_crossing(int m1, int m2) { return {Tag::DCrossing, m1, m2}; }
    static OperatorKind e_crossing(int m1, int m2) { return {Tag::ECrossing, m1, m2}; }
    static OperatorKind e_on_p(int m1, int m2) { return {Tag::EOnP, m1, m2}; }
    static OperatorKind a_op() { return {Tag::AOp, 1, 1}; }
    static OperatorKind rho_onevar(int m) { return {Tag::RhoOneVar, m, 0}; }
    static OperatorKind phi_smooth(int m) { return {Tag::PhiSmooth, m, 0}; }
    static OperatorKind psi_smooth(int m) { return {Tag::PsiSmooth, m, 0}; }
    static OperatorKind phi_bar_crossing(int m1, int m2) { return {Tag::PhiBarCrossing, m1, m2}; }

    /// "D", "E", "EP", "A", "rho", "phi", "psi", "phibar"; unknown names throw std::invalid_argument.
    static OperatorKind parse(const std::string& name, int m1, int m2);

    std::string name() const;

    /// Window enlargement step: m1 + m2 + 1 for crossing operators, m + 1 in one variable, 3 for A.
    int period() const;

    /// Smallest admissible truncation degree.
    int min_window() const;
};

struct OperatorStencil
{
    std::vector<SeriesSpace> sources;
    std::vector<SeriesSpace> targets;
    std::vector<StencilTerm> terms;
};

/// Spaces and terms of an operator; `T` only matters for the depth of NegQuadMero spaces.
OperatorStencil operator_stencil(const OperatorKind& op, int T);

struct Coordinate
{
    int component;
    MonomialIndex index;
};

struct LaurentSystem
{
    OperatorKind op;
    int T;
    std::vector<Coordinate> columns;
    std::vector<Coordinate> rows;
    SparseMatrix matrix;
};

/// Throws WindowTooSmall if T < op.min_window() and std::invalid_argument for pole orders below 1.
LaurentSystem build_system(const OperatorKind& op, int T);

/**
 * Dimension of the kernel restricted to the columns with `window[c] == true`:
 * |W| + rank(M[:, not W]) - rank(M).
 */
int projected_kernel_dim(const LaurentSystem& system, const std::vector<bool>& window);

/// Projection onto the columns of total degree <= T0.
int projected_kernel_dim(const LaurentSystem& system, int T0);

/// rows - rank.
int cokernel_dim(const LaurentSystem& system);

struct Stabilization
{
    std::vector<int> windows;
    std::vector<int> values;
    int value = 0;
    bool stabilized = false;
};

/**
 * Kernel dimensions of the systems at T0 + i * period (i = 1, 2, ...),
 * projected onto the degree <= T0 window, until three consecutive values
 * agree. Throws NotStabilized if that does not happen within `steps`
 * enlargements, and std::invalid_argument for steps < 3.
 */
Stabilization stabilize_kernel(const OperatorKind& op, int T0, int steps);
Stabilization stabilize_cokernel(const OperatorKind& op, int T0, int steps);

int stabilized_kernel_dim(const OperatorKind& op, int T0, int steps);
int stabilized_cokernel_dim(const OperatorKind& op, int T0, int steps);

/// Contributions of the five index classes to the kernel and cokernel of E on P.
struct CaseTally
{
    int ker[5];
    int coker[5];
    int ker_total;
    int coker_total;
};

CaseTally pfred_case_count(int m1, int m2);

struct EulerReport
{
    int h0;
    int h1;
    int h2;
    int chi;
};

/**
 * Cohomology dimensions of the truncated complex H -> H^2 -> H given by D
 * and E at a crossing, from window T. See the implementation for how h1 is
 * read off.
 */
EulerReport euler_characteristic(int m1, int m2, int T, int steps = 6);

/// One "row col num/den" line per entry after a "rows cols nnz" header.
std::string to_triplet_text(const LaurentSystem& system);

nlohmann::json to_json(const Stabilization& s);

}   // namespace rdper

#endif
