#include "rdper/laurent_ops.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rdper/error.hpp"

namespace rdper {

// ---------------------------------------------------------------------------
// Series spaces

SeriesSpace SeriesSpace::full_power() { return SeriesSpace(Kind::FullPower); }
SeriesSpace SeriesSpace::p_strip(int m, int n) { return SeriesSpace(Kind::PStrip, m, n); }
SeriesSpace SeriesSpace::shifted_full(int s1, int s2) { return SeriesSpace(Kind::ShiftedFull, s1, s2); }
SeriesSpace SeriesSpace::quotient_by_p(int m, int n) { return SeriesSpace(Kind::QuotientByP, m, n); }
SeriesSpace SeriesSpace::one_var_polar() { return SeriesSpace(Kind::OneVarPolar); }
SeriesSpace SeriesSpace::polar_times_power() { return SeriesSpace(Kind::PolarTimesPower); }
SeriesSpace SeriesSpace::neg_quad_mero(int a, int b, int depth) { return SeriesSpace(Kind::NegQuadMero, a, b, depth); }

Membership SeriesSpace::classify(MonomialIndex idx) const
{
    const int k = idx.k, l = idx.l;
    auto inside_if = [](bool in) { return in ? Membership::Inside : Membership::Absent; };
    switch (kind_)
    {
        case Kind::FullPower:
            return inside_if(k >= 0 && l >= 0);
        case Kind::PStrip:
            return inside_if(k >= 0 && l >= 0 && (k <= p_ || l <= q_));
        case Kind::ShiftedFull:
            return inside_if(k >= p_ && l >= q_);
        case Kind::QuotientByP:
            return inside_if(k > p_ && l > q_);
        case Kind::OneVarPolar:
            if (l != 0)
                return Membership::Absent;
            return k <= -1 ? Membership::Inside : Membership::Unknown;
        case Kind::PolarTimesPower:
            if (l < 0)
                return Membership::Absent;
            return k <= -1 ? Membership::Inside : Membership::Unknown;
        case Kind::NegQuadMero:
            if (!(k < p_ && l < q_))
                return Membership::Absent;
            // Coefficients deep in both negative directions vanish (finite-order poles).
            if (k < -r_ + p_ - 1 && l < -r_ + q_ - 1)
                return Membership::Absent;
            return Membership::Inside;
    }
    return Membership::Absent;
}

bool SeriesSpace::is_quotient() const
{
    return kind_ == Kind::QuotientByP || kind_ == Kind::OneVarPolar || kind_ == Kind::PolarTimesPower
           || kind_ == Kind::NegQuadMero;
}

std::string SeriesSpace::describe() const
{
    auto pair = [](int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; };
    switch (kind_)
    {
        case Kind::FullPower: return "FullPower";
        case Kind::PStrip: return "PStrip" + pair(p_, q_);
        case Kind::ShiftedFull: return "ShiftedFull" + pair(p_, q_);
        case Kind::QuotientByP: return "QuotientByP" + pair(p_, q_);
        case Kind::OneVarPolar: return "OneVarPolar";
        case Kind::PolarTimesPower: return "PolarTimesPower";
        case Kind::NegQuadMero: return "NegQuadMero" + pair(p_, q_) + "/depth " + std::to_string(r_);
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Operators

OperatorKind OperatorKind::parse(const std::string& name, int m1, int m2)
{
    if (name == "D")
        return d_crossing(m1, m2);
    if (name == "E")
        return e_crossing(m1, m2);
    if (name == "EP")
        return e_on_p(m1, m2);
    if (name == "A")
        return a_op();
    if (name == "rho")
        return rho_onevar(m1);
    if (name == "phi")
        return phi_smooth(m1);
    if (name == "psi")
        return psi_smooth(m1);
    if (name == "phibar")
        return phi_bar_crossing(m1, m2);
    throw std::invalid_argument("unknown operator '" + name + "'");
}

std::string OperatorKind::name() const
{
    const std::string both = "(" + std::to_string(m1) + "," + std::to_string(m2) + ")";
    const std::string one = "(" + std::to_string(m1) + ")";
    switch (tag)
    {
        case Tag::DCrossing: return "D_crossing" + both;
        case Tag::ECrossing: return "E_crossing" + both;
        case Tag::EOnP: return "E_on_P" + both;
        case Tag::AOp: return "A_op";
        case Tag::RhoOneVar: return "rho_onevar" + one;
        case Tag::PhiSmooth: return "phi_smooth" + one;
        case Tag::PsiSmooth: return "psi_smooth" + one;
        case Tag::PhiBarCrossing: return "phi_bar_crossing" + both;
    }
    return "?";
}

namespace {

bool one_variable(OperatorKind::Tag tag)
{
    using Tag = OperatorKind::Tag;
    return tag == Tag::RhoOneVar || tag == Tag::PhiSmooth || tag == Tag::PsiSmooth;
}

void require_orders(const OperatorKind& op)
{
    if (op.tag == OperatorKind::Tag::AOp)
        return;
    if (op.m1 < 1 || (!one_variable(op.tag) && op.m2 < 1))
        throw std::invalid_argument(op.name() + ": pole orders must be >= 1");
}

}   // namespace

int OperatorKind::period() const
{
    if (tag == Tag::AOp)
        return 3;
    if (one_variable(tag))
        return m1 + 1;
    return m1 + m2 + 1;
}

int OperatorKind::min_window() const
{
    if (tag == Tag::AOp)
        return 4;
    return 2 * period();
}

OperatorStencil operator_stencil(const OperatorKind& op, int T)
{
    using Tag = OperatorKind::Tag;
    require_orders(op);
    const int m1 = op.m1, m2 = op.m2;
    OperatorStencil s;
    // E maps (v1, v2) to dv1/dx2-type and dv2/dx1-type combinations; shared by E_crossing and E_on_P.
    const std::vector<StencilTerm> e_terms = {
        {0, 0, 0, 1, 0, 1, 0},
        {0, 0, m1, m2 + 1, 0, 0, m2},
        {1, 0, 1, 0, -1, 0, 0},
        {1, 0, m1 + 1, m2, 0, 0, -m1},
    };
    switch (op.tag)
    {
        case Tag::DCrossing:
            // u -> -(x1^2 d/dx1 + m1 x1^{m1+1} x2^{m2}) u, -(x2^2 d/dx2 + m2 x1^{m1} x2^{m2+1}) u
            s.sources = {SeriesSpace::full_power()};
            s.targets = {SeriesSpace::quotient_by_p(m1, m2 - 1), SeriesSpace::quotient_by_p(m1 - 1, m2)};
            s.terms = {
                {0, 0, 1, 0, -1, 0, 0},
                {0, 0, m1 + 1, m2, 0, 0, -m1},
                {0, 1, 0, 1, 0, -1, 0},
                {0, 1, m1, m2 + 1, 0, 0, -m2},
            };
            break;
        case Tag::ECrossing:
            s.sources = {SeriesSpace::quotient_by_p(m1, m2 - 1), SeriesSpace::quotient_by_p(m1 - 1, m2)};
            s.targets = {SeriesSpace::quotient_by_p(2 * m1, 2 * m2)};
            s.terms = e_terms;
            break;
        case Tag::EOnP:
            s.sources = {SeriesSpace::p_strip(m1, m2 - 1), SeriesSpace::p_strip(m1 - 1, m2)};
            s.targets = {SeriesSpace::p_strip(2 * m1, 2 * m2)};
            s.terms = e_terms;
            break;
        case Tag::AOp:
            // (w1, w2) -> x2^2 dw1/dx2 - x1^2 dw2/dx1 on H/x1^2 H + H/x2^2 H -> H/x1^2 x2^2 H
            s.sources = {SeriesSpace::p_strip(1, -1), SeriesSpace::p_strip(-1, 1)};
            s.targets = {SeriesSpace::p_strip(1, 1)};
            s.terms = {
                {0, 0, 0, 1, 0, 1, 0},
                {1, 0, 1, 0, -1, 0, 0},
            };
            break;
        case Tag::RhoOneVar:
            // f -> f' - m z^{-m-1} f
            s.sources = {SeriesSpace::one_var_polar()};
            s.targets = {SeriesSpace::one_var_polar()};
            s.terms = {
                {0, 0, -1, 0, 1, 0, 0},
                {0, 0, -m1 - 1, 0, 0, 0, -m1},
            };
            break;
        case Tag::PhiSmooth:
            // u -> (du/dx1 - m x1^{-m-1} u, du/dx2)
            s.sources = {SeriesSpace::polar_times_power()};
            s.targets = {SeriesSpace::polar_times_power(), SeriesSpace::polar_times_power()};
            s.terms = {
                {0, 0, -1, 0, 1, 0, 0},
                {0, 0, -m1 - 1, 0, 0, 0, -m1},
                {0, 1, 0, -1, 0, 1, 0},
            };
            break;
        case Tag::PsiSmooth:
            // (w1, w2) -> dw2/dx1 - m x1^{-m-1} w2 - dw1/dx2
            s.sources = {SeriesSpace::polar_times_power(), SeriesSpace::polar_times_power()};
            s.targets = {SeriesSpace::polar_times_power()};
            s.terms = {
                {1, 0, -1, 0, 1, 0, 0},
                {1, 0, -m1 - 1, 0, 0, 0, -m1},
                {0, 0, 0, -1, 0, -1, 0},
            };
            break;
        case Tag::PhiBarCrossing:
        {
            // First column of the localized diagram: du/dx1 - m1 x1^{-m1-1} x2^{-m2} u and the x2 analogue.
            const int depth = std::max(2, T / (2 * (m1 + m2)));
            s.sources = {SeriesSpace::neg_quad_mero(1, 1, depth)};
            s.targets = {SeriesSpace::neg_quad_mero(-m1, -m2 + 1, depth),
                         SeriesSpace::neg_quad_mero(-m1 + 1, -m2, depth)};
            s.terms = {
                {0, 0, -1, 0, 1, 0, 0},
                {0, 0, -m1 - 1, -m2, 0, 0, -m1},
                {0, 1, 0, -1, 0, 1, 0},
                {0, 1, -m1, -m2 - 1, 0, 0, -m2},
            };
            break;
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Truncated systems

LaurentSystem build_system(const OperatorKind& op, int T)
{
    require_orders(op);
    if (T < op.min_window())
        throw Error(ErrorKind::WindowTooSmall, op.name() + ": T = " + std::to_string(T) + " < "
                                                   + std::to_string(op.min_window()));
    const OperatorStencil st = operator_stencil(op, T);
    const int side = 2 * T + 1;
    auto slot = [&](MonomialIndex i) { return (i.k + T) * side + (i.l + T); };

    LaurentSystem sys{op, T, {}, {}, SparseMatrix(0, 0)};
    std::vector<std::vector<int> > column_of(st.sources.size(), std::vector<int>(side * side, -1));
    auto for_window = [T](auto&& f) {
        for (int k = -T; k <= T; ++k)
            for (int l = -T; l <= T; ++l)
                if (MonomialIndex{k, l}.degree() <= T)
                    f(MonomialIndex{k, l});
    };
    for (std::size_t c = 0; c < st.sources.size(); ++c)
        for_window([&](MonomialIndex i) {
            if (st.sources[c].classify(i) == Membership::Inside)
            {
                column_of[c][slot(i)] = static_cast<int>(sys.columns.size());
                sys.columns.push_back({static_cast<int>(c), i});
            }
        });

    sys.matrix = SparseMatrix(0, static_cast<int>(sys.columns.size()));
    std::vector<std::pair<int, mpz_class> > entries;
    for (std::size_t tc = 0; tc < st.targets.size(); ++tc)
        for_window([&](MonomialIndex t) {
            if (st.targets[tc].classify(t) != Membership::Inside)
                return;
            entries.clear();
            for (const StencilTerm& term : st.terms)
            {
                if (term.target != static_cast<int>(tc))
                    continue;
                const MonomialIndex s{t.k - term.dk, t.l - term.dl};
                const int coef = term.ck * s.k + term.cl * s.l + term.c0;
                if (coef == 0)
                    continue;
                const Membership m = st.sources[term.source].classify(s);
                if (m == Membership::Absent)
                    continue;
                if (m == Membership::Unknown || s.degree() > T)
                    return;   // stencil not resolved inside the window
                entries.emplace_back(column_of[term.source][slot(s)], coef);
            }
            const int r = sys.matrix.append_row();
            for (const auto& [col, v] : entries)
                sys.matrix.add(r, col, v);
            sys.rows.push_back({static_cast<int>(tc), t});
        });
    return sys;
}

int projected_kernel_dim(const LaurentSystem& system, const std::vector<bool>& window)
{
    if (static_cast<int>(window.size()) != system.matrix.cols())
        throw std::invalid_argument("projected_kernel_dim: window mask size mismatch");
    std::vector<bool> outside(window.size());
    int inside = 0;
    for (std::size_t c = 0; c < window.size(); ++c)
    {
        outside[c] = !window[c];
        inside += window[c];
    }
    return inside + system.matrix.rank_of_columns(outside) - system.matrix.rank();
}

int projected_kernel_dim(const LaurentSystem& system, int T0)
{
    std::vector<bool> window(system.columns.size());
    for (std::size_t c = 0; c < window.size(); ++c)
        window[c] = system.columns[c].index.degree() <= T0;
    return projected_kernel_dim(system, window);
}

int cokernel_dim(const LaurentSystem& system)
{
    return system.matrix.rows() - system.matrix.rank();
}

namespace {

template <class Measure>
Stabilization stabilize(const OperatorKind& op, int T0, int steps, const char* what, Measure measure)
{
    if (steps < 3)
        throw std::invalid_argument("stabilization needs steps >= 3");
    require_orders(op);
    if (T0 < op.min_window())
        throw Error(ErrorKind::WindowTooSmall, op.name() + ": T0 = " + std::to_string(T0) + " < "
                                                   + std::to_string(op.min_window()));
    Stabilization s;
    for (int i = 1; i <= steps; ++i)
    {
        const int T = T0 + i * op.period();
        s.windows.push_back(T);
        s.values.push_back(measure(build_system(op, T)));
        const std::size_t n = s.values.size();
        if (n >= 3 && s.values[n - 1] == s.values[n - 2] && s.values[n - 2] == s.values[n - 3])
        {
            s.value = s.values.back();
            s.stabilized = true;
            return s;
        }
    }
    std::ostringstream os;
    os << op.name() << ": " << what << " did not stabilize over windows";
    for (std::size_t i = 0; i < s.windows.size(); ++i)
        os << ' ' << s.windows[i] << "->" << s.values[i];
    throw Error(ErrorKind::NotStabilized, os.str());
}

}   // namespace

Stabilization stabilize_kernel(const OperatorKind& op, int T0, int steps)
{
    return stabilize(op, T0, steps, "kernel",
                     [T0](const LaurentSystem& sys) { return projected_kernel_dim(sys, T0); });
}

Stabilization stabilize_cokernel(const OperatorKind& op, int T0, int steps)
{
    return stabilize(op, T0, steps, "cokernel", [](const LaurentSystem& sys) { return cokernel_dim(sys); });
}

int stabilized_kernel_dim(const OperatorKind& op, int T0, int steps)
{
    return stabilize_kernel(op, T0, steps).value;
}

int stabilized_cokernel_dim(const OperatorKind& op, int T0, int steps)
{
    return stabilize_cokernel(op, T0, steps).value;
}

// ---------------------------------------------------------------------------
// Case tally and Euler characteristic

CaseTally pfred_case_count(int m1, int m2)
{
    if (m1 < 1 || m2 < 1)
        throw std::invalid_argument("pfred_case_count: m1, m2 >= 1 required");
    const int d = std::gcd(m1, m2);
    const bool equal = m1 == m2;
    CaseTally t{};
    // i) k, l > 0 with k < m1 or l < m2, coupled to (k + m1, l + m2)
    t.ker[0] = t.coker[0] = equal ? d - 1 : d;
    // ii) k = 0 and iii) l = 0
    t.ker[1] = t.coker[1] = 1;
    t.ker[2] = t.coker[2] = 1;
    // iv) the origin: u_00 = 0 is a condition, not a solution
    t.ker[3] = 0;
    t.coker[3] = 1;
    // v) (m1, m2) with (2m1, 2m2): the 2x2 block has determinant m2 - m1
    t.ker[4] = t.coker[4] = equal ? 1 : 0;
    t.ker_total = std::accumulate(t.ker, t.ker + 5, 0);
    t.coker_total = std::accumulate(t.coker, t.coker + 5, 0);
    return t;
}

EulerReport euler_characteristic(int m1, int m2, int T, int steps)
{
    const OperatorKind d = OperatorKind::d_crossing(m1, m2);
    const OperatorKind e = OperatorKind::e_crossing(m1, m2);
    EulerReport r{};
    r.h0 = stabilized_kernel_dim(d, T, steps);
    r.h2 = stabilized_cokernel_dim(e, T, steps);
    // D raises total degree, so its T-system sees every source of every target of degree <= T:
    // its rank is the dimension of im D restricted to the window.
    const int image = build_system(d, T).matrix.rank();
    r.h1 = stabilized_kernel_dim(e, T, steps) - image;
    r.chi = r.h0 - r.h1 + r.h2;
    return r;
}

std::string to_triplet_text(const LaurentSystem& system)
{
    std::ostringstream os;
    os << system.matrix.rows() << ' ' << system.matrix.cols() << ' ' << system.matrix.nonzeros() << '\n';
    for (const Triplet& t : system.matrix.triplets())
        os << t.row << ' ' << t.col << ' ' << t.value.get_str() << "/1\n";
    return os.str();
}

nlohmann::json to_json(const Stabilization& s)
{
    return {{"windows", s.windows}, {"values", s.values}, {"value", s.value}, {"stabilized", s.stabilized}};
}

}   // namespace rdper
