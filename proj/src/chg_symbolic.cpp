#include "rdper/chg_symbolic.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "rdper/error.hpp"

namespace rdper {

// ---------------------------------------------------------------------------
// Poly2

Poly2::Poly2(const mpq_class& c)
{
    add_term(0, 0, c);
}

Poly2 Poly2::monomial(int i, int j, const mpq_class& c)
{
    Poly2 p;
    p.add_term(i, j, c);
    return p;
}

void Poly2::add_term(int i, int j, const mpq_class& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace({i, j}, c);
    if (!inserted)
    {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

mpq_class Poly2::coeff(int i, int j) const
{
    auto it = terms_.find({i, j});
    return it == terms_.end() ? mpq_class(0) : it->second;
}

int Poly2::total_degree() const
{
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, e.first + e.second);
    return d;
}

Poly2& Poly2::operator+=(const Poly2& o)
{
    for (const auto& [e, c] : o.terms_)
        add_term(e.first, e.second, c);
    return *this;
}

Poly2& Poly2::operator-=(const Poly2& o)
{
    for (const auto& [e, c] : o.terms_)
        add_term(e.first, e.second, -c);
    return *this;
}

Poly2& Poly2::operator*=(const mpq_class& c)
{
    if (c == 0)
    {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_)
        v *= c;
    return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b)
{
    Poly2 out;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            out.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
    return out;
}

Poly2 Poly2::pow(int n) const
{
    Poly2 out(1);
    for (int i = 0; i < n; ++i)
        out = out * *this;
    return out;
}

Poly2 Poly2::derivative(int var) const
{
    Poly2 out;
    for (const auto& [e, c] : terms_)
    {
        const int power = var == 0 ? e.first : e.second;
        if (power == 0)
            continue;
        if (var == 0)
            out.add_term(e.first - 1, e.second, c * power);
        else
            out.add_term(e.first, e.second - 1, c * power);
    }
    return out;
}

namespace {

mpq_class power(const mpq_class& base, int n)
{
    mpq_class out = 1;
    for (int i = 0; i < n; ++i)
        out *= base;
    return out;
}

}   // namespace

mpq_class Poly2::evaluate(const mpq_class& v1, const mpq_class& v2) const
{
    mpq_class sum = 0;
    for (const auto& [e, c] : terms_)
        sum += c * power(v1, e.first) * power(v2, e.second);
    return sum;
}

std::string Poly2::to_string(const char* v1, const char* v2) const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
    {
        const auto& [e, c] = *it;
        mpq_class mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        const bool constant = e.first == 0 && e.second == 0;
        bool need_star = false;
        if (mag != 1 || constant)
        {
            os << mag.get_str();
            need_star = true;
        }
        auto var = [&](const char* name, int p) {
            if (p == 0)
                return;
            os << (need_star ? "*" : "") << name;
            if (p > 1)
                os << '^' << p;
            need_star = true;
        };
        var(v1, e.first);
        var(v2, e.second);
    }
    return os.str();
}

Poly2 LinearForm::as_poly() const
{
    return Poly2(c0) + Poly2::monomial(1, 0, c1) + Poly2::monomial(0, 1, c2);
}

// ---------------------------------------------------------------------------
// RatFunc2

RatFunc2::RatFunc2(Poly2 num, int p, int q, int r, LinearForm form)
    : num_(std::move(num)), p_(p), q_(q), r_(r), form_(std::move(form))
{
    if (p < 0 || q < 0 || r < 0)
        throw std::invalid_argument("RatFunc2: negative denominator exponent");
}

RatFunc2 RatFunc2::constant(const mpq_class& c, LinearForm form)
{
    return RatFunc2(Poly2(c), 0, 0, 0, std::move(form));
}

namespace {

LinearForm common_form(const RatFunc2& a, const RatFunc2& b)
{
    if (a.r() == 0)
        return b.form();
    if (b.r() == 0 || a.form() == b.form())
        return a.form();
    throw std::invalid_argument("RatFunc2: incompatible linear forms in the denominator");
}

// Numerator of `f` rewritten over the denominator v1^p v2^q L^r.
Poly2 lift(const RatFunc2& f, int p, int q, int r, const LinearForm& form)
{
    return f.numerator() * Poly2::monomial(p - f.p(), q - f.q()) * form.as_poly().pow(r - f.r());
}

}   // namespace

RatFunc2& RatFunc2::operator+=(const RatFunc2& o)
{
    const LinearForm form = common_form(*this, o);
    const int p = std::max(p_, o.p_), q = std::max(q_, o.q_), r = std::max(r_, o.r_);
    num_ = lift(*this, p, q, r, form) + lift(o, p, q, r, form);
    p_ = p;
    q_ = q;
    r_ = r;
    form_ = form;
    return *this;
}

RatFunc2& RatFunc2::operator-=(const RatFunc2& o)
{
    return *this += -o;
}

RatFunc2 operator*(const RatFunc2& a, const RatFunc2& b)
{
    return RatFunc2(a.num_ * b.num_, a.p_ + b.p_, a.q_ + b.q_, a.r_ + b.r_, common_form(a, b));
}

RatFunc2 operator*(const mpq_class& c, const RatFunc2& a)
{
    RatFunc2 out = a;
    out.num_ *= c;
    return out;
}

RatFunc2 RatFunc2::derivative(int var) const
{
    // d/dv1 [N / (v1^p v2^q L^r)] = (N_1 v1 L - p N L - r c1 N v1) / (v1^{p+1} v2^q L^{r+1})
    const Poly2 l = form_.as_poly();
    const Poly2 v = var == 0 ? Poly2::monomial(1, 0) : Poly2::monomial(0, 1);
    const int e = var == 0 ? p_ : q_;
    const mpq_class c = var == 0 ? form_.c1 : form_.c2;
    Poly2 num = num_.derivative(var) * v * l - mpq_class(e) * num_ * l - mpq_class(r_) * c * num_ * v;
    return RatFunc2(std::move(num), p_ + (var == 0), q_ + (var == 1), r_ + 1, form_);
}

bool RatFunc2::equals(const RatFunc2& o) const
{
    return (*this - o).is_zero();
}

mpq_class RatFunc2::evaluate(const mpq_class& v1, const mpq_class& v2) const
{
    const mpq_class den = power(v1, p_) * power(v2, q_) * power(form_.as_poly().evaluate(v1, v2), r_);
    if (den == 0)
        throw Error(ErrorKind::SingularPoint, "denominator of " + to_string() + " vanishes at (" + v1.get_str()
                                                  + ", " + v2.get_str() + ")");
    return num_.evaluate(v1, v2) / den;
}

namespace {

// Exact division by a linear form; nullopt if it does not divide.
std::optional<Poly2> divide_by_linear(Poly2 n, const LinearForm& form)
{
    const bool use_first = form.c1 != 0;
    if (!use_first && form.c2 == 0)
    {
        if (form.c0 == 0)
            throw std::invalid_argument("division by the zero linear form");
        return n * (1 / form.c0);
    }
    const Poly2 l = form.as_poly();
    const mpq_class lead = use_first ? form.c1 : form.c2;
    Poly2 quotient;
    while (!n.is_zero())
    {
        // Leading term in lex order on the chosen variable.
        auto best = n.terms().begin();
        for (auto it = n.terms().begin(); it != n.terms().end(); ++it)
        {
            auto key = [&](const auto& e) {
                return use_first ? std::pair{e.first, e.second} : std::pair{e.second, e.first};
            };
            if (key(it->first) > key(best->first))
                best = it;
        }
        const auto [i, j] = best->first;
        if ((use_first ? i : j) == 0)
            return std::nullopt;
        const Poly2 t = use_first ? Poly2::monomial(i - 1, j, best->second / lead)
                                  : Poly2::monomial(i, j - 1, best->second / lead);
        quotient += t;
        n -= t * l;
    }
    return quotient;
}

}   // namespace

std::optional<Poly2> RatFunc2::as_polynomial() const
{
    Poly2 n;
    for (const auto& [e, c] : num_.terms())
    {
        if (e.first < p_ || e.second < q_)
            return std::nullopt;
        n += Poly2::monomial(e.first - p_, e.second - q_, c);
    }
    for (int i = 0; i < r_; ++i)
    {
        auto d = divide_by_linear(n, form_);
        if (!d)
            return std::nullopt;
        n = std::move(*d);
    }
    return n;
}

std::string RatFunc2::to_string(const char* v1, const char* v2) const
{
    std::string s = "(" + num_.to_string(v1, v2) + ")";
    if (p_ == 0 && q_ == 0 && r_ == 0)
        return s;
    Poly2 den = Poly2::monomial(p_, q_) * form_.as_poly().pow(r_);
    return s + "/(" + den.to_string(v1, v2) + ")";
}

// ---------------------------------------------------------------------------
// Parameters and the connection

CHGParams CHGParams::make(const mpq_class& a, const mpq_class& b, const mpq_class& c, const mpq_class& alpha)
{
    if (a + b + c != -3)
        throw Error(ErrorKind::InvalidParams, "a + b + c = " + mpq_class(a + b + c).get_str() + ", expected -3");
    // c = -2 occurs in the reference instantiation, so only a and b are required to be non-integers.
    for (const mpq_class* v : {&a, &b})
        if (v->get_den() == 1)
            throw Error(ErrorKind::InvalidParams, "exponent " + v->get_str() + " is an integer");
    if (alpha == 0)
        throw Error(ErrorKind::InvalidParams, "alpha must be nonzero");
    return {a, b, c, alpha};
}

nlohmann::json to_json(const CHGParams& p)
{
    return {{"a", p.a.get_str()}, {"b", p.b.get_str()}, {"c", p.c.get_str()}, {"alpha", p.alpha.get_str()}};
}

void require_regular_point(const mpq_class& x, const mpq_class& y)
{
    if (x == 0 || y == 0 || x == y)
        throw Error(ErrorKind::SingularPoint, "(x, y) = (" + x.get_str() + ", " + y.get_str()
                                                  + ") lies on x = 0, y = 0 or x = y");
}

namespace {

// dlog U in the du1 and du2 directions.
std::pair<RatFunc2, RatFunc2> dlog_u(const CHGParams& p, const mpq_class& x, const mpq_class& y)
{
    const RatFunc2 c_over_s(Poly2(p.c), 0, 0, 1);
    RatFunc2 w1 = RatFunc2(Poly2(p.a), 1, 0, 0) + c_over_s + RatFunc2::constant(p.alpha * x);
    RatFunc2 w2 = RatFunc2(Poly2(p.b), 0, 1, 0) + c_over_s + RatFunc2::constant(p.alpha * y);
    return {w1, w2};
}

const Poly2& s_poly()
{
    static const Poly2 s = LinearForm::one_plus_sum().as_poly();
    return s;
}

}   // namespace

OneForm nabla_function(const CHGParams& params, const mpq_class& x, const mpq_class& y, const RatFunc2& h)
{
    const auto [w1, w2] = dlog_u(params, x, y);
    return {h.derivative(0) + h * w1, h.derivative(1) + h * w2};
}

RatFunc2 nabla_one_form(const CHGParams& params, const mpq_class& x, const mpq_class& y, const OneForm& form)
{
    const auto [w1, w2] = dlog_u(params, x, y);
    return form.g.derivative(0) - form.f.derivative(1) + form.g * w1 - form.f * w2;
}

PrintedRelations printed_relations(const CHGParams& params, const mpq_class& x, const mpq_class& y)
{
    require_regular_point(x, y);
    const mpq_class& a = params.a;
    const mpq_class& b = params.b;
    const mpq_class& al = params.alpha;
    const mpq_class ax = al * x, ay = al * y, yx = y - x;
    auto mono = [](int i, int j, const mpq_class& c) { return Poly2::monomial(i, j, c); };

    PrintedRelations r;
    r.gm1 = mono(2, 0, ax) + mono(1, 1, ax) + mono(1, 0, ax - (1 + b)) + mono(0, 1, 1 + a) + Poly2(1 + a);
    r.gm2 = -(mono(0, 2, ay) + mono(1, 1, ay) + mono(1, 0, 1 + b) + mono(0, 1, ay - (1 + a)) + Poly2(1 + b));
    r.nab1.f = RatFunc2((mono(1, 0, ax) + Poly2(1 + a)) * mono(0, 1, 1) * s_poly());
    r.nab1.g = RatFunc2((mono(0, 1, ay) + Poly2(1 + b)) * mono(1, 0, 1) * s_poly());
    r.gm3 = mono(1, 1, al) + mono(1, 0, (1 + b) / yx) - mono(0, 1, (1 + a) / yx);
    r.gm3_reduced = {mpq_class(0), mpq_class(-(1 + b) / yx), mpq_class((1 + a) / yx)};
    return r;
}

bool IdentityReport::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.pass; });
}

void IdentityReport::require() const
{
    for (const auto& c : checks)
        if (!c.pass)
            throw Error(ErrorKind::IdentityFailed, c.name + " residual " + c.residual);
}

IdentityReport check_gm_relations(const CHGParams& params, const mpq_class& x, const mpq_class& y,
                                  const PrintedRelations& printed)
{
    require_regular_point(x, y);
    IdentityReport report;
    auto add = [&](const std::string& name, const RatFunc2& residual) {
        report.checks.push_back({name, residual.is_zero(), residual.is_zero() ? "0" : residual.to_string()});
    };
    const RatFunc2 zero;
    const RatFunc2 u1s(Poly2::monomial(1, 0) * s_poly()), u2s(Poly2::monomial(0, 1) * s_poly());
    add("GMI", nabla_one_form(params, x, y, {zero, u1s}) - RatFunc2(printed.gm1));
    add("GMII", nabla_one_form(params, x, y, {u2s, zero}) - RatFunc2(printed.gm2));
    add("nab1", nabla_one_form(params, x, y, printed.nab1)
                    - RatFunc2(printed.gm3 * ((1 + params.c) * (y - x))));

    const DeRhamReducer reducer(params, x, y, 2);
    const auto triple = reducer.reduce(Poly2::monomial(1, 1, params.alpha));
    Poly2 diff;
    for (int i = 0; i < 3; ++i)
    {
        const auto [k, l] = std::array<std::pair<int, int>, 3>{{{0, 0}, {1, 0}, {0, 1}}}[i];
        diff += Poly2::monomial(k, l, triple[i] - printed.gm3_reduced[i]);
    }
    add("GMIII", RatFunc2(diff));
    return report;
}

IdentityReport check_gm_relations(const CHGParams& params, const mpq_class& x, const mpq_class& y)
{
    return check_gm_relations(params, x, y, printed_relations(params, x, y));
}

// ---------------------------------------------------------------------------
// Reduction to the basis du, u1 du, u2 du

namespace {

bool is_basis(int i, int j)
{
    return (i == 0 && j == 0) || (i == 1 && j == 0) || (i == 0 && j == 1);
}

}   // namespace

DeRhamReducer::DeRhamReducer(const CHGParams& params, const mpq_class& x, const mpq_class& y, int max_degree,
                             unsigned shuffle_seed)
    : max_degree_(max_degree), top_(max_degree + 2)
{
    require_regular_point(x, y);
    if (max_degree < 1)
        throw std::invalid_argument("DeRhamReducer: max_degree >= 1 required");

    // Column order: higher total degree first, ties broken by larger power of u1.
    for (int d = top_; d >= 0; --d)
        for (int i = d; i >= 0; --i)
            monomials_.emplace_back(i, d - i);

    const RatFunc2 zero;
    for (int deg = 0; deg + 2 <= top_; ++deg)
        for (int k = 0; k <= deg; ++k)
        {
            const int l = deg - k;
            const RatFunc2 g1(Poly2::monomial(k + 1, l) * s_poly());
            const RatFunc2 g2(Poly2::monomial(k, l + 1) * s_poly());
            for (const RatFunc2& form : {nabla_one_form(params, x, y, {zero, g1}), nabla_one_form(params, x, y, {g2, zero})})
            {
                auto poly = form.as_polynomial();
                if (!poly)
                    throw Error(ErrorKind::ReductionDiverged, "generator is not polynomial: " + form.to_string());
                generators_.push_back(std::move(*poly));
            }
        }

    std::vector<std::size_t> order(generators_.size());
    std::iota(order.begin(), order.end(), 0);
    if (shuffle_seed != 0)
        std::shuffle(order.begin(), order.end(), std::mt19937(shuffle_seed));

    const int ncols = static_cast<int>(monomials_.size());
    std::vector<std::vector<mpq_class> > rows;
    for (std::size_t g : order)
    {
        std::vector<mpq_class> row(ncols);
        for (const auto& [e, c] : generators_[g].terms())
            row[column(e.first, e.second)] = c;
        rows.push_back(std::move(row));
    }

    // Gauss-Jordan elimination, pivot columns taken in the monomial order.
    pivot_of_column_.assign(ncols, -1);
    std::size_t next = 0;
    for (int col = 0; col < ncols && next < rows.size(); ++col)
    {
        std::size_t p = next;
        while (p < rows.size() && rows[p][col] == 0)
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[p], rows[next]);
        const mpq_class inv = 1 / rows[next][col];
        for (auto& v : rows[next])
            v *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r)
        {
            if (r == next || rows[r][col] == 0)
                continue;
            const mpq_class f = rows[r][col];
            for (int c = col; c < ncols; ++c)
                rows[r][c] -= f * rows[next][c];
        }
        pivot_of_column_[col] = static_cast<int>(pivot_rows_.size());
        pivot_rows_.push_back(rows[next]);
        ++next;
    }

    for (int d = 0; d <= max_degree_; ++d)
        for (int i = 0; i <= d; ++i)
        {
            const bool pivot = pivot_of_column_[column(i, d - i)] >= 0;
            if (pivot == is_basis(i, d - i))
                throw Error(ErrorKind::ReductionDiverged,
                            "monomial u1^" + std::to_string(i) + " u2^" + std::to_string(d - i)
                                + (pivot ? " is eliminated although it is a basis element"
                                         : " cannot be eliminated with generators up to degree "
                                               + std::to_string(top_)));
        }
}

int DeRhamReducer::column(int i, int j) const
{
    const int d = i + j;
    // Degrees top_ .. d+1 come first; inside degree d, larger i first.
    const int before = (top_ + 1) * (top_ + 2) / 2 - (d + 1) * (d + 2) / 2;
    return before + (d - i);
}

std::array<mpq_class, 3> DeRhamReducer::reduce(const Poly2& p) const
{
    if (p.total_degree() > max_degree_)
        throw std::invalid_argument("DeRhamReducer: polynomial degree exceeds max_degree");
    std::vector<mpq_class> v(monomials_.size());
    for (const auto& [e, c] : p.terms())
        v[column(e.first, e.second)] = c;
    for (std::size_t col = 0; col < v.size(); ++col)
    {
        const int r = pivot_of_column_[col];
        if (r < 0 || v[col] == 0)
            continue;
        const mpq_class f = v[col];
        const auto& row = pivot_rows_[r];
        for (std::size_t c = col; c < v.size(); ++c)
            v[c] -= f * row[c];
    }
    for (std::size_t col = 0; col < v.size(); ++col)
        if (v[col] != 0 && !is_basis(monomials_[col].first, monomials_[col].second))
            throw Error(ErrorKind::ReductionDiverged, "reduction left a non-basis monomial");
    return {v[column(0, 0)], v[column(1, 0)], v[column(0, 1)]};
}

std::array<mpq_class, 3> reduce_to_basis(const CHGParams& params, const mpq_class& x, const mpq_class& y, int k,
                                         int l)
{
    if (k < 0 || l < 0)
        throw std::invalid_argument("reduce_to_basis: exponents must be non-negative");
    return DeRhamReducer(params, x, y, std::max(2, k + l)).reduce_monomial(k, l);
}

// ---------------------------------------------------------------------------
// Gauss-Manin matrices

GMMatrix printed_gm_matrix(const CHGParams& params)
{
    const LinearForm yx = LinearForm::y_minus_x();
    const mpq_class a1 = 1 + params.a, b1 = 1 + params.b, al = params.alpha;
    auto f = [&](Poly2 num, int p, int q, int r) { return RatFunc2(std::move(num), p, q, r, yx); };
    const Poly2 X = Poly2::monomial(1, 0), Y = Poly2::monomial(0, 1);
    const RatFunc2 zero = f(Poly2(), 0, 0, 0), alpha = f(Poly2(al), 0, 0, 0);

    GMMatrix m;
    m.ax = {{
        {zero, f(Poly2(-a1), 1, 0, 0), zero},
        {alpha, f(b1 * Y, 1, 0, 1) - alpha, f(Poly2(-b1), 0, 0, 1)},
        {zero, f(-a1 * Y, 1, 0, 1), f(Poly2(a1), 0, 0, 1)},
    }};
    m.ay = {{
        {zero, zero, f(Poly2(-b1), 0, 1, 0)},
        {zero, f(Poly2(-b1), 0, 0, 1), f(b1 * X, 0, 1, 1)},
        {alpha, f(Poly2(a1), 0, 0, 1), f(-a1 * X, 0, 1, 1) - alpha},
    }};
    return m;
}

std::vector<std::string> gm_matrix_mismatches(const CHGParams& params, const GMMatrix& m,
                                              const std::vector<std::pair<mpq_class, mpq_class> >& points)
{
    static const std::array<std::pair<int, int>, 3> basis = {{{0, 0}, {1, 0}, {0, 1}}};
    std::vector<std::string> out;
    for (const auto& [x, y] : points)
    {
        const DeRhamReducer reducer(params, x, y, 2);
        for (int j = 0; j < 3; ++j)
        {
            const auto [k, l] = basis[j];
            const auto col_x = reducer.reduce(Poly2::monomial(k + 1, l, params.alpha));
            const auto col_y = reducer.reduce(Poly2::monomial(k, l + 1, params.alpha));
            for (int i = 0; i < 3; ++i)
            {
                const mpq_class ex = m.ax[i][j].evaluate(x, y), ey = m.ay[i][j].evaluate(x, y);
                auto where = [&](const char* name) {
                    std::ostringstream os;
                    os << name << '[' << i << "][" << j << "] at (" << x.get_str() << ", " << y.get_str() << ")";
                    return os.str();
                };
                if (ex != col_x[i])
                    out.push_back(where("Ax") + ": matrix " + ex.get_str() + ", derived " + col_x[i].get_str());
                if (ey != col_y[i])
                    out.push_back(where("Ay") + ": matrix " + ey.get_str() + ", derived " + col_y[i].get_str());
            }
        }
    }
    return out;
}

std::vector<std::pair<mpq_class, mpq_class> > default_sample_points(int count)
{
    static const std::pair<int, int> fixed[][2] = {
        {{2, 1}, {5, 1}},   {{3, 1}, {7, 1}},   {{-1, 1}, {-2, 1}}, {{-2, 1}, {-1, 1}},
        {{1, 2}, {3, 1}},   {{5, 3}, {-4, 7}},  {{-7, 2}, {9, 5}},  {{11, 3}, {2, 9}},
        {{-3, 4}, {-5, 6}}, {{13, 7}, {-1, 3}}, {{4, 1}, {-6, 5}},  {{-9, 8}, {7, 3}},
    };
    std::vector<std::pair<mpq_class, mpq_class> > pts;
    for (int i = 0; i < count; ++i)
    {
        if (i < static_cast<int>(std::size(fixed)))
        {
            mpq_class x(fixed[i][0].first, fixed[i][0].second), y(fixed[i][1].first, fixed[i][1].second);
            x.canonicalize();
            y.canonicalize();
            pts.emplace_back(x, y);
        }
        else
        {
            mpq_class x(3 * i + 1, 3), y(-(2 * i + 7), 5);
            x.canonicalize();
            y.canonicalize();
            pts.emplace_back(x, y);
        }
    }
    return pts;
}

GMMatrix gm_matrix(const CHGParams& params)
{
    GMMatrix m = printed_gm_matrix(params);
    const auto mismatches = gm_matrix_mismatches(params, m, default_sample_points(5));
    if (!mismatches.empty())
        throw Error(ErrorKind::MatrixMismatch, mismatches.front() + " (" + std::to_string(mismatches.size())
                                                   + " mismatches)");
    return m;
}

bool IntegrabilityReport::all_zero() const
{
    return std::all_of(points.begin(), points.end(), [](const IntegrabilityPoint& p) { return p.zero; });
}

void IntegrabilityReport::require() const
{
    for (const auto& p : points)
        if (!p.zero)
        {
            std::ostringstream os;
            os << "residual at (" << p.x.get_str() << ", " << p.y.get_str() << "):";
            for (const auto& row : p.residual)
                for (const auto& v : row)
                    os << ' ' << v.get_str();
            throw Error(ErrorKind::IntegrabilityFailed, os.str());
        }
}

IntegrabilityReport check_integrability(const GMMatrix& m,
                                        const std::vector<std::pair<mpq_class, mpq_class> >& points)
{
    using Mat = std::array<std::array<mpq_class, 3>, 3>;
    IntegrabilityReport report;
    for (const auto& [x, y] : points)
    {
        require_regular_point(x, y);
        Mat ax, ay, dax_dy, day_dx;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
            {
                ax[i][j] = m.ax[i][j].evaluate(x, y);
                ay[i][j] = m.ay[i][j].evaluate(x, y);
                dax_dy[i][j] = m.ax[i][j].derivative(1).evaluate(x, y);
                day_dx[i][j] = m.ay[i][j].derivative(0).evaluate(x, y);
            }
        IntegrabilityPoint p{x, y, {}, true};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
            {
                mpq_class commutator = 0;
                for (int k = 0; k < 3; ++k)
                    commutator += ax[i][k] * ay[k][j] - ay[i][k] * ax[k][j];
                p.residual[i][j] = day_dx[i][j] - dax_dy[i][j] - commutator;
                if (p.residual[i][j] != 0)
                    p.zero = false;
            }
        report.points.push_back(std::move(p));
    }
    return report;
}

nlohmann::json to_json(const IdentityReport& r)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}});
    return {{"checks", checks}, {"pass", r.all_pass()}};
}

nlohmann::json to_json(const IntegrabilityReport& r)
{
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : r.points)
    {
        nlohmann::json residual = nlohmann::json::array();
        for (const auto& row : p.residual)
        {
            nlohmann::json jr = nlohmann::json::array();
            for (const auto& v : row)
                jr.push_back(v.get_str());
            residual.push_back(jr);
        }
        pts.push_back({{"x", p.x.get_str()}, {"y", p.y.get_str()}, {"residual", residual}, {"zero", p.zero}});
    }
    return {{"points", pts}, {"pass", r.all_zero()}};
}

}   // namespace rdper
