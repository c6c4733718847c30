// Criteria 1-8, shared by `full-suite` and the acceptance binary.

#include <chrono>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "rdper/chg_symbolic.hpp"
#include "rdper/cli_report.hpp"
#include "rdper/laurent_ops.hpp"
#include "rdper/local_model.hpp"
#include "rdper/periods_numeric.hpp"
#include "rdper/stokes_topology.hpp"

namespace rdper {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects checks for one criterion and summarizes the failures.
class Collector
{
    public:
        void add(std::string name, json inputs, json expected, json computed, std::string source, double dt)
        {
            const bool pass = expected == computed;
            add_bool(std::move(name), std::move(inputs), std::move(expected), std::move(computed), std::move(source),
                     pass, dt);
        }

        void add_bool(std::string name, json inputs, json expected, json computed, std::string source, bool pass,
                      double dt)
        {
            if (!pass)
            {
                ++failures_;
                if (first_failure_.empty())
                    first_failure_ = name + " " + inputs.dump() + ": expected " + expected.dump() + ", computed "
                                     + computed.dump();
            }
            checks_.push_back({std::move(name), std::move(inputs), std::move(expected), std::move(computed),
                               std::move(source), pass, dt});
        }

        void runtime_budget(double seconds, double budget)
        {
            std::ostringstream os;
            os << "< " << budget << " s";
            add_bool("runtime", json::object(), os.str(), seconds, "property", seconds < budget, 0);
        }

        CriterionResult finish(int id, std::string title, double runtime)
        {
            CriterionResult r;
            r.id = id;
            r.title = std::move(title);
            r.pass = failures_ == 0 && !checks_.empty();
            r.runtime_s = runtime;
            std::ostringstream os;
            os << checks_.size() - failures_ << "/" << checks_.size() << " checks";
            if (!first_failure_.empty())
                os << "; first failure: " << first_failure_;
            r.detail = os.str();
            r.checks = std::move(checks_);
            return r;
        }

    private:
        std::vector<CheckRecord> checks_;
        int failures_ = 0;
        std::string first_failure_;
};

json table_json(const DimensionTable& t)
{
    return to_json(t);
}

DimensionTable pair_table(int d1, int d2, int value)
{
    DimensionTable t;
    t.set(d1, value);
    t.set(d2, value);
    return t;
}

void criterion_dims(Collector& col)
{
    const auto t0 = Clock::now();
    for (int m1 = 1; m1 <= 6; ++m1)
        for (int m2 = 1; m2 <= 6; ++m2)
        {
            const auto t = Clock::now();
            const auto model = ExponentialFactor::make(m1, m2, 1.0);
            const int g = std::gcd(m1, m2);
            const json in = {{"m1", m1}, {"m2", m2}};
            const json computed = {{"rd", table_json(rd_dimensions(model, Stratum::CrossingPoint))},
                                   {"dr", table_json(dr_dimensions(model, Stratum::CrossingPoint))},
                                   {"duality", duality_check(model, Stratum::CrossingPoint)}};
            const json expected = {{"rd", table_json(pair_table(2, 3, g))},
                                   {"dr", table_json(pair_table(0, 1, g))},
                                   {"duality", true}};
            col.add("dims", in, expected, computed, "paper", seconds_since(t));
        }
    col.runtime_budget(seconds_since(t0), 1.0);
}

int stab_ker(const OperatorKind& op)
{
    return stabilized_kernel_dim(op, op.min_window(), 6);
}

int stab_coker(const OperatorKind& op)
{
    return stabilized_cokernel_dim(op, op.min_window(), 6);
}

void criterion_truncated(Collector& col)
{
    const auto t0 = Clock::now();
    for (int m1 = 1; m1 <= 4; ++m1)
        for (int m2 = 1; m2 <= 4; ++m2)
        {
            const auto t = Clock::now();
            const auto op = OperatorKind::d_crossing(m1, m2);
            col.add("ker D", {{"m1", m1}, {"m2", m2}, {"T0", op.min_window()}}, std::gcd(m1, m2), stab_ker(op),
                    "paper", seconds_since(t));
        }
    for (int m1 = 1; m1 <= 3; ++m1)
        for (int m2 = 1; m2 <= 3; ++m2)
        {
            const auto t = Clock::now();
            const auto op = OperatorKind::e_on_p(m1, m2);
            const int g = std::gcd(m1, m2);
            col.add("(ker, coker) E on P", {{"m1", m1}, {"m2", m2}, {"T0", op.min_window()}}, json::array({g + 2, g + 3}),
                    json::array({stab_ker(op), stab_coker(op)}), "paper", seconds_since(t));
        }
    for (int m = 1; m <= 6; ++m)
    {
        const auto t = Clock::now();
        col.add("ker rho", {{"m", m}}, m, stab_ker(OperatorKind::rho_onevar(m)), "paper", seconds_since(t));
    }
    const auto t = Clock::now();
    const auto a = OperatorKind::a_op();
    col.add("(ker, coker) A", json::object(), json::array({4, 4}), json::array({stab_ker(a), stab_coker(a)}), "paper",
            seconds_since(t));
    col.runtime_budget(seconds_since(t0), 60.0);
}

void criterion_case_tally(Collector& col)
{
    for (int m1 = 1; m1 <= 4; ++m1)
        for (int m2 = 1; m2 <= 4; ++m2)
        {
            const auto t = Clock::now();
            const auto tally = pfred_case_count(m1, m2);
            const auto op = OperatorKind::e_on_p(m1, m2);
            col.add("case tally vs truncation", {{"m1", m1}, {"m2", m2}},
                    json::array({stab_ker(op), stab_coker(op)}), json::array({tally.ker_total, tally.coker_total}),
                    "oracle", seconds_since(t));
        }
}

void criterion_homology(Collector& col)
{
    const auto t0 = Clock::now();
    for (auto [m1, m2] : {std::pair{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}})
        for (int n : {4 * (m1 + m2), 8 * (m1 + m2)})
        {
            const auto t = Clock::now();
            const auto h = homology_dims(build_complex(cell_model::RadialSheetQuotient{m1, m2, n}));
            col.add("radial sheet quotient", {{"m1", m1}, {"m2", m2}, {"n", n}},
                    table_json(pair_table(2, 3, std::gcd(m1, m2))), table_json(h), "paper", seconds_since(t));
        }
    for (int m = 1; m <= 5; ++m)
    {
        const auto t = Clock::now();
        const auto h = homology_dims(build_complex(cell_model::WedgeBundleOverCircle{m}));
        col.add("wedge bundle over the circle", {{"m", m}}, table_json(pair_table(1, 2, m)), table_json(h), "paper",
                seconds_since(t));
    }
    col.runtime_budget(seconds_since(t0), 30.0);
}

void criterion_stokes(Collector& col)
{
    for (int m1 = 1; m1 <= 8; ++m1)
        for (int m2 = 1; m2 <= 8; ++m2)
        {
            const auto t = Clock::now();
            // The count is repeated on the doubled grid internally and must agree.
            const int n = stokes_component_count(ExponentialFactor::make(m1, m2, 1.0), 512);
            col.add("stokes components", {{"m1", m1}, {"m2", m2}, {"samples", 512}}, std::gcd(m1, m2), n, "paper",
                    seconds_since(t));
        }
}

mpq_class random_fraction(std::mt19937& rng, bool non_integer)
{
    std::uniform_int_distribution<int> den(2, 9), num(-17, 17);
    for (;;)
    {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        if (q != 0 && (!non_integer || q.get_den() != 1))
            return q;
    }
}

struct Instantiation
{
    CHGParams params;
    mpq_class x, y;
};

std::vector<Instantiation> instantiations(unsigned seed)
{
    std::vector<Instantiation> out = {
        {CHGParams::make(mpq_class(-1, 2), mpq_class(-1, 2), -2, 1), -1, -2},
        {CHGParams::make(mpq_class(1, 3), mpq_class(1, 3), mpq_class(-11, 3), 2), 1, 3},
        {CHGParams::make(mpq_class(1, 5), mpq_class(2, 5), mpq_class(-18, 5), 3), 3, 7},
    };
    std::mt19937 rng(seed);
    while (out.size() < 6)
    {
        const mpq_class a = random_fraction(rng, true), b = random_fraction(rng, true);
        const mpq_class alpha = random_fraction(rng, false);
        const mpq_class x = random_fraction(rng, false), y = random_fraction(rng, false);
        if (x == y)
            continue;
        out.push_back({CHGParams::make(a, b, -3 - a - b, alpha), x, y});
    }
    return out;
}

json params_json(const CHGParams& p)
{
    return to_json(p);
}

void criterion_symbolic(Collector& col, unsigned seed)
{
    const auto t0 = Clock::now();
    const auto pts = default_sample_points(12);
    for (const auto& inst : instantiations(seed))
    {
        const json in = {{"params", params_json(inst.params)}, {"x", inst.x.get_str()}, {"y", inst.y.get_str()}};
        auto t = Clock::now();
        for (const auto& c : check_gm_relations(inst.params, inst.x, inst.y).checks)
            col.add(c.name, in, "0", c.residual, "formula", seconds_since(t));

        t = Clock::now();
        const auto m = printed_gm_matrix(inst.params);
        col.add("connection matrix entries", {{"params", params_json(inst.params)}, {"points", pts.size()}}, 0,
                gm_matrix_mismatches(inst.params, m, pts).size(), "formula", seconds_since(t));

        t = Clock::now();
        const auto integ = check_integrability(m, pts);
        col.add("integrability", {{"params", params_json(inst.params)}, {"points", pts.size()}}, true,
                integ.all_zero(), "formula", seconds_since(t));
    }
    col.runtime_budget(seconds_since(t0), 10.0);
}

void criterion_periods(Collector& col)
{
    const auto t0 = Clock::now();
    const auto params = CHGParams::make(mpq_class(-1, 2), mpq_class(-1, 2), -2, 1);
    QuadratureSpec spec;   // rel_tol 1e-10
    QuadratureSpec gm_spec = spec;
    gm_spec.rel_tol = 1e-9;
    const std::vector<std::pair<std::complex<double>, std::complex<double> > > points = {
        {{-1, 0}, {-2, 0}}, {{-2, 0}, {-1, 0}}, {{-1.5, 0.5}, {-0.8, -0.3}}};
    for (const auto& [x, y] : points)
    {
        const auto pt = EvaluationPoint::make(params, x, y);
        const json in = {{"x", {x.real(), x.imag()}}, {"y", {y.real(), y.imag()}}};

        auto t = Clock::now();
        const auto de = period_vector(params, pt, spec);
        const auto gk = period_vector(params, pt, spec, Engine::GaussKronrod);
        double agree = 0;
        for (int i = 0; i < 3; ++i)
            agree = std::max(agree, static_cast<double>(abs(de.values[i] - gk.values[i]) / abs(gk.values[i])));
        col.add_bool("(a) engine agreement", in, "<= 1e-8", agree, "oracle", agree <= 1e-8, seconds_since(t));

        t = Clock::now();
        double exact = 0;
        for (const auto& r : exactness_residual(params, pt, spec))
            exact = std::max(exact, static_cast<double>(abs(r)) / de.norm());
        col.add_bool("(b) exactness residual", in, "<= 1e-8", exact, "property", exact <= 1e-8, seconds_since(t));

        t = Clock::now();
        const auto g = gm_residual(params, pt, 1e-3, gm_spec);
        const auto g1 = gm_residual(params, pt, 0.02, gm_spec), g2 = gm_residual(params, pt, 0.01, gm_spec);
        const double order = g1.du_x_central / g2.du_x_central;
        col.add_bool("(c) dF_du/dx = alpha F_u1du", in, "<= 1e-5", g.du_x_identity, "property",
                     g.du_x_identity <= 1e-5, seconds_since(t));
        col.add_bool("(c) second-order convergence", in, "ratio in [3.5, 4.5]", order, "property",
                     order >= 3.5 && order <= 4.5, 0);
        col.add_bool("(d) full connection residual", in, "<= 1e-4", g.residual, "property", g.residual <= 1e-4, 0);
    }
    col.runtime_budget(seconds_since(t0), 300.0);
}

void criterion_negative(Collector& col)
{
    const auto params = CHGParams::make(mpq_class(-1, 2), mpq_class(-1, 2), -2, 1);
    const mpq_class x = -1, y = -2;
    const auto pts = default_sample_points(3);

    // Every connection matrix entry.
    for (int which = 0; which < 2; ++which)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
            {
                const auto t = Clock::now();
                auto m = printed_gm_matrix(params);
                auto& entry = (which == 0 ? m.ax : m.ay)[i][j];
                entry += RatFunc2::constant(1, LinearForm::y_minus_x());
                const bool caught = !gm_matrix_mismatches(params, m, pts).empty();
                std::ostringstream name;
                name << (which == 0 ? "Ax" : "Ay") << "[" << i << "][" << j << "] + 1";
                col.add(name.str(), json::object(), "detected", caught ? "detected" : "silent", "property",
                        seconds_since(t));
            }

    // Every coefficient of the written-out relations.
    using Mutation = std::function<void(PrintedRelations&)>;
    std::vector<std::pair<std::string, Mutation> > mutations;
    const std::vector<std::pair<int, int> > gm1_support = {{2, 0}, {1, 1}, {1, 0}, {0, 1}, {0, 0}};
    const std::vector<std::pair<int, int> > gm2_support = {{0, 2}, {1, 1}, {1, 0}, {0, 1}, {0, 0}};
    const std::vector<std::pair<int, int> > gm3_support = {{1, 1}, {1, 0}, {0, 1}};
    for (auto [k, l] : gm1_support)
        mutations.emplace_back("GMI coefficient of u1^" + std::to_string(k) + " u2^" + std::to_string(l),
                               [k = k, l = l](PrintedRelations& r) { r.gm1 += Poly2::monomial(k, l); });
    for (auto [k, l] : gm2_support)
        mutations.emplace_back("GMII coefficient of u1^" + std::to_string(k) + " u2^" + std::to_string(l),
                               [k = k, l = l](PrintedRelations& r) { r.gm2 += Poly2::monomial(k, l); });
    for (auto [k, l] : gm3_support)
        mutations.emplace_back("u1 u2 relation coefficient of u1^" + std::to_string(k) + " u2^" + std::to_string(l),
                               [k = k, l = l](PrintedRelations& r) { r.gm3 += Poly2::monomial(k, l); });
    for (int i = 0; i < 3; ++i)
        mutations.emplace_back("reduced u1 u2 class entry " + std::to_string(i),
                               [i](PrintedRelations& r) { r.gm3_reduced[i] += 1; });
    const Poly2 s = LinearForm::one_plus_sum().as_poly();
    // nab1 = ((alpha x u1 + (1+a)) u2 s) du1 + ((alpha y u2 + (1+b)) u1 s) du2
    const std::vector<std::tuple<std::string, bool, Poly2> > nab_terms = {
        {"du1 coefficient of u1 u2 s", true, Poly2::monomial(1, 1) * s},
        {"du1 coefficient of u2 s", true, Poly2::monomial(0, 1) * s},
        {"du2 coefficient of u1 u2 s", false, Poly2::monomial(1, 1) * s},
        {"du2 coefficient of u1 s", false, Poly2::monomial(1, 0) * s},
    };
    for (const auto& [name, first, term] : nab_terms)
        mutations.emplace_back("nab1 " + name, [first = first, term = term](PrintedRelations& r) {
            (first ? r.nab1.f : r.nab1.g) += RatFunc2(term);
        });

    for (const auto& [name, mutate] : mutations)
    {
        const auto t = Clock::now();
        auto printed = printed_relations(params, x, y);
        mutate(printed);
        const bool caught = !check_gm_relations(params, x, y, printed).all_pass();
        col.add(name + " + 1", json::object(), "detected", caught ? "detected" : "silent", "property",
                seconds_since(t));
    }

    // The numerical connection check also notices a wrong matrix.
    const auto t = Clock::now();
    const auto pt = EvaluationPoint::make(params, -1.0, -2.0);
    const auto F = period_vector(params, pt, {});
    const auto dF = period_vector(params, EvaluationPoint::make(params, -1.0 + 1e-3, -2.0), {});
    const auto dB = period_vector(params, EvaluationPoint::make(params, -1.0 - 1e-3, -2.0), {});
    auto [ax, ay] = gm_matrices_at(params, -1.0, -2.0);
    ax[1][1] += complex_t(1);
    double worst = 0;
    for (int j = 0; j < 3; ++j)
    {
        complex_t expected(0);
        for (int i = 0; i < 3; ++i)
            expected += ax[i][j] * F.values[i];
        const complex_t fd = (dF.values[j] - dB.values[j]) / real_t(2e-3);
        worst = std::max(worst, static_cast<double>(abs(fd - expected) / abs(expected)));
    }
    col.add("numerical Ax[1][1] + 1", json::object(), "detected", worst > 1e-4 ? "detected" : "silent", "property",
            seconds_since(t));
}

const char* title_of(int id)
{
    switch (id)
    {
        case 1: return "gcd-dimension sweep";
        case 2: return "truncated operator suite";
        case 3: return "case tally against truncated linear algebra";
        case 4: return "homology of the cell models";
        case 5: return "Stokes component sampling";
        case 6: return "symbolic example suite";
        case 7: return "numerical period suite";
        case 8: return "negative controls";
        default: return "unknown";
    }
}

}   // namespace

CriterionResult run_criterion(int id, unsigned seed)
{
    const auto t0 = Clock::now();
    Collector col;
    try
    {
        switch (id)
        {
            case 1: criterion_dims(col); break;
            case 2: criterion_truncated(col); break;
            case 3: criterion_case_tally(col); break;
            case 4: criterion_homology(col); break;
            case 5: criterion_stokes(col); break;
            case 6: criterion_symbolic(col, seed); break;
            case 7: criterion_periods(col); break;
            case 8: criterion_negative(col); break;
            default: throw std::invalid_argument("criterion id must lie in 1..8");
        }
    }
    catch (const std::exception& e)
    {
        col.add_bool("exception", json::object(), "none", e.what(), "property", false, seconds_since(t0));
    }
    return col.finish(id, title_of(id), seconds_since(t0));
}

std::vector<CriterionResult> run_acceptance_suite(unsigned seed)
{
    std::vector<CriterionResult> out;
    for (int id = 1; id <= criterion_count; ++id)
        out.push_back(run_criterion(id, seed));
    return out;
}

nlohmann::json to_json(const CriterionResult& r)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks)
        checks.push_back(to_json(c));
    return {{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"runtime_s", r.runtime_s},
            {"checks", checks}};
}

}   // namespace rdper
