#include <map>
#include <numeric>

#include <catch_amalgamated.hpp>

#include "rdper/error.hpp"
#include "rdper/laurent_ops.hpp"

using namespace rdper;

namespace {

int column_of(const LaurentSystem& sys, int component, int k, int l)
{
    for (std::size_t c = 0; c < sys.columns.size(); ++c)
        if (sys.columns[c].component == component && sys.columns[c].index == MonomialIndex{k, l})
            return static_cast<int>(c);
    return -1;
}

int row_of(const LaurentSystem& sys, int component, int k, int l)
{
    for (std::size_t r = 0; r < sys.rows.size(); ++r)
        if (sys.rows[r].component == component && sys.rows[r].index == MonomialIndex{k, l})
            return static_cast<int>(r);
    return -1;
}

}   // namespace

TEST_CASE("D_crossing enumerates the power-series window", "[laurent]")
{
    const auto sys = build_system(OperatorKind::d_crossing(1, 1), 12);
    // k, l >= 0 with k + l <= 12
    REQUIRE(sys.columns.size() == 91);
    for (const auto& c : sys.columns)
        REQUIRE((c.index.k >= 0 && c.index.l >= 0 && c.index.degree() <= 12));
}

TEST_CASE("rho stencil is the hand expansion of f' - m z^{-m-1} f", "[laurent]")
{
    const int m = 2;
    const auto sys = build_system(OperatorKind::rho_onevar(m), 20);
    REQUIRE(sys.columns.size() == 20);
    for (int j = 1; j <= 20; ++j)
    {
        const int col = column_of(sys, 0, -j, 0);
        REQUIRE(col >= 0);
        // rho(z^{-j}) = -j z^{-j-1} - m z^{-m-1-j}
        const int r1 = row_of(sys, 0, -j - 1, 0), r2 = row_of(sys, 0, -j - m - 1, 0);
        if (r1 >= 0)
            REQUIRE(sys.matrix.at(r1, col) == -j);
        if (r2 >= 0)
            REQUIRE(sys.matrix.at(r2, col) == -m);
    }
    // Rows whose stencil needs z^0 or higher are unresolved and must be absent.
    REQUIRE(row_of(sys, 0, -1, 0) == -1);
    REQUIRE(row_of(sys, 0, -m - 1, 0) == -1);
}

TEST_CASE("rows never reference out-of-window columns", "[laurent]")
{
    for (auto op : {OperatorKind::d_crossing(2, 3), OperatorKind::e_on_p(2, 2), OperatorKind::phi_bar_crossing(1, 2)})
    {
        const auto sys = build_system(op, 24);
        for (int r = 0; r < sys.matrix.rows(); ++r)
            for (const auto& [c, v] : sys.matrix.row(r))
                REQUIRE(sys.columns[c].index.degree() <= 24);
    }
}

TEST_CASE("A operator kernel and cokernel", "[laurent]")
{
    const auto sys = build_system(OperatorKind::a_op(), 10);
    std::vector<mpq_class> v(sys.columns.size());
    for (auto [comp, k, l] : {std::tuple{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 0, 1}})
    {
        std::fill(v.begin(), v.end(), mpq_class(0));
        const int c = column_of(sys, comp, k, l);
        REQUIRE(c >= 0);
        v[c] = 1;
        for (const auto& x : sys.matrix.apply(v))
            REQUIRE(x == 0);
    }
    // The image together with 1, x1, x2, x1 x2 spans the target.
    RankAccumulator acc(sys.matrix.rows());
    const SparseMatrix cols = sys.matrix.transpose();
    for (int c = 0; c < cols.rows(); ++c)
        acc.insert(cols.row(c));
    for (auto [k, l] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}})
    {
        const int r = row_of(sys, 0, k, l);
        REQUIRE(r >= 0);
        REQUIRE(acc.insert({{r, mpz_class(1)}}));
    }
    REQUIRE(acc.rank() == sys.matrix.rows());
    for (int T = 4; T <= 12; ++T)
    {
        REQUIRE(cokernel_dim(build_system(OperatorKind::a_op(), T)) == 4);
        REQUIRE(projected_kernel_dim(build_system(OperatorKind::a_op(), T + 3), T) == 4);
    }
}

TEST_CASE("kernel of D lives on the line l m1 = k m2", "[laurent]")
{
    for (auto [m1, m2] : {std::pair{1, 1}, {2, 3}, {2, 4}, {3, 2}})
    {
        const auto op = OperatorKind::d_crossing(m1, m2);
        const int T0 = op.min_window();
        const auto sys = build_system(op, T0 + 2 * op.period());
        std::vector<bool> on_line(sys.columns.size()), off_line(sys.columns.size());
        for (std::size_t c = 0; c < sys.columns.size(); ++c)
        {
            const auto i = sys.columns[c].index;
            const bool in_window = i.degree() <= T0;
            on_line[c] = in_window && i.l * m1 == i.k * m2;
            off_line[c] = in_window && !on_line[c];
        }
        REQUIRE(projected_kernel_dim(sys, off_line) == 0);
        REQUIRE(projected_kernel_dim(sys, on_line) == std::gcd(m1, m2));
    }
}

TEST_CASE("stabilized kernel and cokernel dimensions", "[laurent]")
{
    auto ker = [](OperatorKind op) { return stabilized_kernel_dim(op, op.min_window(), 6); };
    auto coker = [](OperatorKind op) { return stabilized_cokernel_dim(op, op.min_window(), 6); };
    REQUIRE(ker(OperatorKind::d_crossing(2, 3)) == 1);
    REQUIRE(ker(OperatorKind::d_crossing(2, 2)) == 2);
    REQUIRE(ker(OperatorKind::e_on_p(2, 2)) == 4);
    REQUIRE(coker(OperatorKind::e_on_p(1, 1)) == 4);
    REQUIRE(coker(OperatorKind::e_crossing(1, 1)) == 0);
    REQUIRE(coker(OperatorKind::a_op()) == 4);
    for (int m = 1; m <= 6; ++m)
        REQUIRE(ker(OperatorKind::rho_onevar(m)) == m);
}

TEST_CASE("smooth-point operators", "[laurent]")
{
    for (int m = 1; m <= 4; ++m)
    {
        auto phi = OperatorKind::phi_smooth(m);
        auto psi = OperatorKind::psi_smooth(m);
        REQUIRE(stabilized_kernel_dim(phi, phi.min_window(), 6) == m);
        REQUIRE(stabilized_cokernel_dim(psi, psi.min_window(), 6) == 0);
    }
}

TEST_CASE("first-column operator has no kernel", "[laurent]")
{
    for (auto [m1, m2] : {std::pair{1, 1}, {2, 3}, {2, 2}, {3, 1}})
    {
        auto op = OperatorKind::phi_bar_crossing(m1, m2);
        REQUIRE(stabilized_kernel_dim(op, 2 * op.min_window(), 6) == 0);
    }
}

TEST_CASE("case tally", "[laurent]")
{
    auto pair = [](int m1, int m2) {
        auto t = pfred_case_count(m1, m2);
        return std::pair{t.ker_total, t.coker_total};
    };
    REQUIRE(pair(1, 1) == std::pair{3, 4});
    REQUIRE(pair(2, 4) == std::pair{4, 5});
    REQUIRE(pair(3, 3) == std::pair{5, 6});
    for (int m1 = 1; m1 <= 9; ++m1)
        for (int m2 = 1; m2 <= 9; ++m2)
        {
            auto [k, c] = pair(m1, m2);
            REQUIRE(k - c == -1);
        }
    const auto op = OperatorKind::e_on_p(3, 3);
    REQUIRE(stabilized_kernel_dim(op, op.min_window(), 6) == 5);
    REQUIRE(stabilized_cokernel_dim(op, op.min_window(), 6) == 6);
}

TEST_CASE("Euler characteristic of the truncated complex vanishes", "[laurent]")
{
    for (auto [m1, m2] : {std::pair{1, 1}, {2, 3}, {2, 2}})
    {
        const int d = std::gcd(m1, m2);
        const auto r = euler_characteristic(m1, m2, 2 * (m1 + m2 + 1));
        REQUIRE(r.h0 == d);
        REQUIRE(r.h1 == d);
        REQUIRE(r.h2 == 0);
        REQUIRE(r.chi == 0);
    }
}

TEST_CASE("stabilized values are invariant under a window shift", "[laurent]")
{
    const auto op = OperatorKind::d_crossing(1, 2);
    const auto a = stabilize_kernel(op, op.min_window(), 6);
    const auto b = stabilize_kernel(op, op.min_window() + op.period(), 6);
    REQUIRE(a.value == b.value);
}

TEST_CASE("preconditions", "[laurent]")
{
    try
    {
        build_system(OperatorKind::d_crossing(2, 3), 11);
        FAIL("expected WindowTooSmall");
    }
    catch (const Error& e)
    {
        REQUIRE(e.kind() == ErrorKind::WindowTooSmall);
    }
    REQUIRE_THROWS_AS(stabilize_kernel(OperatorKind::a_op(), 4, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(build_system(OperatorKind::d_crossing(0, 3), 20), std::invalid_argument);
    REQUIRE_THROWS_AS(OperatorKind::parse("Q", 1, 1), std::invalid_argument);
}

TEST_CASE("triplet export", "[laurent]")
{
    const auto sys = build_system(OperatorKind::rho_onevar(1), 4);
    const std::string text = to_triplet_text(sys);
    REQUIRE(text.rfind(std::to_string(sys.matrix.rows()) + " 4 ", 0) == 0);
    REQUIRE(text.find("/1\n") != std::string::npos);
}
