#include "rdper/stokes_topology.hpp"

#include <stdexcept>

#include "rdper/error.hpp"

namespace rdper {

namespace {

SparseMatrix zero_matrix(int rows, int cols)
{
    return SparseMatrix(rows, cols);
}

ChainComplexQ circle()
{
    return ChainComplexQ({1, 1}, {zero_matrix(0, 1), zero_matrix(1, 1)});
}

ChainComplexQ wedge_of_circles(int m)
{
    return ChainComplexQ({1, m}, {zero_matrix(0, 1), zero_matrix(1, m)});
}

ChainComplexQ interval()
{
    SparseMatrix d1(2, 1);
    d1.add(0, 0, -1);
    d1.add(1, 0, 1);
    return ChainComplexQ({2, 1}, {zero_matrix(0, 2), d1});
}

// Cubical n x n grid on the torus. Vertex (i, j) -> i n + j, horizontal edge
// (i, j)-(i+1, j) -> i n + j, vertical edge (i, j)-(i, j+1) -> n^2 + i n + j,
// square [i, i+1] x [j, j+1] -> i n + j.
ChainComplexQ torus_grid(int n)
{
    const int nn = n * n;
    auto vertex = [n](int i, int j) { return ((i % n) * n) + (j % n); };
    SparseMatrix d1(nn, 2 * nn), d2(2 * nn, nn);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
        {
            const int h = i * n + j, v = nn + i * n + j;
            d1.add(vertex(i + 1, j), h, 1);
            d1.add(vertex(i, j), h, -1);
            d1.add(vertex(i, j + 1), v, 1);
            d1.add(vertex(i, j), v, -1);

            const int f = i * n + j;
            d2.add(h, f, 1);
            d2.add(nn + vertex(i + 1, j), f, 1);
            d2.add(vertex(i, j + 1), f, -1);
            d2.add(v, f, -1);
        }
    return ChainComplexQ({nn, 2 * nn, nn}, {zero_matrix(0, nn), d1, d2});
}

long floor_div(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

// With phase measured in units of 2pi/n, the Stokes set is the union of the
// open intervals (n/4 + k n, 3n/4 + k n). A closed cell lies inside iff the
// extreme vertex phases fall in one such interval (the phase is linear).
bool phases_inside(long lo, long hi, long n)
{
    // Largest k with n + 4kn < 4 lo.
    const long k = floor_div(4 * lo - n - 1, 4 * n);
    return 4 * hi < 3 * n + 4 * k * n;
}

CellMask stokes_cells(int m1, int m2, int n)
{
    const int nn = n * n;
    auto phase = [&](long i, long j) { return -m1 * i - m2 * j; };
    auto inside = [&](std::initializer_list<std::pair<long, long> > pts) {
        long lo = 0, hi = 0;
        bool first = true;
        for (auto [i, j] : pts)
        {
            const long p = phase(i, j);
            lo = first ? p : std::min(lo, p);
            hi = first ? p : std::max(hi, p);
            first = false;
        }
        return phases_inside(lo, hi, n);
    };
    CellMask mask{std::vector<bool>(nn), std::vector<bool>(2 * nn), std::vector<bool>(nn)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
        {
            mask[0][i * n + j] = inside({{i, j}});
            mask[1][i * n + j] = inside({{i, j}, {i + 1, j}});
            mask[1][nn + i * n + j] = inside({{i, j}, {i, j + 1}});
            mask[2][i * n + j] = inside({{i, j}, {i + 1, j}, {i, j + 1}, {i + 1, j + 1}});
        }
    return mask;
}

// Index of sigma x tau in the product, for every split p + q = n.
struct ProductIndex
{
    // offset[n][p] = first index of the (p, n - p) block in degree n
    std::vector<std::vector<int> > offset;
    std::vector<int> dims;

    ProductIndex(const ChainComplexQ& a, const ChainComplexQ& b)
    {
        const int top = a.top_degree() + b.top_degree();
        offset.assign(top + 1, std::vector<int>(a.top_degree() + 1, 0));
        dims.assign(top + 1, 0);
        for (int n = 0; n <= top; ++n)
            for (int p = 0; p <= a.top_degree(); ++p)
            {
                offset[n][p] = dims[n];
                const int q = n - p;
                if (q >= 0 && q <= b.top_degree())
                    dims[n] += a.dim(p) * b.dim(q);
            }
    }
};

}   // namespace

ChainComplexQ::ChainComplexQ(std::vector<int> dims, std::vector<SparseMatrix> boundaries)
    : dims_(std::move(dims)), boundaries_(std::move(boundaries))
{
    if (boundaries_.size() != dims_.size())
        throw std::invalid_argument("ChainComplexQ: one boundary matrix per degree is required");
    for (std::size_t k = 0; k < dims_.size(); ++k)
    {
        const int rows = k == 0 ? 0 : dims_[k - 1];
        if (boundaries_[k].rows() != rows || boundaries_[k].cols() != dims_[k])
            throw std::invalid_argument("ChainComplexQ: boundary " + std::to_string(k) + " has the wrong shape");
    }
    for (std::size_t k = 2; k < dims_.size(); ++k)
        if (!boundaries_[k - 1].multiply(boundaries_[k]).is_zero())
            throw Error(ErrorKind::BoundaryNotNilpotent, "d" + std::to_string(k - 1) + " d" + std::to_string(k) + " != 0");
}

long ChainComplexQ::euler_characteristic() const
{
    long chi = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(dims_[k]);
    return chi;
}

DimensionTable homology_dims(const ChainComplexQ& complex)
{
    const int top = complex.top_degree();
    std::vector<int> ranks(top + 2, 0);
    for (int k = 1; k <= top; ++k)
        ranks[k] = complex.boundary(k).rank();
    DimensionTable table;
    for (int k = 0; k <= top; ++k)
        table.set(k, complex.dim(k) - ranks[k] - ranks[k + 1]);
    return table;
}

long homology_euler_characteristic(const DimensionTable& homology)
{
    long chi = 0;
    for (const auto& [deg, dim] : homology.entries())
        chi += (deg % 2 == 0 ? 1 : -1) * static_cast<long>(dim);
    return chi;
}

ChainComplexQ product(const ChainComplexQ& a, const ChainComplexQ& b)
{
    const ProductIndex idx(a, b);
    const int top = static_cast<int>(idx.dims.size()) - 1;
    std::vector<SparseMatrix> bnd;
    bnd.emplace_back(0, idx.dims[0]);
    // Column access to the factors' boundaries.
    std::vector<SparseMatrix> at(a.top_degree() + 1), bt(b.top_degree() + 1);
    for (int p = 1; p <= a.top_degree(); ++p)
        at[p] = a.boundary(p).transpose();
    for (int q = 1; q <= b.top_degree(); ++q)
        bt[q] = b.boundary(q).transpose();

    for (int n = 1; n <= top; ++n)
    {
        SparseMatrix d(idx.dims[n - 1], idx.dims[n]);
        for (int p = 0; p <= a.top_degree(); ++p)
        {
            const int q = n - p;
            if (q < 0 || q > b.top_degree())
                continue;
            const int sign = p % 2 == 0 ? 1 : -1;
            for (int i = 0; i < a.dim(p); ++i)
                for (int j = 0; j < b.dim(q); ++j)
                {
                    const int col = idx.offset[n][p] + i * b.dim(q) + j;
                    if (p > 0)
                        for (const auto& [r, v] : at[p].row(i))
                            d.add(idx.offset[n - 1][p - 1] + r * b.dim(q) + j, col, v);
                    if (q > 0)
                        for (const auto& [s, v] : bt[q].row(j))
                            d.add(idx.offset[n - 1][p] + i * b.dim(q - 1) + s, col, sign * v);
                }
        }
        bnd.push_back(std::move(d));
    }
    return ChainComplexQ(idx.dims, std::move(bnd));
}

CellMask empty_mask(const ChainComplexQ& complex)
{
    CellMask mask;
    for (int d : complex.dims())
        mask.emplace_back(d, false);
    return mask;
}

CellMask product_mask(const ChainComplexQ& x, const CellMask& mask_a, const ChainComplexQ& y,
                      const CellMask& mask_b)
{
    const ProductIndex idx(x, y);
    CellMask mask;
    for (std::size_t n = 0; n < idx.dims.size(); ++n)
    {
        std::vector<bool> m(idx.dims[n], false);
        for (int p = 0; p <= x.top_degree(); ++p)
        {
            const int q = static_cast<int>(n) - p;
            if (q < 0 || q > y.top_degree())
                continue;
            for (int i = 0; i < x.dim(p); ++i)
                for (int j = 0; j < y.dim(q); ++j)
                    m[idx.offset[n][p] + i * y.dim(q) + j] = mask_a[p][i] || mask_b[q][j];
        }
        mask.push_back(std::move(m));
    }
    return mask;
}

namespace {

// Restrict to the cells with keep[k][i]; rows and columns are reindexed.
ChainComplexQ restrict_cells(const ChainComplexQ& complex, const CellMask& keep)
{
    const int top = complex.top_degree();
    std::vector<std::vector<int> > index(top + 1);
    std::vector<int> dims(top + 1, 0);
    for (int k = 0; k <= top; ++k)
    {
        index[k].assign(complex.dim(k), -1);
        for (int i = 0; i < complex.dim(k); ++i)
            if (keep[k][i])
                index[k][i] = dims[k]++;
    }
    std::vector<SparseMatrix> bnd;
    bnd.emplace_back(0, dims[0]);
    for (int k = 1; k <= top; ++k)
    {
        SparseMatrix d(dims[k - 1], dims[k]);
        const SparseMatrix& full = complex.boundary(k);
        for (int r = 0; r < full.rows(); ++r)
        {
            if (index[k - 1][r] < 0)
                continue;
            for (const auto& [c, v] : full.row(r))
                if (index[k][c] >= 0)
                    d.add(index[k - 1][r], index[k][c], v);
        }
        bnd.push_back(std::move(d));
    }
    return ChainComplexQ(std::move(dims), std::move(bnd));
}

void require_mask_shape(const ChainComplexQ& complex, const CellMask& mask)
{
    if (mask.size() != complex.dims().size())
        throw std::invalid_argument("cell mask has the wrong number of degrees");
    for (std::size_t k = 0; k < mask.size(); ++k)
        if (static_cast<int>(mask[k].size()) != complex.dims()[k])
            throw std::invalid_argument("cell mask has the wrong size in degree " + std::to_string(k));
}

void require_closed(const ChainComplexQ& complex, const CellMask& mask)
{
    for (int k = 1; k <= complex.top_degree(); ++k)
    {
        const SparseMatrix& d = complex.boundary(k);
        for (int r = 0; r < d.rows(); ++r)
            for (const auto& [c, v] : d.row(r))
                if (mask[k][c] && !mask[k - 1][r])
                    throw std::invalid_argument("cell mask is not closed under the boundary");
    }
}

}   // namespace

ChainComplexQ subcomplex(const ChainComplexQ& complex, const CellMask& mask)
{
    require_mask_shape(complex, mask);
    require_closed(complex, mask);
    return restrict_cells(complex, mask);
}

ChainComplexQ relative(const ChainComplexQ& complex, const CellMask& sub)
{
    require_mask_shape(complex, sub);
    require_closed(complex, sub);
    CellMask keep = sub;
    for (auto& degree : keep)
        degree.flip();
    return restrict_cells(complex, keep);
}

std::string describe(const CellModelSpec& spec)
{
    struct Visitor
    {
        std::string operator()(const cell_model::WedgeOfCircles& s) const
        {
            return "WedgeOfCircles(" + std::to_string(s.m) + ")";
        }
        std::string operator()(const cell_model::Sphere2&) const { return "Sphere2"; }
        std::string operator()(const cell_model::Torus2&) const { return "Torus2"; }
        std::string operator()(const cell_model::WedgeBundleOverCircle& s) const
        {
            return "WedgeBundleOverCircle(" + std::to_string(s.m) + ")";
        }
        std::string operator()(const cell_model::RadialSheetQuotient& s) const
        {
            return "RadialSheetQuotient(" + std::to_string(s.m1) + ", " + std::to_string(s.m2) + ", "
                   + std::to_string(s.n_sectors) + ")";
        }
    };
    return std::visit(Visitor{}, spec);
}

bool is_quotient_model(const CellModelSpec& spec)
{
    return std::holds_alternative<cell_model::WedgeBundleOverCircle>(spec)
           || std::holds_alternative<cell_model::RadialSheetQuotient>(spec);
}

ChainComplexQ build_complex(const CellModelSpec& spec)
{
    struct Visitor
    {
        ChainComplexQ operator()(const cell_model::WedgeOfCircles& s) const
        {
            if (s.m < 1)
                throw std::invalid_argument("WedgeOfCircles needs m >= 1");
            return wedge_of_circles(s.m);
        }
        ChainComplexQ operator()(const cell_model::Sphere2&) const
        {
            return ChainComplexQ({1, 0, 1}, {zero_matrix(0, 1), zero_matrix(1, 0), zero_matrix(0, 1)});
        }
        ChainComplexQ operator()(const cell_model::Torus2&) const
        {
            return ChainComplexQ({1, 2, 1}, {zero_matrix(0, 1), zero_matrix(1, 2), zero_matrix(2, 1)});
        }
        ChainComplexQ operator()(const cell_model::WedgeBundleOverCircle& s) const
        {
            if (s.m < 1)
                throw std::invalid_argument("WedgeBundleOverCircle needs m >= 1");
            const ChainComplexQ base = circle(), fibre = wedge_of_circles(s.m);
            CellMask basepoint = empty_mask(fibre);
            basepoint[0][0] = true;
            const ChainComplexQ total = product(base, fibre);
            return relative(total, product_mask(base, empty_mask(base), fibre, basepoint));
        }
        ChainComplexQ operator()(const cell_model::RadialSheetQuotient& s) const
        {
            if (s.m1 < 1 || s.m2 < 1)
                throw std::invalid_argument("RadialSheetQuotient needs m1, m2 >= 1");
            if (s.n_sectors < 4 * (s.m1 + s.m2))
                throw Error(ErrorKind::SpecTooCoarse, "n_sectors " + std::to_string(s.n_sectors)
                                                          + " < 4 (m1 + m2) = " + std::to_string(4 * (s.m1 + s.m2)));
            const ChainComplexQ grid = torus_grid(s.n_sectors);
            const ChainComplexQ k = subcomplex(grid, stokes_cells(s.m1, s.m2, s.n_sectors));

            const ChainComplexQ square = product(interval(), interval());
            CellMask square_boundary = empty_mask(square);
            square_boundary[0].flip();
            square_boundary[1].flip();

            const ChainComplexQ total = product(k, square);
            return relative(total, product_mask(k, empty_mask(k), square, square_boundary));
        }
    };
    return std::visit(Visitor{}, spec);
}

nlohmann::json to_json(const ChainComplexQ& complex)
{
    nlohmann::json bnd = nlohmann::json::array();
    for (int k = 1; k <= complex.top_degree(); ++k)
    {
        const SparseMatrix& d = complex.boundary(k);
        nlohmann::json triplets = nlohmann::json::array();
        for (const auto& t : d.triplets())
            triplets.push_back({t.row, t.col, t.value.get_si()});
        bnd.push_back({{"degree", k}, {"rows", d.rows()}, {"cols", d.cols()}, {"triplets", std::move(triplets)}});
    }
    return {{"dims", complex.dims()}, {"boundaries", std::move(bnd)}};
}

}   // namespace rdper
