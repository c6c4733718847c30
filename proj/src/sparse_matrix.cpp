#include "rdper/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace rdper {

namespace {

using Row = SparseMatrix::Row;

// a * x - b * y for sorted sparse rows x, y.
Row combine(const mpz_class& a, const Row& x, const mpz_class& b, const Row& y)
{
    Row out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    mpz_class tmp;
    while (i < x.size() || j < y.size())
    {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first))
        {
            out.emplace_back(x[i].first, a * x[i].second);
            ++i;
        }
        else if (i == x.size() || y[j].first < x[i].first)
        {
            out.emplace_back(y[j].first, -b * y[j].second);
            ++j;
        }
        else
        {
            tmp = a * x[i].second - b * y[j].second;
            if (tmp != 0)
                out.emplace_back(x[i].first, tmp);
            ++i;
            ++j;
        }
    }
    return out;
}

void remove_content(Row& row)
{
    if (row.empty())
        return;
    mpz_class g = 0;
    for (const auto& [col, v] : row)
    {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1)
            break;
    }
    if (row.back().second < 0)
        g = -g;
    if (g != 1)
        for (auto& entry : row)
            mpz_divexact(entry.second.get_mpz_t(), entry.second.get_mpz_t(), g.get_mpz_t());
}

}   // namespace

SparseMatrix::SparseMatrix(int rows, int cols) : cols_(cols), rows_(static_cast<std::size_t>(rows))
{
}

void SparseMatrix::add(int row, int col, const mpz_class& value)
{
    if (row < 0 || row >= rows() || col < 0 || col >= cols_)
        throw std::out_of_range("SparseMatrix::add: index out of range");
    if (value == 0)
        return;
    Row& r = rows_[row];
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& entry, int c) { return entry.first < c; });
    if (it != r.end() && it->first == col)
    {
        it->second += value;
        if (it->second == 0)
            r.erase(it);
    }
    else
    {
        r.insert(it, {col, value});
    }
}

int SparseMatrix::append_row()
{
    rows_.emplace_back();
    return rows() - 1;
}

mpz_class SparseMatrix::at(int row, int col) const
{
    const Row& r = rows_.at(row);
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& entry, int c) { return entry.first < c; });
    if (it != r.end() && it->first == col)
        return it->second;
    return 0;
}

std::size_t SparseMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& r : rows_)
        n += r.size();
    return n;
}

std::vector<Triplet> SparseMatrix::triplets() const
{
    std::vector<Triplet> out;
    out.reserve(nonzeros());
    for (int i = 0; i < rows(); ++i)
        for (const auto& [col, v] : rows_[i])
            out.push_back({i, col, v});
    return out;
}

int SparseMatrix::rank() const
{
    RankAccumulator acc(cols_);
    for (const auto& r : rows_)
        acc.insert(r);
    return acc.rank();
}

int SparseMatrix::rank_of_columns(const std::vector<bool>& keep) const
{
    if (static_cast<int>(keep.size()) != cols_)
        throw std::invalid_argument("rank_of_columns: mask size mismatch");
    RankAccumulator acc(cols_);
    for (const auto& r : rows_)
    {
        Row filtered;
        for (const auto& entry : r)
            if (keep[entry.first])
                filtered.push_back(entry);
        acc.insert(std::move(filtered));
    }
    return acc.rank();
}

std::vector<mpq_class> SparseMatrix::apply(const std::vector<mpq_class>& v) const
{
    if (static_cast<int>(v.size()) != cols_)
        throw std::invalid_argument("SparseMatrix::apply: size mismatch");
    std::vector<mpq_class> out(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (const auto& [col, x] : rows_[i])
            out[i] += mpq_class(x) * v[col];
    return out;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const
{
    if (cols_ != rhs.rows())
        throw std::invalid_argument("SparseMatrix::multiply: shape mismatch");
    SparseMatrix out(rows(), rhs.cols());
    for (int i = 0; i < rows(); ++i)
        for (const auto& [k, a] : rows_[i])
            for (const auto& [j, b] : rhs.rows_[k])
                out.add(i, j, a * b);
    return out;
}

SparseMatrix SparseMatrix::transpose() const
{
    SparseMatrix out(cols_, rows());
    // Visiting rows in order appends to each output row in sorted column order.
    for (int i = 0; i < rows(); ++i)
        for (const auto& [col, v] : rows_[i])
            out.rows_[col].emplace_back(i, v);
    return out;
}

bool SparseMatrix::is_zero() const
{
    return std::all_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.empty(); });
}

RankAccumulator::RankAccumulator(int cols) : pivot_of_col_(static_cast<std::size_t>(cols), -1)
{
}

bool RankAccumulator::insert(Row row)
{
    remove_content(row);
    while (!row.empty())
    {
        const int lead = row.back().first;
        const int p = pivot_of_col_[lead];
        if (p < 0)
        {
            pivot_of_col_[lead] = static_cast<int>(pivots_.size());
            pivots_.push_back(std::move(row));
            ++rank_;
            return true;
        }
        const Row& pivot = pivots_[p];
        mpz_class a = pivot.back().second;
        mpz_class b = row.back().second;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        a /= g;
        b /= g;
        row = combine(a, row, b, pivot);
        remove_content(row);
    }
    return false;
}

}   // namespace rdper
