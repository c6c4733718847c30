/**
 * Sparse integer matrices with exact rank computations.
 *
 * Entries are GMP integers. Rank is computed by fraction-free row reduction:
 * each incoming row is reduced against the current pivot rows with
 * `row <- p * row - row[c] * pivot` and then divided by its content, so no
 * rational arithmetic (and no floating-point tolerance) is ever involved.
 */
#ifndef RDPER_SPARSE_MATRIX_HPP
#define RDPER_SPARSE_MATRIX_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace rdper {

struct Triplet
{
    int row;
    int col;
    mpz_class value;
};

class SparseMatrix
{
    public:
        using Row = std::vector<std::pair<int, mpz_class> >;   // sorted by column, no zeros

        SparseMatrix() = default;
        SparseMatrix(int rows, int cols);

        int rows() const { return static_cast<int>(rows_.size()); }
        int cols() const { return cols_; }

        /** Add `value` to entry (row, col); entries that cancel to zero are removed. */
        void add(int row, int col, const mpz_class& value);

        /** Append an empty row and return its index. */
        int append_row();

        mpz_class at(int row, int col) const;
        const Row& row(int i) const { return rows_[i]; }
        std::size_t nonzeros() const;

        std::vector<Triplet> triplets() const;

        /** Exact rank over the rationals. */
        int rank() const;

        /** Rank of the submatrix formed by the columns with `keep[col] == true`. */
        int rank_of_columns(const std::vector<bool>& keep) const;

        /** Matrix-vector product over the rationals. */
        std::vector<mpq_class> apply(const std::vector<mpq_class>& v) const;

        /** Product `(*this) * rhs`; used to verify that boundary maps compose to zero. */
        SparseMatrix multiply(const SparseMatrix& rhs) const;

        SparseMatrix transpose() const;

        bool is_zero() const;

    private:
        int cols_ = 0;
        std::vector<Row> rows_;
};

/**
 * Incremental row-echelon accumulator. Rows are inserted one at a time and
 * reduced against earlier pivots; the number of accepted rows is the rank of
 * everything inserted so far.
 */
class RankAccumulator
{
    public:
        explicit RankAccumulator(int cols);

        /** Insert a row; returns true if it increased the rank. */
        bool insert(SparseMatrix::Row row);

        int rank() const { return rank_; }

    private:
        std::vector<int> pivot_of_col_;          // index into pivots_, or -1
        std::vector<SparseMatrix::Row> pivots_;
        int rank_ = 0;
};

}   // namespace rdper

#endif
