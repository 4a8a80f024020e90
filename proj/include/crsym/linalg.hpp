#ifndef CRSYM_LINALG_HPP
#define CRSYM_LINALG_HPP

// Exact linear algebra over Q and Q(i): incremental sparse row reduction kept in reduced
// row echelon form, kernels, particular solutions and rank factorizations.

#include "crsym/scalar.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace crsym {

inline bool field_zero(const Rational &q) { return sgn(q) == 0; }
inline bool field_zero(const Scalar &s) { return s.is_zero(); }
inline Rational field_inverse(const Rational &q) { return 1 / q; }
inline Scalar field_inverse(const Scalar &s) { return s.inverse(); }

template <typename F>
using SparseRow = std::vector<std::pair<int, F>>;

/// dst += f * src, both sorted by column.
template <typename F>
void row_axpy(SparseRow<F> &dst, const F &f, const SparseRow<F> &src)
{
    SparseRow<F> out;
    out.reserve(dst.size() + src.size());
    auto a = dst.begin(), b = src.begin();
    while (a != dst.end() || b != src.end()) {
        if (b == src.end() || (a != dst.end() && a->first < b->first)) {
            out.push_back(std::move(*a));
            ++a;
        } else if (a == dst.end() || b->first < a->first) {
            out.emplace_back(b->first, f * b->second);
            ++b;
        } else {
            F v = a->second + f * b->second;
            if (!field_zero(v))
                out.emplace_back(a->first, std::move(v));
            ++a;
            ++b;
        }
    }
    dst = std::move(out);
}

template <typename F>
const F *row_entry(const SparseRow<F> &row, int col)
{
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto &e, int c) { return e.first < c; });
    return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

/// Incremental Gauss-Jordan elimination. Columns >= pivot_limit (e.g. a right-hand side)
/// never become pivots. Pivots are chosen as the lowest admissible column of each
/// incoming reduced row, so results depend only on column and row order.
template <typename F>
class RowReducer {
public:
    explicit RowReducer(int ncols, int pivot_limit = -1)
        : ncols_(ncols), limit_(pivot_limit < 0 ? ncols : pivot_limit)
    {
    }

    /// Returns false when the row reduces to a nonzero multiple of only non-pivotable columns
    /// (an inconsistent equation when those columns hold a right-hand side).
    bool add_row(SparseRow<F> row)
    {
        reduce(row);
        if (row.empty())
            return true;
        if (row.front().first >= limit_) {
            inconsistent_ = true;
            return false;
        }
        const int c = row.front().first;
        const F inv = field_inverse(row.front().second);
        for (auto &e : row)
            e.second *= inv;
        for (auto &[pc, prow] : pivots_) {
            if (const F *v = row_entry(prow, c)) {
                F f = -*v;
                row_axpy(prow, f, row);
            }
        }
        pivots_.emplace(c, std::move(row));
        return true;
    }

    void reduce(SparseRow<F> &row) const
    {
        for (std::size_t i = 0; i < row.size();) {
            auto it = pivots_.find(row[i].first);
            if (it == pivots_.end()) {
                ++i;
                continue;
            }
            const int col = row[i].first;
            F f = -row[i].second;
            row_axpy(row, f, it->second);
            // Pivot rows carry no other pivot columns, so everything left of col is settled.
            i = static_cast<std::size_t>(
                std::upper_bound(row.begin(), row.end(), col,
                                 [](int c, const auto &e) { return c < e.first; }) -
                row.begin());
        }
    }

    int rank() const { return static_cast<int>(pivots_.size()); }
    bool inconsistent() const { return inconsistent_; }
    int ncols() const { return ncols_; }
    const std::map<int, SparseRow<F>> &pivots() const { return pivots_; }

    /// Basis of {x : A x = 0} restricted to the first pivot_limit columns; one vector per free
    /// column, in increasing column order.
    std::vector<std::vector<F>> kernel_basis() const
    {
        std::vector<std::vector<F>> basis;
        for (int f = 0; f < limit_; ++f) {
            if (pivots_.count(f))
                continue;
            std::vector<F> x(static_cast<std::size_t>(limit_), F(0));
            x[static_cast<std::size_t>(f)] = F(1);
            for (const auto &[pc, prow] : pivots_)
                if (const F *v = row_entry(prow, f))
                    x[static_cast<std::size_t>(pc)] = -*v;
            basis.push_back(std::move(x));
        }
        return basis;
    }

    /// Particular solution of A x = b where b sits in column pivot_limit (free variables = 0).
    std::optional<std::vector<F>> particular_solution() const
    {
        if (inconsistent_)
            return std::nullopt;
        std::vector<F> x(static_cast<std::size_t>(limit_), F(0));
        for (const auto &[pc, prow] : pivots_)
            if (const F *v = row_entry(prow, limit_))
                x[static_cast<std::size_t>(pc)] = *v;
        return x;
    }

private:
    int ncols_;
    int limit_;
    bool inconsistent_ = false;
    std::map<int, SparseRow<F>> pivots_;
};

template <typename F>
using Matrix = std::vector<std::vector<F>>;

template <typename F>
SparseRow<F> to_sparse(const std::vector<F> &dense)
{
    SparseRow<F> row;
    for (std::size_t j = 0; j < dense.size(); ++j)
        if (!field_zero(dense[j]))
            row.emplace_back(static_cast<int>(j), dense[j]);
    return row;
}

template <typename F>
int matrix_rank(const Matrix<F> &m)
{
    if (m.empty())
        return 0;
    RowReducer<F> r(static_cast<int>(m.front().size()));
    for (const auto &row : m)
        r.add_row(to_sparse(row));
    return r.rank();
}

/// M = M[:, pivots] * R with R in reduced row echelon form (rank rows).
template <typename F>
struct RankFactorization {
    std::vector<int> pivot_columns;
    Matrix<F> rref;
};

template <typename F>
RankFactorization<F> rank_factorize(const Matrix<F> &m, int ncols)
{
    RowReducer<F> r(ncols);
    for (const auto &row : m)
        r.add_row(to_sparse(row));
    RankFactorization<F> out;
    for (const auto &[pc, prow] : r.pivots()) {
        out.pivot_columns.push_back(pc);
        std::vector<F> dense(static_cast<std::size_t>(ncols), F(0));
        for (const auto &[c, v] : prow)
            dense[static_cast<std::size_t>(c)] = v;
        out.rref.push_back(std::move(dense));
    }
    return out;
}

/// Determinant by fraction-carrying Gaussian elimination.
template <typename F>
F determinant(Matrix<F> m)
{
    const std::size_t n = m.size();
    F det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && field_zero(m[p][c]))
            ++p;
        if (p == n)
            return F(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        F inv = field_inverse(m[c][c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (field_zero(m[r][c]))
                continue;
            F f = m[r][c] * inv;
            for (std::size_t k = c; k < n; ++k)
                m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

} // namespace crsym

#endif
