#ifndef TROPGC_LINALG_HPP
#define TROPGC_LINALG_HPP

#include <tropgc/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tropgc {

/// Sparse vector: (index, value) pairs sorted by index, no explicit zeros.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;
using RationalVector = std::vector<Rational>;

struct MatrixEntry {
    std::size_t row;
    std::size_t col;
    Rational value;
};

/**
 * Immutable sparse matrix over Q, stored row-major.
 *
 * Duplicate entries passed to the constructor are summed; entries that end
 * up zero are dropped, so every stored entry is nonzero.
 */
class RationalMatrix {
public:
    RationalMatrix() = default;

    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

    RationalMatrix(std::size_t rows, std::size_t cols, std::vector<MatrixEntry> entries)
        : rows_(rows), cols_(cols), data_(rows)
    {
        std::sort(entries.begin(), entries.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        for (auto& e : entries) {
            if (e.row >= rows || e.col >= cols)
                throw std::out_of_range("matrix entry (" + std::to_string(e.row) + "," +
                                        std::to_string(e.col) + ") outside " +
                                        std::to_string(rows) + "x" + std::to_string(cols));
            auto& r = data_[e.row];
            if (!r.empty() && r.back().first == e.col)
                r.back().second += e.value;
            else
                r.emplace_back(e.col, std::move(e.value));
        }
        for (auto& r : data_)
            std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    }

    static RationalMatrix from_dense(const std::vector<std::vector<Rational>>& dense)
    {
        const std::size_t rows = dense.size();
        const std::size_t cols = rows ? dense.front().size() : 0;
        std::vector<MatrixEntry> entries;
        for (std::size_t i = 0; i < rows; ++i) {
            if (dense[i].size() != cols)
                throw std::invalid_argument("ragged dense matrix");
            for (std::size_t j = 0; j < cols; ++j)
                if (dense[i][j] != 0)
                    entries.push_back({i, j, dense[i][j]});
        }
        return RationalMatrix(rows, cols, std::move(entries));
    }

    static RationalMatrix identity(std::size_t n)
    {
        std::vector<MatrixEntry> entries;
        for (std::size_t i = 0; i < n; ++i)
            entries.push_back({i, i, Rational(1)});
        return RationalMatrix(n, n, std::move(entries));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::size_t nonzeros() const
    {
        std::size_t n = 0;
        for (const auto& r : data_)
            n += r.size();
        return n;
    }

    const SparseVector& row(std::size_t r) const { return data_.at(r); }

    Rational at(std::size_t r, std::size_t c) const
    {
        const auto& row = data_.at(r);
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& kv, std::size_t col) { return kv.first < col; });
        if (it != row.end() && it->first == c)
            return it->second;
        return Rational(0);
    }

    /// Row-major list of nonzero entries.
    std::vector<MatrixEntry> entries() const
    {
        std::vector<MatrixEntry> out;
        for (std::size_t i = 0; i < rows_; ++i)
            for (const auto& [j, v] : data_[i])
                out.push_back({i, j, v});
        return out;
    }

    SparseVector column(std::size_t c) const
    {
        SparseVector out;
        for (std::size_t i = 0; i < rows_; ++i) {
            Rational v = at(i, c);
            if (v != 0)
                out.emplace_back(i, std::move(v));
        }
        return out;
    }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const auto& r) { return r.empty(); });
    }

    RationalMatrix transpose() const
    {
        std::vector<MatrixEntry> out;
        for (std::size_t i = 0; i < rows_; ++i)
            for (const auto& [j, v] : data_[i])
                out.push_back({j, i, v});
        return RationalMatrix(cols_, rows_, std::move(out));
    }

    RationalMatrix scaled(const Rational& s) const
    {
        std::vector<MatrixEntry> out;
        for (auto& e : entries())
            out.push_back({e.row, e.col, e.value * s});
        return RationalMatrix(rows_, cols_, std::move(out));
    }

    /// Submatrix on the given rows and columns, in the order given.
    RationalMatrix submatrix(std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) const
    {
        std::vector<std::ptrdiff_t> col_pos(cols_, -1);
        for (std::size_t j = 0; j < col_ids.size(); ++j)
            col_pos.at(col_ids[j]) = static_cast<std::ptrdiff_t>(j);
        std::vector<MatrixEntry> out;
        for (std::size_t i = 0; i < row_ids.size(); ++i)
            for (const auto& [c, v] : data_.at(row_ids[i]))
                if (col_pos[c] >= 0)
                    out.push_back({i, static_cast<std::size_t>(col_pos[c]), v});
        return RationalMatrix(row_ids.size(), col_ids.size(), std::move(out));
    }

    RationalMatrix operator*(const RationalMatrix& rhs) const
    {
        if (cols_ != rhs.rows_)
            throw std::invalid_argument("matrix product dimension mismatch");
        std::vector<MatrixEntry> out;
        for (std::size_t i = 0; i < rows_; ++i) {
            std::map<std::size_t, Rational> acc;
            for (const auto& [k, a] : data_[i])
                for (const auto& [j, b] : rhs.data_[k])
                    acc[j] += a * b;
            for (auto& [j, v] : acc)
                if (v != 0)
                    out.push_back({i, j, v});
        }
        return RationalMatrix(rows_, rhs.cols_, std::move(out));
    }

    bool operator==(const RationalMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<SparseVector> data_;
};

namespace detail {

using IntRow = std::vector<std::pair<std::size_t, Integer>>;

inline void make_primitive(IntRow& row)
{
    if (row.empty())
        return;
    Integer g = 0;
    for (const auto& [c, v] : row) {
        g = boost::multiprecision::gcd(g, v);
        if (g == 1)
            return;
    }
    if (g > 1)
        for (auto& [c, v] : row)
            v /= g;
}

/// Clears denominators and content: a primitive integer row spanning the same line.
inline IntRow to_integer_row(const SparseVector& v)
{
    Integer l = 1;
    for (const auto& [c, q] : v)
        l = boost::multiprecision::lcm(l, denominator_of(q));
    IntRow row;
    row.reserve(v.size());
    for (const auto& [c, q] : v)
        row.emplace_back(c, numerator_of(q) * (l / denominator_of(q)));
    make_primitive(row);
    return row;
}

/**
 * Incremental row-echelon form over Z.
 *
 * Each stored row is primitive and keyed by its leading column. A new row is
 * reduced fraction-free against the pivots (r <- a*r - b*p with a, b the
 * leading coefficients divided by their gcd), then its content is removed.
 */
class IntegerEchelon {
public:
    /// Returns true if the row was independent of the rows inserted so far.
    bool insert(IntRow row)
    {
        while (!row.empty()) {
            auto it = pivots_.find(row.front().first);
            if (it == pivots_.end()) {
                if (row.front().second < 0)
                    for (auto& [c, v] : row)
                        v = -v;
                pivots_.emplace(row.front().first, std::move(row));
                return true;
            }
            row = reduce(row, it->second);
        }
        return false;
    }

    std::size_t rank() const { return pivots_.size(); }
    const std::map<std::size_t, IntRow>& pivots() const { return pivots_; }

private:
    static IntRow reduce(const IntRow& row, const IntRow& pivot)
    {
        Integer a = pivot.front().second;
        Integer b = row.front().second;
        Integer g = boost::multiprecision::gcd(a, b);
        a /= g;
        b /= g;
        IntRow out;
        out.reserve(row.size() + pivot.size());
        std::size_t i = 1, j = 1;
        while (i < row.size() || j < pivot.size()) {
            if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
                out.emplace_back(row[i].first, a * row[i].second);
                ++i;
            } else if (i == row.size() || pivot[j].first < row[i].first) {
                out.emplace_back(pivot[j].first, -b * pivot[j].second);
                ++j;
            } else {
                Integer v = a * row[i].second - b * pivot[j].second;
                if (v != 0)
                    out.emplace_back(row[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        make_primitive(out);
        return out;
    }

    std::map<std::size_t, IntRow> pivots_;
};

inline IntegerEchelon echelon_of(const std::vector<const SparseVector*>& rows)
{
    // Sparsest rows first keeps fill-in low.
    std::vector<const SparseVector*> order(rows);
    std::stable_sort(order.begin(), order.end(),
                     [](const SparseVector* a, const SparseVector* b) { return a->size() < b->size(); });
    IntegerEchelon ech;
    for (const auto* r : order)
        if (!r->empty())
            ech.insert(to_integer_row(*r));
    return ech;
}

inline IntegerEchelon echelon_of(const RationalMatrix& m)
{
    std::vector<const SparseVector*> rows;
    for (std::size_t i = 0; i < m.rows(); ++i)
        rows.push_back(&m.row(i));
    return echelon_of(rows);
}

inline SparseVector to_sparse(const RationalVector& v)
{
    SparseVector out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            out.emplace_back(i, v[i]);
    return out;
}

} // namespace detail

/// Exact rank over Q.
inline std::size_t rank(const RationalMatrix& m)
{
    return detail::echelon_of(m).rank();
}

/// Kernel basis as sparse vectors of length m.cols(), one per free column.
inline std::vector<SparseVector> kernel_basis_sparse(const RationalMatrix& m)
{
    const auto ech = detail::echelon_of(m);

    // Reduced row echelon form over Q, back-substituting from the last pivot.
    std::map<std::size_t, std::map<std::size_t, Rational>> rref;
    for (auto it = ech.pivots().rbegin(); it != ech.pivots().rend(); ++it) {
        const auto& [lead, irow] = *it;
        std::map<std::size_t, Rational> row;
        const Rational inv(Integer(1), irow.front().second);
        for (const auto& [c, v] : irow)
            row.emplace(c, Rational(v) * inv);
        for (auto& [pc, prow] : rref) {
            auto hit = row.find(pc);
            if (hit == row.end())
                continue;
            const Rational f = hit->second;
            for (const auto& [c, v] : prow) {
                auto& slot = row[c];
                slot -= f * v;
            }
            std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
        }
        rref.emplace(lead, std::move(row));
    }

    std::vector<SparseVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (rref.count(f))
            continue;
        std::map<std::size_t, Rational> x;
        x.emplace(f, Rational(1));
        for (const auto& [pc, prow] : rref) {
            auto hit = prow.find(f);
            if (hit != prow.end())
                x.emplace(pc, -hit->second);
        }
        basis.emplace_back(x.begin(), x.end());
    }
    return basis;
}

/// Kernel basis as dense column vectors; count equals cols - rank.
inline std::vector<RationalVector> kernel_basis(const RationalMatrix& m)
{
    std::vector<RationalVector> out;
    for (const auto& sv : kernel_basis_sparse(m)) {
        RationalVector v(m.cols());
        for (const auto& [i, q] : sv)
            v[i] = q;
        out.push_back(std::move(v));
    }
    return out;
}

/// Dimension of the span of a list of sparse vectors.
inline std::size_t span_dimension(std::span<const SparseVector> vectors)
{
    std::vector<const SparseVector*> rows;
    for (const auto& v : vectors)
        rows.push_back(&v);
    return detail::echelon_of(rows).rank();
}

struct SubspaceDims {
    std::size_t dim_u;
    std::size_t dim_v;
    std::size_t dim_sum;
    std::size_t dim_intersection;

    bool operator==(const SubspaceDims&) const = default;
};

/// Dimensions of span(u), span(v), their sum and intersection. Ambient size is given explicitly.
inline SubspaceDims subspace_dims(std::span<const SparseVector> u, std::span<const SparseVector> v,
                                  std::size_t ambient)
{
    auto check = [ambient](std::span<const SparseVector> vs) {
        for (const auto& x : vs)
            if (!x.empty() && x.back().first >= ambient)
                throw std::invalid_argument("vector index outside ambient dimension " +
                                            std::to_string(ambient));
    };
    check(u);
    check(v);
    std::vector<SparseVector> both(u.begin(), u.end());
    both.insert(both.end(), v.begin(), v.end());
    SubspaceDims d{span_dimension(u), span_dimension(v), span_dimension(both), 0};
    d.dim_intersection = d.dim_u + d.dim_v - d.dim_sum;
    return d;
}

/// Dense overload; all vectors must share one ambient dimension.
inline SubspaceDims subspace_dims(const std::vector<RationalVector>& u, const std::vector<RationalVector>& v)
{
    std::size_t ambient = 0;
    bool seen = false;
    for (const auto* list : {&u, &v})
        for (const auto& x : *list) {
            if (seen && x.size() != ambient)
                throw std::invalid_argument("ambient dimension mismatch: " + std::to_string(ambient) +
                                            " vs " + std::to_string(x.size()));
            ambient = x.size();
            seen = true;
        }
    std::vector<SparseVector> su, sv;
    for (const auto& x : u)
        su.push_back(detail::to_sparse(x));
    for (const auto& x : v)
        sv.push_back(detail::to_sparse(x));
    return subspace_dims(su, sv, ambient);
}

} // namespace tropgc

#endif // TROPGC_LINALG_HPP
