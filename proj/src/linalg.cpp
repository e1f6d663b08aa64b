#include "ihorbit/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace ihorbit
{

void subtractMultiple(SparseVec& v, Rational const& c, SparseVec const& p)
{
    if (c.isZero() || p.empty())
        return;
    SparseVec out;
    out.reserve(v.size() + p.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < v.size() || j < p.size())
    {
        if (j == p.size() || (i < v.size() && v[i].first < p[j].first))
        {
            out.push_back(std::move(v[i]));
            ++i;
        }
        else if (i == v.size() || p[j].first < v[i].first)
        {
            out.emplace_back(p[j].first, -(c * p[j].second));
            ++j;
        }
        else
        {
            Rational x = std::move(v[i].second);
            x -= c * p[j].second;
            if (!x.isZero())
                out.emplace_back(v[i].first, std::move(x));
            ++i;
            ++j;
        }
    }
    v = std::move(out);
}

void scale(SparseVec& v, Rational const& c)
{
    if (c.isZero())
    {
        v.clear();
        return;
    }
    if (c.isOne())
        return;
    for (auto& e : v)
        e.second *= c;
}

SparseVec makeSparse(std::vector<std::pair<std::int64_t, Rational>> entries)
{
    std::sort(entries.begin(), entries.end(),
              [](auto const& a, auto const& b) { return a.first < b.first; });
    SparseVec out;
    out.reserve(entries.size());
    for (auto& e : entries)
    {
        if (!out.empty() && out.back().first == e.first)
            out.back().second += e.second;
        else
            out.push_back(std::move(e));
        if (out.back().second.isZero())
            out.pop_back();
    }
    return out;
}

void EchelonBasis::reduce(SparseVec& v, SparseVec* tag) const
{
    while (!v.empty())
    {
        auto it = pivotOf_.find(v.back().first);
        if (it == pivotOf_.end())
            return;
        Rational c = v.back().second;
        subtractMultiple(v, c, vecs_[it->second]);
        if (tag)
            subtractMultiple(*tag, c, tags_[it->second]);
    }
}

bool EchelonBasis::inSpan(SparseVec v) const
{
    reduce(v, nullptr);
    return v.empty();
}

bool EchelonBasis::insert(SparseVec v, SparseVec tag, SparseVec* zeroTag)
{
    reduce(v, &tag);
    if (v.empty())
    {
        if (zeroTag)
            *zeroTag = std::move(tag);
        return false;
    }
    Rational inv = Rational(1) / v.back().second;
    scale(v, inv);
    scale(tag, inv);
    pivotOf_.emplace(v.back().first, vecs_.size());
    vecs_.push_back(std::move(v));
    tags_.push_back(std::move(tag));
    return true;
}

std::optional<SparseVec> EchelonBasis::coordinates(SparseVec v) const
{
    // v - sum c_k stored_k = 0  =>  coordinates = sum c_k tag_k.
    SparseVec acc;
    reduce(v, &acc);
    if (!v.empty())
        return std::nullopt;
    scale(acc, Rational(-1));
    return acc;
}

// ---------------------------------------------------------------------------

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::fromRows(std::vector<std::vector<Rational>> const& rows)
{
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        if (rows[i].size() != c)
            throw std::invalid_argument("Matrix::fromRows: ragged rows");
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::fromColumns(std::vector<std::vector<Rational>> const& cols, std::size_t rows)
{
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
    {
        if (cols[j].size() != rows)
            throw std::invalid_argument("Matrix::fromColumns: column length mismatch");
        for (std::size_t i = 0; i < rows; ++i)
            m(i, j) = cols[j][i];
    }
    return m;
}

std::vector<Rational> Matrix::column(std::size_t c) const
{
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        out[i] = (*this)(i, c);
    return out;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

Rational Matrix::trace() const
{
    Rational t;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
        t += (*this)(i, i);
    return t;
}

bool Matrix::isZero() const
{
    return std::all_of(data_.begin(), data_.end(), [](Rational const& x) { return x.isZero(); });
}

bool Matrix::isSymmetric() const
{
    if (rows_ != cols_)
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i))
                return false;
    return true;
}

bool Matrix::isSkewSymmetric() const
{
    if (rows_ != cols_)
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if ((*this)(i, j) != -(*this)(j, i))
                return false;
    return true;
}

Matrix operator*(Matrix const& a, Matrix const& b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("Matrix product: shape mismatch");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k)
        {
            Rational const& x = a(i, k);
            if (x.isZero())
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).isZero())
                    m(i, j) += x * b(k, j);
        }
    return m;
}

Matrix operator+(Matrix const& a, Matrix const& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("Matrix sum: shape mismatch");
    Matrix m = a;
    for (std::size_t i = 0; i < m.data_.size(); ++i)
        m.data_[i] += b.data_[i];
    return m;
}

Matrix operator-(Matrix const& a, Matrix const& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("Matrix difference: shape mismatch");
    Matrix m = a;
    for (std::size_t i = 0; i < m.data_.size(); ++i)
        m.data_[i] -= b.data_[i];
    return m;
}

Matrix operator*(Rational const& s, Matrix const& a)
{
    Matrix m = a;
    for (auto& x : m.data_)
        x *= s;
    return m;
}

bool operator==(Matrix const& a, Matrix const& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::vector<std::vector<std::string>> Matrix::toStrings() const
{
    std::vector<std::vector<std::string>> out(rows_, std::vector<std::string>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out[i][j] = (*this)(i, j).str();
    return out;
}

namespace
{

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col)
    {
        std::size_t p = row;
        while (p < m.rows() && m(p, col).isZero())
            ++p;
        if (p == m.rows())
            continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(row, j));
        Rational inv = Rational(1) / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j)
            m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i)
        {
            if (i == row || m(i, col).isZero())
                continue;
            Rational f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (!m(row, j).isZero())
                    m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::size_t rank(Matrix const& m)
{
    Matrix w = m;
    return rref(w).size();
}

Matrix nullSpace(Matrix const& m)
{
    Matrix w = m;
    auto pivots = rref(w);
    std::vector<bool> isPivot(m.cols(), false);
    for (auto p : pivots)
        isPivot[p] = true;
    std::vector<std::size_t> freeCols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!isPivot[j])
            freeCols.push_back(j);
    Matrix basis(m.cols(), freeCols.size());
    for (std::size_t k = 0; k < freeCols.size(); ++k)
    {
        std::size_t f = freeCols[k];
        basis(f, k) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            basis(pivots[r], k) = -w(r, f);
    }
    return basis;
}

std::optional<Matrix> inverse(Matrix const& m)
{
    if (m.rows() != m.cols())
        return std::nullopt;
    std::size_t n = m.rows();
    if (n == 0)
        return Matrix();
    Matrix aug = hconcat(m, Matrix::identity(n));
    auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1)
        return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = aug(i, n + j);
    return inv;
}

Rational determinant(Matrix const& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant: non-square matrix");
    Matrix w = m;
    std::size_t n = w.rows();
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col)
    {
        std::size_t p = col;
        while (p < n && w(p, col).isZero())
            ++p;
        if (p == n)
            return Rational(0);
        if (p != col)
        {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(w(p, j), w(col, j));
            det = -det;
        }
        det *= w(col, col);
        for (std::size_t i = col + 1; i < n; ++i)
        {
            if (w(i, col).isZero())
                continue;
            Rational f = w(i, col) / w(col, col);
            for (std::size_t j = col; j < n; ++j)
                w(i, j) -= f * w(col, j);
        }
    }
    return det;
}

Matrix hconcat(Matrix const& a, Matrix const& b)
{
    if (a.rows() != b.rows())
        throw std::invalid_argument("hconcat: row mismatch");
    Matrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

Matrix vconcat(Matrix const& a, Matrix const& b)
{
    if (a.cols() != b.cols())
        throw std::invalid_argument("vconcat: column mismatch");
    Matrix m(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            m(a.rows() + i, j) = b(i, j);
    return m;
}

Inertia inertia(Matrix const& symmetric)
{
    if (!symmetric.isSymmetric())
        throw std::invalid_argument("inertia: matrix is not symmetric");
    Matrix a = symmetric;
    std::size_t n = a.rows();
    Inertia result;
    std::size_t k = 0;
    while (k < n)
    {
        // Bring a nonzero diagonal entry to position k.
        std::size_t p = k;
        while (p < n && a(p, p).isZero())
            ++p;
        if (p == n)
        {
            // All remaining diagonal entries vanish; look for an off-diagonal one.
            std::size_t pi = n, pj = n;
            for (std::size_t i = k; i < n && pi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!a(i, j).isZero())
                    {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n)
                break;  // remaining block is zero
            // row/col pi += row/col pj  ->  new diagonal 2 a(pi,pj)
            for (std::size_t j = 0; j < n; ++j)
                a(pi, j) += a(pj, j);
            for (std::size_t i = 0; i < n; ++i)
                a(i, pi) += a(i, pj);
            p = pi;
        }
        if (p != k)
        {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(p, j), a(k, j));
            for (std::size_t i = 0; i < n; ++i)
                std::swap(a(i, p), a(i, k));
        }
        Rational d = a(k, k);
        for (std::size_t i = k + 1; i < n; ++i)
        {
            if (a(i, k).isZero())
                continue;
            Rational f = a(i, k) / d;
            for (std::size_t j = k; j < n; ++j)
                a(i, j) -= f * a(k, j);
            for (std::size_t j = k; j < n; ++j)
                a(j, i) = a(i, j);
        }
        if (d.sign() > 0)
            ++result.positive;
        else
            ++result.negative;
        ++k;
    }
    result.zero = static_cast<int>(n) - result.positive - result.negative;
    return result;
}

} // namespace ihorbit
