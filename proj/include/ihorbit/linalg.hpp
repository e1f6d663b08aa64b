// Exact linear algebra over the rationals: sparse vectors, an incremental
// echelon basis used for every rank / kernel / coordinate computation on chain
// complexes, and small dense matrices for forms and representations.

#ifndef IHORBIT_LINALG_HPP
#define IHORBIT_LINALG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ihorbit/rational.hpp"

namespace ihorbit
{

/// Sparse vector: (index, value) pairs sorted by index, no zero values.
using SparseVec = std::vector<std::pair<std::int64_t, Rational>>;

/// v <- v - c * p
void subtractMultiple(SparseVec& v, Rational const& c, SparseVec const& p);

void scale(SparseVec& v, Rational const& c);

/// Builds a sparse vector from unsorted entries, summing duplicates.
SparseVec makeSparse(std::vector<std::pair<std::int64_t, Rational>> entries);

/// Column-echelon basis keyed by the largest nonzero index ("low") of each
/// stored vector, in the style of persistence reductions.  Stored vectors are
/// normalised so that their low entry is 1.  Optionally each vector carries a
/// tag that undergoes the same row operations, which is how kernels and
/// coordinates are extracted.
class EchelonBasis
{
public:
    /// Reduces v against the stored pivots until its low index is free or v
    /// vanishes.  When tag is non-null the same combination is applied to it.
    void reduce(SparseVec& v, SparseVec* tag) const;

    bool inSpan(SparseVec v) const;

    /// Inserts v (with tag).  Returns true when v was independent of the
    /// current span, in which case it becomes a new pivot.  When v reduces to
    /// zero the reduced tag is returned through zeroTag (if non-null).
    bool insert(SparseVec v, SparseVec tag = {}, SparseVec* zeroTag = nullptr);

    /// Expresses v in terms of the tags of stored vectors: if v lies in the
    /// span, returns sum(c_k * tag_k) where v = sum(c_k * stored_k).
    std::optional<SparseVec> coordinates(SparseVec v) const;

    std::size_t rank() const { return vecs_.size(); }

    SparseVec const& vector(std::size_t k) const { return vecs_[k]; }
    SparseVec const& tag(std::size_t k) const { return tags_[k]; }

private:
    std::unordered_map<std::int64_t, std::size_t> pivotOf_;
    std::vector<SparseVec> vecs_;
    std::vector<SparseVec> tags_;
};

/// Dense row-major rational matrix.
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix fromRows(std::vector<std::vector<Rational>> const& rows);
    static Matrix fromColumns(std::vector<std::vector<Rational>> const& cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Rational const& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<Rational> column(std::size_t c) const;
    Matrix transpose() const;
    Rational trace() const;
    bool isZero() const;
    bool isSymmetric() const;
    bool isSkewSymmetric() const;

    friend Matrix operator*(Matrix const& a, Matrix const& b);
    friend Matrix operator+(Matrix const& a, Matrix const& b);
    friend Matrix operator-(Matrix const& a, Matrix const& b);
    friend Matrix operator*(Rational const& s, Matrix const& a);
    friend bool operator==(Matrix const& a, Matrix const& b);
    friend bool operator!=(Matrix const& a, Matrix const& b) { return !(a == b); }

    /// Rows as "p/q" strings, for reports.
    std::vector<std::vector<std::string>> toStrings() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

std::size_t rank(Matrix const& m);

/// Basis of the right null space, as the columns of the returned matrix.
Matrix nullSpace(Matrix const& m);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(Matrix const& m);

Rational determinant(Matrix const& m);

/// Horizontal concatenation [a | b].
Matrix hconcat(Matrix const& a, Matrix const& b);
/// Vertical concatenation.
Matrix vconcat(Matrix const& a, Matrix const& b);

/// Signature (n_+ - n_-) of a symmetric rational matrix by exact congruence
/// diagonalisation.  Also reports the nullity.
struct Inertia
{
    int positive = 0;
    int negative = 0;
    int zero = 0;
    int signature() const { return positive - negative; }
};

Inertia inertia(Matrix const& symmetric);

} // namespace ihorbit

#endif // IHORBIT_LINALG_HPP
