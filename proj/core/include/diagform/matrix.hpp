#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "diagform/scalar.hpp"
#include "diagform/upoly.hpp"

namespace diagform {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over the working field.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, const Scalar& fill);
    /// Row-major initializer, mainly for fixtures: Matrix::from_rows({{1, 2}, {3, 4}}).
    static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows);
    static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows);
    static Matrix identity(std::size_t n);
    /// Column-major unflattening of a length rows*cols vector.
    static Matrix unvectorize(const Vector& v, std::size_t rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector row(std::size_t i) const;
    Vector column(std::size_t j) const;
    /// Column-major flattening, the coordinates of X in the unknowns x_{ij}.
    Vector vectorize() const;

    Matrix transpose() const;
    Matrix conj_transpose() const;
    Scalar trace() const;
    bool is_zero() const;
    bool is_symmetric() const;
    bool is_diagonal() const;
    Matrix block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const;

    std::string to_string() const;

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Scalar& c, Matrix a);
    friend Vector operator*(const Matrix& a, const Vector& v);
    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// Reduced row echelon form. Exact scalars pivot on the first nonzero entry;
/// floating scalars pivot on the largest entry and treat anything within the
/// field tolerance as zero.
struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

Echelon row_reduce(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Basis of {v : m v = 0}, one vector per free column.
std::vector<Vector> nullspace(const Matrix& m);
/// Throws DivisionByZero when m is singular, NotSquare when m is not square.
Matrix inverse(const Matrix& m);
/// Indices of a maximal independent set of columns, chosen greedily left to right.
std::vector<std::size_t> independent_columns(const Matrix& m);
/// Rank of a family of equal-length vectors.
std::size_t rank_of(const std::vector<Vector>& vectors);

/// p(X) by Horner's rule.
Matrix evaluate(const UPoly& p, const Matrix& x);

} // namespace diagform
