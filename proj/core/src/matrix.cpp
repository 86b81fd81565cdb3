#include "diagform/matrix.hpp"

#include <sstream>

#include "diagform/errors.hpp"

namespace diagform {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, const Scalar& fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill)
{
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows)
{
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) {
            throw DimensionMismatch("ragged matrix rows");
        }
        for (std::size_t j = 0; j < c; ++j) {
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, std::size_t rows)
{
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) {
            throw DimensionMismatch("column length mismatch");
        }
        for (std::size_t i = 0; i < rows; ++i) {
            m(i, j) = columns[j][i];
        }
    }
    return m;
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = Scalar(1);
    }
    return m;
}

Matrix Matrix::unvectorize(const Vector& v, std::size_t rows, std::size_t cols)
{
    if (v.size() != rows * cols) {
        throw DimensionMismatch("vector length does not match matrix shape");
    }
    Matrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < rows; ++i) {
            m(i, j) = v[j * rows + i];
        }
    }
    return m;
}

Vector Matrix::row(std::size_t i) const
{
    return Vector(data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_));
}

Vector Matrix::column(std::size_t j) const
{
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        v[i] = (*this)(i, j);
    }
    return v;
}

Vector Matrix::vectorize() const
{
    Vector v;
    v.reserve(rows_ * cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
        for (std::size_t i = 0; i < rows_; ++i) {
            v.push_back((*this)(i, j));
        }
    }
    return v;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

Matrix Matrix::conj_transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j).conj();
        }
    }
    return t;
}

Scalar Matrix::trace() const
{
    if (!square()) {
        throw NotSquare("trace of a non-square matrix");
    }
    Scalar t;
    for (std::size_t i = 0; i < rows_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

bool Matrix::is_zero() const
{
    for (const auto& x : data_) {
        if (!x.is_zero()) {
            return false;
        }
    }
    return true;
}

bool Matrix::is_symmetric() const
{
    if (!square()) {
        return false;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i + 1; j < cols_; ++j) {
            if ((*this)(i, j) != (*this)(j, i)) {
                return false;
            }
        }
    }
    return true;
}

bool Matrix::is_diagonal() const
{
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (i != j && !(*this)(i, j).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const
{
    if (row0 + rows > rows_ || col0 + cols > cols_) {
        throw IndexOutOfRange("matrix block out of range");
    }
    Matrix b(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            b(i, j) = (*this)(row0 + i, col0 + j);
        }
    }
    return b;
}

std::string Matrix::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) {
            os << (j ? ", " : "") << (*this)(i, j);
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

Matrix& Matrix::operator+=(const Matrix& rhs)
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw DimensionMismatch("matrix sum shape mismatch");
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] += rhs.data_[k];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs)
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw DimensionMismatch("matrix difference shape mismatch");
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] -= rhs.data_[k];
    }
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols_ != b.rows_) {
        throw DimensionMismatch("matrix product shape mismatch");
    }
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& aik = a(i, k);
            if (aik.is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols_; ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

Matrix operator*(const Scalar& c, Matrix a)
{
    for (auto& x : a.data_) {
        x = c * x;
    }
    return a;
}

Vector operator*(const Matrix& a, const Vector& v)
{
    if (a.cols_ != v.size()) {
        throw DimensionMismatch("matrix-vector shape mismatch");
    }
    Vector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t j = 0; j < a.cols_; ++j) {
            out[i] += a(i, j) * v[j];
        }
    }
    return out;
}

bool operator==(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        return false;
    }
    for (std::size_t k = 0; k < a.data_.size(); ++k) {
        if (a.data_[k] != b.data_[k]) {
            return false;
        }
    }
    return true;
}

Echelon row_reduce(const Matrix& m)
{
    Matrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t best = a.rows();
        double best_mag = -1.0;
        for (std::size_t i = r; i < a.rows(); ++i) {
            const Scalar& x = a(i, c);
            if (x.is_zero()) {
                continue;
            }
            if (x.exact()) {
                best = i;
                break;
            }
            if (x.magnitude() > best_mag) {
                best_mag = x.magnitude();
                best = i;
            }
        }
        if (best == a.rows()) {
            for (std::size_t i = r; i < a.rows(); ++i) {
                a(i, c) = Scalar::zero(a(i, c).field());
            }
            continue;
        }
        if (best != r) {
            for (std::size_t j = 0; j < a.cols(); ++j) {
                std::swap(a(best, j), a(r, j));
            }
        }
        const Scalar inv = a(r, c).inv();
        for (std::size_t j = c; j < a.cols(); ++j) {
            a(r, j) *= inv;
        }
        a(r, c) = Scalar::one(a(r, c).field());
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r) {
                continue;
            }
            if (a(i, c).is_zero()) {
                a(i, c) = Scalar::zero(a(i, c).field());
                continue;
            }
            const Scalar f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) {
                a(i, j) -= f * a(r, j);
            }
            a(i, c) = Scalar::zero(a(i, c).field());
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(pivots)};
}

std::size_t rank(const Matrix& m)
{
    return row_reduce(m).pivots.size();
}

std::vector<Vector> nullspace(const Matrix& m)
{
    const Echelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) {
        is_pivot[p] = true;
    }
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) {
            continue;
        }
        Vector v(m.cols());
        v[free] = Scalar(1);
        for (std::size_t k = 0; k < e.pivots.size(); ++k) {
            v[e.pivots[k]] = -e.reduced(k, free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

Matrix inverse(const Matrix& m)
{
    if (!m.square()) {
        throw NotSquare("inverse of a non-square matrix");
    }
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            aug(i, j) = m(i, j);
        }
        aug(i, n + i) = Scalar(1);
    }
    const Echelon e = row_reduce(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) {
        throw DivisionByZero();
    }
    return e.reduced.block(0, n, n, n);
}

std::vector<std::size_t> independent_columns(const Matrix& m)
{
    return row_reduce(m).pivots;
}

std::size_t rank_of(const std::vector<Vector>& vectors)
{
    if (vectors.empty()) {
        return 0;
    }
    return rank(Matrix::from_columns(vectors, vectors.front().size()));
}

Matrix evaluate(const UPoly& p, const Matrix& x)
{
    if (!x.square()) {
        throw NotSquare("polynomial evaluation needs a square matrix");
    }
    Matrix acc(x.rows(), x.cols());
    const Matrix id = Matrix::identity(x.rows());
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
        acc = acc * x + (*it) * id;
    }
    return acc;
}

} // namespace diagform
