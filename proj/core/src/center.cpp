#include "diagform/center.hpp"

#include <random>

#include "diagform/errors.hpp"
#include "diagform/rank.hpp"

namespace diagform {

namespace {

// Keeps only the nonzero rows of the echelon form.
Matrix compress(const Matrix& rows)
{
    const Echelon e = row_reduce(rows);
    return e.reduced.block(0, 0, e.pivots.size(), rows.cols());
}

Matrix stack(const Matrix& top, const std::vector<Vector>& rows, std::size_t cols)
{
    Matrix out(top.rows() + rows.size(), cols);
    for (std::size_t i = 0; i < top.rows(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            out(i, j) = top(i, j);
        }
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            out(top.rows() + i, j) = rows[i][j];
        }
    }
    return out;
}

} // namespace

CenterBasis center_basis(const SymTensor& a)
{
    const std::size_t n = a.dim();
    if (!radical_basis(a).empty()) {
        throw DegenerateInput("the center is only defined for nondegenerate tensors");
    }
    const std::size_t unknowns = n * n;
    Matrix system(0, unknowns);
    std::vector<Vector> pending;

    // M X symmetric: sum_k M_ik X_kj - M_jk X_ki = 0 for i < j; X_kj is unknown j*n + k.
    for (const Matrix& m : all_slices(a)) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                Vector row(unknowns);
                bool nonzero = false;
                for (std::size_t k = 0; k < n; ++k) {
                    if (!m(i, k).is_zero()) {
                        row[j * n + k] += m(i, k);
                        nonzero = true;
                    }
                    if (!m(j, k).is_zero()) {
                        row[i * n + k] -= m(j, k);
                        nonzero = true;
                    }
                }
                if (nonzero) {
                    pending.push_back(std::move(row));
                }
            }
        }
        if (pending.size() >= 2 * unknowns) {
            system = compress(stack(system, pending, unknowns));
            pending.clear();
        }
    }
    system = stack(system, pending, unknowns);

    std::vector<Vector> solutions = system.rows() ? nullspace(system) : std::vector<Vector>{};
    if (!system.rows()) {
        for (std::size_t u = 0; u < unknowns; ++u) {
            Vector v(unknowns);
            v[u] = Scalar(1);
            solutions.push_back(std::move(v));
        }
    }

    CenterBasis z;
    z.n = n;
    const Vector id = Matrix::identity(n).vectorize();
    std::vector<Vector> with_id{id};
    with_id.insert(with_id.end(), solutions.begin(), solutions.end());
    const auto picked = independent_columns(Matrix::from_columns(with_id, unknowns));
    if (picked.size() == solutions.size()) {
        for (std::size_t c : picked) {
            z.basis.push_back(Matrix::unvectorize(with_id[c], n, n));
        }
    } else {
        for (const auto& v : solutions) {
            z.basis.push_back(Matrix::unvectorize(v, n, n));
        }
    }
    return z;
}

std::size_t center_dim(const SymTensor& a)
{
    return center_basis(a).dim();
}

bool hessian_cross_check(const Form& f, const Matrix& x, int trials, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-5, 5);
    for (int t = 0; t < trials; ++t) {
        Vector p(f.nvars());
        for (auto& c : p) {
            c = Scalar(coord(rng));
        }
        if (!(hessian_at(f, p) * x).is_symmetric()) {
            return false;
        }
    }
    return true;
}

std::optional<Vector> coordinates_in(const std::vector<Matrix>& basis, const Matrix& m)
{
    const std::size_t len = m.rows() * m.cols();
    std::vector<Vector> cols;
    for (const auto& b : basis) {
        cols.push_back(b.vectorize());
    }
    cols.push_back(m.vectorize());
    const Echelon e = row_reduce(Matrix::from_columns(cols, len));
    const std::size_t k = basis.size();
    if (!e.pivots.empty() && e.pivots.back() == k) {
        return std::nullopt;
    }
    Vector coords(k);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        coords[e.pivots[r]] = e.reduced(r, k);
    }
    return coords;
}

bool same_span(const std::vector<Matrix>& a, const std::vector<Matrix>& b)
{
    std::vector<Vector> va;
    std::vector<Vector> vb;
    for (const auto& m : a) {
        va.push_back(m.vectorize());
    }
    for (const auto& m : b) {
        vb.push_back(m.vectorize());
    }
    std::vector<Vector> all = va;
    all.insert(all.end(), vb.begin(), vb.end());
    const std::size_t ra = rank_of(va);
    return ra == rank_of(vb) && ra == rank_of(all);
}

} // namespace diagform
