#include "diagform/rank.hpp"

#include <numeric>

#include "diagform/errors.hpp"

namespace diagform {

namespace {

// Rows: sorted (d-1)-indices J. Columns: i. Entry a_{i,J}.
Matrix contraction_matrix(const SymTensor& a)
{
    const std::size_t n = a.dim();
    const auto tails = sorted_multi_indices(n, a.order() - 1);
    Matrix m(tails.size(), n);
    for (std::size_t row = 0; row < tails.size(); ++row) {
        for (std::size_t i = 0; i < n; ++i) {
            MultiIndex idx = tails[row];
            idx.push_back(static_cast<int>(i));
            m(row, i) = a.get(idx);
        }
    }
    return m;
}

} // namespace

std::vector<Vector> radical_basis(const SymTensor& a)
{
    if (a.order() == 0) {
        throw DimensionMismatch("radical of an order-0 tensor");
    }
    return nullspace(contraction_matrix(a));
}

std::size_t slicing_rank(const SymTensor& a)
{
    return a.dim() - radical_basis(a).size();
}

Reduction reduce_nondegenerate(const SymTensor& a)
{
    const std::size_t n = a.dim();
    const auto radical = radical_basis(a);
    Reduction red;
    red.r = n - radical.size();
    if (radical.empty()) {
        red.P = Matrix::identity(n);
        red.reduced = a;
        return red;
    }

    std::vector<Vector> candidates = radical;
    for (std::size_t j = 0; j < n; ++j) {
        Vector e(n);
        e[j] = Scalar(1);
        candidates.push_back(std::move(e));
    }
    const auto picked = independent_columns(Matrix::from_columns(candidates, n));
    std::vector<Vector> columns;
    for (std::size_t c : picked) {
        if (c >= radical.size()) {
            columns.push_back(candidates[c]);
        }
    }
    columns.insert(columns.end(), radical.begin(), radical.end());
    red.P = Matrix::from_columns(columns, n);

    std::vector<int> keep(red.r);
    std::iota(keep.begin(), keep.end(), 0);
    red.reduced = congruence(a, red.P).restrict_to(keep);
    return red;
}

} // namespace diagform
