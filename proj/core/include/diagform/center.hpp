#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "diagform/form.hpp"
#include "diagform/matrix.hpp"

namespace diagform {

/// Basis of the center {X : X^T M = M X for every slice M}. When the
/// identity is in the span it is the first basis element.
struct CenterBasis {
    std::size_t n = 0;
    std::vector<Matrix> basis;

    std::size_t dim() const noexcept { return basis.size(); }
};

/// Throws DegenerateInput when the tensor has a nontrivial radical.
CenterBasis center_basis(const SymTensor& a);
std::size_t center_dim(const SymTensor& a);

/// Checks that H(p) X is symmetric at `trials` random integer points p.
/// A necessary condition for X to lie in the center.
bool hessian_cross_check(const Form& f, const Matrix& x, int trials = 8, std::uint64_t seed = 1);

/// Coordinates of `m` in the span of `basis`, or nothing when outside it.
std::optional<Vector> coordinates_in(const std::vector<Matrix>& basis, const Matrix& m);

/// True when span(a) == span(b), by comparing ranks of the stacked vectorizations.
bool same_span(const std::vector<Matrix>& a, const std::vector<Matrix>& b);

} // namespace diagform
