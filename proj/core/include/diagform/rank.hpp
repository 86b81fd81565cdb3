#pragma once

#include <cstddef>
#include <vector>

#include "diagform/form.hpp"
#include "diagform/matrix.hpp"

namespace diagform {

/// A degenerate form split into a nondegenerate part and a zero part.
struct Reduction {
    /// Essential number of variables.
    std::size_t r = 0;
    /// Invertible n x n; columns r..n-1 span the radical.
    Matrix P;
    /// Order-d tensor on r variables with trivial radical.
    SymTensor reduced{0, 0};
};

/// Basis of {u : sum_i u_i A_i = 0}, A_i the order-(d-1) slice with first index i.
std::vector<Vector> radical_basis(const SymTensor& a);

/// n minus the radical dimension.
std::size_t slicing_rank(const SymTensor& a);

/// Completes the radical with standard basis vectors (leftmost first) and
/// restricts the congruent tensor to the complement.
Reduction reduce_nondegenerate(const SymTensor& a);

} // namespace diagform
