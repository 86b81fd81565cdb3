#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "diagform/form.hpp"
#include "diagform/matrix.hpp"

namespace diagform {

/// Reproducible generator: std::mt19937_64 seeded with the given seed; an
/// integer in [lo, hi] is lo + draw % (hi - lo + 1).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    long uniform(long lo, long hi);
    long nonzero(long lo, long hi);

private:
    std::mt19937_64 engine_;
};

/// sum_i lambdas[i] * (rows[i] . x)^d by direct multinomial expansion.
Form expand_powersum(const Vector& lambdas, const std::vector<Vector>& rows, unsigned d);

struct GroundTruth {
    /// Integer matrix whose rows generate the form.
    Matrix P;
    /// Scales matching the monic rows.
    Vector lambdas;
    /// Rows of P normalized so the first nonzero entry is 1.
    std::vector<Vector> forms;
    Form form{0, 0};
};

/// Rows from an integer matrix with entries in [-4, 4] and nonzero
/// determinant; integer lambdas in [-4, 4] \ {0}.
GroundTruth random_diagonalizable(std::size_t n, unsigned d, std::uint64_t seed, const FieldConfig& cfg = {});

/// Integer matrix with entries in [lo, hi] and full rank min(rows, cols).
Matrix random_full_rank(std::size_t rows, std::size_t cols, Rng& rng, long lo = -4, long hi = 4);

/// (I - S)(I + S)^{-1}; orthogonal whenever S is antisymmetric.
Matrix cayley_transform(const Matrix& s);
/// Cayley transform of an antisymmetric S with entries a/b, a in [-3, 3], b in [1, 3].
/// Draws are repeated until Q has no zero entry, so the frame is never
/// aligned with a coordinate axis.
Matrix random_orthogonal_rational(std::size_t n, std::uint64_t seed);

/// Every monomial gets an integer coefficient in [-bound, bound].
Form random_dense_form(std::size_t n, unsigned d, std::uint64_t seed, long bound = 9);

/// g(l_1, ..., l_r) in n variables, g dense in r variables and the l_i the
/// rows of a random rank-r integer matrix (returned through `lin`).
Form random_degenerate(std::size_t n, std::size_t r, unsigned d, std::uint64_t seed, Matrix* lin = nullptr);

} // namespace diagform
