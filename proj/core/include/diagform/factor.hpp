#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "diagform/scalar.hpp"
#include "diagform/upoly.hpp"

namespace diagform {

/// Roots of a polynomial with complex coefficients (constant term first),
/// from the companion matrix and polished by Newton steps.
std::vector<std::complex<long double>> numeric_roots(const std::vector<std::complex<long double>>& coeffs);

/// Continued-fraction reconstruction of a rational close to x.
std::optional<mpq_class> recover_rational(long double x, long max_denominator = 1000000,
                                          long double tolerance = 1e-9L);

/// Monic irreducible factors over Q of a squarefree rational polynomial.
///
/// Candidate factors come from products of numeric roots; a candidate is kept
/// only after exact division succeeds, so every returned factor divides p. The
/// claim that the last factor is irreducible rests on the numeric roots; when
/// coefficients are too large for long double rounding `reliable` is cleared.
std::vector<UPoly> factor_rational(const UPoly& p, bool* reliable = nullptr);

struct TowerFactor {
    UPoly poly; // monic
    /// For an irreducible quadratic: the square root its discriminant needs.
    std::optional<NeedsExtension> extension;
    /// Cleared when a factor of degree >= 3 could not be searched exhaustively.
    bool proven_irreducible = true;
};

/// Factors a squarefree monic polynomial over the exact tower `field`.
///
/// Rational inputs are first split over Q. Quadratics are resolved through the
/// square root of their discriminant. Higher-degree pieces are searched for
/// factors over the tower by matching numeric roots across the sign
/// embeddings of the radicands and verifying candidates exactly.
std::vector<TowerFactor> factor_over_field(const UPoly& p, const FieldPtr& field);

} // namespace diagform
