#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diagform/center.hpp"
#include "diagform/factor.hpp"
#include "diagform/matrix.hpp"
#include "diagform/upoly.hpp"

namespace diagform {

/// Monic polynomial of least degree annihilating X.
UPoly min_poly(const Matrix& x);

/// One primary component of the center: the part of the minimal polynomial of
/// the random element that lives there, g^multiplicity with g irreducible.
struct SplitFactor {
    UPoly poly;
    unsigned multiplicity = 1;
    /// dim(eps * Z); equals deg(poly) * multiplicity when the element generates it.
    std::size_t component_dim = 0;
    /// Set for an irreducible quadratic: the root its discriminant needs.
    std::optional<NeedsExtension> extension;
    bool proven_irreducible = true;
};

enum class SemisimpleCertificate { squarefree, nilpotent_witness };

struct IdempotentSplit {
    std::vector<Matrix> idempotents;
    std::vector<std::size_t> ranks;
    /// One per idempotent, same order.
    std::vector<SplitFactor> factors;
    SemisimpleCertificate certificate = SemisimpleCertificate::squarefree;
    /// A nonzero nilpotent center element, present with nilpotent_witness.
    std::optional<Matrix> nilpotent;
    /// Quadratic factors whose root lies outside the final field.
    std::vector<NeedsExtension> extension_requests;
    /// Irreducible factors of degree >= 3; quadratic extensions cannot split them.
    std::vector<UPoly> irreducible_factors;
    /// The random element and its minimal polynomial.
    Matrix element;
    UPoly element_min_poly;
    /// Field after automatic adjunction; idempotent entries live here.
    FieldPtr field;
    /// True when every component is generated by the element, so no finer
    /// split exists over `field`.
    bool complete = true;
};

/// Complete orthogonal idempotents of the center, from the factorization of
/// the minimal polynomial of a random element with integer coordinates in
/// [-5, 5] (std::mt19937_64, value = draw % 11 - 5). Up to `retries` elements
/// are tried; the finest split found is returned. Components are ordered by
/// rank (stable).
IdempotentSplit split_idempotents(const CenterBasis& z, const FieldConfig& cfg, int retries = 8,
                                  std::uint64_t seed = 1);

bool is_rank1_trace1(const Matrix& e);

/// table[i][j] holds the coordinates of basis[i] * basis[j]; throws NotClosed
/// when a product leaves the span.
std::vector<std::vector<Vector>> mult_table(const CenterBasis& z);

struct AlgebraFactor {
    enum class Kind { ground, quadratic, higher, local_nonsemisimple, unresolved };
    Kind kind = Kind::ground;
    std::size_t dim = 1;
    /// Defining polynomial: canonical for quadratic fields of rational
    /// discriminant, else the residue polynomial of the component.
    UPoly poly;
    /// Squarefree discriminant class of a quadratic factor, when rational.
    std::optional<long> discriminant;
    unsigned nilpotency = 1;

    std::string to_string(const std::string& ground) const;
};

struct AlgebraDescription {
    std::vector<AlgebraFactor> factors;
    /// Name of the ground field, e.g. "Q" or "Q(sqrt(2))".
    std::string ground;

    std::string to_string() const;
    /// All factors are copies of the ground field.
    bool split() const;
};

/// t^2 - t + (1-D)/4 when D = 1 mod 4, else t^2 - D.
UPoly canonical_quadratic(long discriminant);

AlgebraDescription classify_algebra(const CenterBasis& z, const IdempotentSplit& split);

const char* to_string(AlgebraFactor::Kind kind);

} // namespace diagform
