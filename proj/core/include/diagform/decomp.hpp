#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diagform/form.hpp"
#include "diagform/idem.hpp"
#include "diagform/matrix.hpp"

namespace diagform {

enum class Verdict { diagonalizable, direct_sum, indecomposable, central_indecomposable, undecided_with_certificate };
enum class Ortho { orthogonal, unitary, neither, not_applicable };

const char* to_string(Verdict v);
const char* to_string(Ortho o);

/// One summand of the final block structure.
struct Block {
    /// Columns of Decomposition::P carrying this block (0-based).
    std::vector<std::size_t> columns;
    /// The summand in its own variables y1..yk.
    Form form{0, 0};
    /// The same summand written in x1..xn; the x_forms sum to f.
    Form x_form{0, 0};
    std::size_t center_dim = 1;
    AlgebraDescription center_algebra;
    /// False when the block's center could not be split completely.
    bool resolved = true;
};

struct DecomposeOptions {
    std::uint64_t seed = 1;
    int retries = 8;
};

struct Decomposition {
    Verdict verdict = Verdict::undecided_with_certificate;
    std::size_t n = 0;
    unsigned degree = 0;
    /// Essential number of variables.
    std::size_t rank = 0;
    /// Rows l_i of the one-variable blocks, first nonzero entry 1.
    Matrix L;
    Vector lambdas;
    std::vector<Block> blocks;
    /// f(P y) is the sum of the block forms; columns rank..n-1 span the radical.
    Matrix P;
    Ortho ortho = Ortho::not_applicable;
    /// Whether the row norms needed to make P orthogonal/unitary have square
    /// roots in the field; empty when ortho is not_applicable or neither.
    std::optional<bool> scaling_in_field;
    std::size_t center_dim = 0;
    AlgebraDescription center_algebra;
    std::optional<Matrix> nilpotent_witness;
    std::vector<NeedsExtension> extension_requests;
    std::vector<UPoly> irreducible_factors;
    std::vector<std::string> certificates;
    /// Field the answer lives in, after any automatic adjunction.
    FieldPtr field;
};

Decomposition decompose(const Form& f, const FieldConfig& cfg, const DecomposeOptions& options = {});

/// Re-expands the decomposition by repeated multiplication and compares with
/// f; float results are compared at tolerance times the largest coefficient.
bool verify(const Decomposition& dec, const Form& f);
/// Largest coefficient of the expansion minus f, over max(1, largest coefficient of f).
double residual(const Decomposition& dec, const Form& f);

/// Diagonal L L^T gives orthogonal, else diagonal L L^H gives unitary. Throws
/// NotSquare.
Ortho ortho_check(const Matrix& l);

/// Square roots of the row norms of L under the matching Gram form; missing
/// roots are appended to `missing`.
bool scaling_in_field(const Matrix& l, Ortho kind, const FieldPtr& field, std::vector<NeedsExtension>* missing = nullptr);

/// True when all slices pairwise commute. Throws NotReal for non-real entries.
bool odeco_precheck(const SymTensor& a);

} // namespace diagform
