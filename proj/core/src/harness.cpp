#include "diagform/harness.hpp"

#include "diagform/errors.hpp"

namespace diagform {

long Rng::uniform(long lo, long hi)
{
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(engine_() % span);
}

long Rng::nonzero(long lo, long hi)
{
    while (true) {
        const long v = uniform(lo, hi);
        if (v != 0) {
            return v;
        }
    }
}

Form expand_powersum(const Vector& lambdas, const std::vector<Vector>& rows, unsigned d)
{
    if (lambdas.size() != rows.size()) {
        throw DimensionMismatch("one scale per linear form");
    }
    const std::size_t n = rows.empty() ? 0 : rows.front().size();
    Form f(n, d);
    const auto monomials = sorted_multi_indices(n, d);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n) {
            throw DimensionMismatch("linear forms of different lengths");
        }
        for (const auto& idx : monomials) {
            const Exponent e = to_exponent(idx, n);
            Scalar c = lambdas[i] * Scalar(mpq_class(multinomial(e)));
            for (std::size_t j = 0; j < n && !c.is_zero(); ++j) {
                for (int k = 0; k < e[j]; ++k) {
                    c *= rows[i][j];
                }
            }
            f.add_term(e, c);
        }
    }
    return f;
}

Matrix random_full_rank(std::size_t rows, std::size_t cols, Rng& rng, long lo, long hi)
{
    while (true) {
        Matrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                m(i, j) = Scalar(rng.uniform(lo, hi));
            }
        }
        if (rank(m) == std::min(rows, cols)) {
            return m;
        }
    }
}

GroundTruth random_diagonalizable(std::size_t n, unsigned d, std::uint64_t seed, const FieldConfig& cfg)
{
    const FieldPtr field = Field::make(cfg);
    Rng rng(seed);
    GroundTruth gt;
    gt.P = random_full_rank(n, n, rng);
    Vector raw;
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i) {
        const Scalar lambda = Scalar(rng.nonzero(-4, 4)).lift(field);
        Vector row = gt.P.row(i);
        for (auto& x : row) {
            x = x.lift(field);
        }
        raw.push_back(lambda);
        rows.push_back(row);

        Scalar alpha(1);
        for (const auto& x : row) {
            if (!x.is_zero()) {
                alpha = x;
                break;
            }
        }
        Vector monic = row;
        for (auto& x : monic) {
            x /= alpha;
        }
        gt.forms.push_back(std::move(monic));
        gt.lambdas.push_back(lambda * alpha.pow(d));
    }
    gt.form = expand_powersum(raw, rows, d);
    return gt;
}

Matrix cayley_transform(const Matrix& s)
{
    const Matrix id = Matrix::identity(s.rows());
    return (id - s) * inverse(id + s);
}

Matrix random_orthogonal_rational(std::size_t n, std::uint64_t seed)
{
    Rng rng(seed);
    while (true) {
        Matrix s(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const Scalar v = Scalar::rational(rng.uniform(-3, 3), rng.uniform(1, 3));
                s(i, j) = v;
                s(j, i) = -v;
            }
        }
        Matrix q = cayley_transform(s);
        bool aligned = false;
        for (std::size_t i = 0; i < n && !aligned && n > 1; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                aligned = aligned || q(i, j).is_zero();
            }
        }
        if (!aligned) {
            return q;
        }
    }
}

Form random_dense_form(std::size_t n, unsigned d, std::uint64_t seed, long bound)
{
    Rng rng(seed);
    while (true) {
        Form f(n, d);
        for (const auto& idx : sorted_multi_indices(n, d)) {
            f.add_term(to_exponent(idx, n), Scalar(rng.uniform(-bound, bound)));
        }
        if (!f.is_zero()) {
            return f;
        }
    }
}

Form random_degenerate(std::size_t n, std::size_t r, unsigned d, std::uint64_t seed, Matrix* lin)
{
    Rng rng(seed);
    const Matrix l = random_full_rank(r, n, rng);
    const Form g = random_dense_form(r, d, seed ^ 0x9e3779b97f4a7c15ULL);
    if (lin) {
        *lin = l;
    }
    return substitute(g, l);
}

} // namespace diagform
