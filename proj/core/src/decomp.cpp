#include "diagform/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "diagform/center.hpp"
#include "diagform/errors.hpp"
#include "diagform/rank.hpp"

namespace diagform {

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::diagonalizable:
        return "diagonalizable";
    case Verdict::direct_sum:
        return "direct_sum";
    case Verdict::indecomposable:
        return "indecomposable";
    case Verdict::central_indecomposable:
        return "central_indecomposable";
    case Verdict::undecided_with_certificate:
        return "undecided_with_certificate";
    }
    return "unknown";
}

const char* to_string(Ortho o)
{
    switch (o) {
    case Ortho::orthogonal:
        return "orthogonal";
    case Ortho::unitary:
        return "unitary";
    case Ortho::neither:
        return "neither";
    case Ortho::not_applicable:
        return "not_applicable";
    }
    return "unknown";
}

namespace {

struct Leaf {
    Matrix q; // columns in the coordinates of the tensor handed to `split`
    SymTensor tensor{0, 0};
    std::size_t center_dim = 1;
    AlgebraDescription algebra;
    bool resolved = true;
};

struct Context {
    FieldPtr field;
    int budget = 0;
    DecomposeOptions options;
    std::uint64_t calls = 0;
    std::optional<std::size_t> top_center_dim;
    std::optional<Matrix> nilpotent;
    std::vector<NeedsExtension> extensions;
    std::vector<UPoly> irreducible;
    std::vector<std::string> notes;
};

FieldConfig config_for(const Context& ctx)
{
    FieldConfig cfg = ctx.field->config();
    cfg.max_adjoin = ctx.budget;
    return cfg;
}

// Which block a variable index belongs to.
std::vector<std::size_t> block_of(const std::vector<std::size_t>& sizes)
{
    std::vector<std::size_t> owner;
    for (std::size_t b = 0; b < sizes.size(); ++b) {
        owner.insert(owner.end(), sizes[b], b);
    }
    return owner;
}

void split(const SymTensor& t, Context& ctx, std::vector<Leaf>& leaves, const Matrix& to_parent)
{
    const std::size_t k = t.dim();
    if (k == 1) {
        Leaf leaf;
        leaf.q = to_parent;
        leaf.tensor = t;
        AlgebraFactor g;
        leaf.algebra.factors.push_back(g);
        leaves.push_back(std::move(leaf));
        return;
    }
    const CenterBasis z = center_basis(t);
    if (!ctx.top_center_dim) {
        ctx.top_center_dim = z.dim();
    }
    const std::size_t height_before = ctx.field->tower_height();
    IdempotentSplit s = split_idempotents(z, config_for(ctx), ctx.options.retries, ctx.options.seed + ctx.calls++);
    if (s.field->tower_height() > height_before) {
        ctx.budget -= static_cast<int>(s.field->tower_height() - height_before);
        for (std::size_t i = height_before; i < s.field->tower_height(); ++i) {
            ctx.notes.push_back("adjoined sqrt(" + std::to_string(s.field->radicands()[i]) + ")");
        }
    }
    ctx.field = common_field(ctx.field, s.field);
    if (s.nilpotent && !ctx.nilpotent) {
        ctx.nilpotent = s.nilpotent;
    }

    if (s.idempotents.size() == 1) {
        Leaf leaf;
        leaf.q = to_parent;
        leaf.tensor = t;
        leaf.center_dim = z.dim();
        leaf.algebra = classify_algebra(z, s);
        for (const auto& f : leaf.algebra.factors) {
            if (f.kind == AlgebraFactor::Kind::unresolved) {
                leaf.resolved = false;
            }
        }
        for (const auto& f : s.factors) {
            if (!f.proven_irreducible) {
                leaf.resolved = false;
                ctx.notes.push_back("factor " + f.poly.to_string() + " was not proven irreducible");
            }
        }
        ctx.extensions.insert(ctx.extensions.end(), s.extension_requests.begin(), s.extension_requests.end());
        ctx.irreducible.insert(ctx.irreducible.end(), s.irreducible_factors.begin(), s.irreducible_factors.end());
        leaves.push_back(std::move(leaf));
        return;
    }

    std::vector<Vector> columns;
    std::vector<std::size_t> sizes;
    for (const auto& e : s.idempotents) {
        const auto picked = independent_columns(e);
        for (std::size_t c : picked) {
            columns.push_back(e.column(c));
        }
        sizes.push_back(picked.size());
    }
    const Matrix p = Matrix::from_columns(columns, k);
    const SymTensor b = congruence(t, p);
    const auto owner = block_of(sizes);
    for (const auto& [idx, v] : b.entries()) {
        const std::size_t first = owner[static_cast<std::size_t>(idx.front())];
        const bool crosses = std::any_of(idx.begin(), idx.end(), [&](int i) {
            return owner[static_cast<std::size_t>(i)] != first;
        });
        if (crosses) {
            throw Error("idempotent split left a cross-block entry " + v.to_string());
        }
    }

    std::size_t offset = 0;
    for (std::size_t blk = 0; blk < sizes.size(); ++blk) {
        std::vector<int> vars(sizes[blk]);
        std::iota(vars.begin(), vars.end(), static_cast<int>(offset));
        const Matrix sub_p = to_parent * p.block(0, offset, k, sizes[blk]);
        split(b.restrict_to(vars), ctx, leaves, sub_p);
        offset += sizes[blk];
    }
}

Vector normalize_monic(const Vector& row, Scalar* alpha)
{
    Vector out = row;
    for (const auto& x : row) {
        if (!x.is_zero()) {
            *alpha = x;
            const Scalar inv = x.inv();
            for (auto& y : out) {
                y *= inv;
            }
            return out;
        }
    }
    *alpha = Scalar(1);
    return out;
}

Matrix gram_of(const Matrix& l, bool hermitian)
{
    return l * (hermitian ? l.conj_transpose() : l.transpose());
}

Form expansion(const Decomposition& dec)
{
    Form acc(dec.n, dec.degree);
    if (dec.verdict == Verdict::diagonalizable) {
        for (std::size_t i = 0; i < dec.L.rows(); ++i) {
            acc += dec.lambdas[i] * power(linear_form(dec.L.row(i)), dec.degree);
        }
        return acc;
    }
    for (const auto& b : dec.blocks) {
        acc += b.x_form;
    }
    return acc;
}

} // namespace

Decomposition decompose(const Form& f, const FieldConfig& cfg, const DecomposeOptions& options)
{
    if (f.degree() < 3) {
        throw DegreeTooLow("degree " + std::to_string(f.degree()) + " is below 3");
    }
    cfg.validate();
    Context ctx;
    ctx.options = options;
    ctx.field = Field::make(cfg);
    for (const auto& [e, c] : f.terms()) {
        ctx.field = common_field(ctx.field, c.field());
    }
    ctx.budget = cfg.max_adjoin;

    Decomposition dec;
    dec.n = f.nvars();
    dec.degree = f.degree();

    const SymTensor a = gram_tensor(f);
    const Reduction red = reduce_nondegenerate(a);
    dec.rank = red.r;

    std::vector<Leaf> leaves;
    if (red.r > 0) {
        split(red.reduced, ctx, leaves, Matrix::identity(red.r));
        dec.center_dim = ctx.top_center_dim.value_or(1);
    }
    dec.field = ctx.field;

    // P = P_red * blockdiag(leaf bases, identity on the radical).
    std::vector<Vector> columns;
    for (auto& leaf : leaves) {
        Block blk;
        for (std::size_t j = 0; j < leaf.q.cols(); ++j) {
            Vector col(dec.n);
            for (std::size_t i = 0; i < dec.n; ++i) {
                for (std::size_t m = 0; m < red.r; ++m) {
                    col[i] += red.P(i, m) * leaf.q(m, j);
                }
            }
            blk.columns.push_back(columns.size());
            columns.push_back(std::move(col));
        }
        blk.form = form_from_gram(leaf.tensor);
        blk.center_dim = leaf.center_dim;
        blk.center_algebra = leaf.algebra;
        blk.center_algebra.ground = ctx.field->describe();
        blk.resolved = leaf.resolved;
        dec.blocks.push_back(std::move(blk));
    }
    for (std::size_t j = red.r; j < dec.n; ++j) {
        columns.push_back(red.P.column(j));
    }
    dec.P = Matrix::from_columns(columns, dec.n);
    const Matrix p_inv = inverse(dec.P);

    dec.center_algebra.ground = ctx.field->describe();
    std::vector<Vector> l_rows;
    for (auto& blk : dec.blocks) {
        Matrix rows(blk.columns.size(), dec.n);
        for (std::size_t i = 0; i < blk.columns.size(); ++i) {
            for (std::size_t j = 0; j < dec.n; ++j) {
                rows(i, j) = p_inv(blk.columns[i], j);
            }
        }
        blk.x_form = substitute(blk.form, rows);
        for (const auto& fac : blk.center_algebra.factors) {
            dec.center_algebra.factors.push_back(fac);
        }
        if (blk.columns.size() == 1) {
            Scalar alpha;
            Vector l = normalize_monic(rows.row(0), &alpha);
            const Scalar c = blk.form.terms().empty() ? Scalar() : blk.form.terms().begin()->second;
            dec.lambdas.push_back(c * alpha.pow(dec.degree));
            l_rows.push_back(std::move(l));
        }
    }
    if (!l_rows.empty()) {
        dec.L = Matrix::from_rows(l_rows);
    } else {
        dec.L = Matrix(0, dec.n);
    }

    const bool unresolved = std::any_of(dec.blocks.begin(), dec.blocks.end(), [](const Block& b) { return !b.resolved; });
    const bool all_linear =
        std::all_of(dec.blocks.begin(), dec.blocks.end(), [](const Block& b) { return b.columns.size() == 1; });
    if (unresolved) {
        dec.verdict = Verdict::undecided_with_certificate;
    } else if (all_linear) {
        dec.verdict = Verdict::diagonalizable;
    } else if (dec.blocks.size() >= 2) {
        dec.verdict = Verdict::direct_sum;
    } else if (dec.blocks.front().center_dim == 1) {
        dec.verdict = Verdict::central_indecomposable;
    } else {
        dec.verdict = Verdict::indecomposable;
    }

    dec.nilpotent_witness = ctx.nilpotent;
    dec.extension_requests = ctx.extensions;
    dec.irreducible_factors = ctx.irreducible;
    dec.certificates = ctx.notes;
    if (dec.rank < dec.n) {
        dec.certificates.push_back("degenerate: " + std::to_string(dec.n - dec.rank) +
                                   " variables removed by the radical");
    }
    if (dec.nilpotent_witness) {
        dec.certificates.push_back("nilpotent center element " + dec.nilpotent_witness->to_string() +
                                   ": the center is not semisimple");
    }
    for (const auto& e : dec.extension_requests) {
        dec.certificates.push_back("quadratic center factor splits only after adjoining " + e.to_string());
    }
    for (const auto& g : dec.irreducible_factors) {
        dec.certificates.push_back("irreducible center factor " + g.to_string() + " of degree " +
                                   std::to_string(g.degree()) +
                                   ": linear and quadratic steps cannot split it");
    }
    if (dec.verdict != Verdict::diagonalizable && dec.center_dim < dec.rank) {
        dec.certificates.push_back("center dimension " + std::to_string(dec.center_dim) + " < " +
                                   std::to_string(dec.rank) + ": not diagonalizable over any extension");
    }
    if (dec.rank > 0) {
        dec.certificates.push_back("center: " + dec.center_algebra.to_string());
    }

    if (dec.verdict == Verdict::diagonalizable && dec.rank == dec.n && dec.n > 0) {
        dec.ortho = ortho_check(dec.L);
        if (dec.ortho == Ortho::orthogonal || dec.ortho == Ortho::unitary) {
            std::vector<NeedsExtension> missing;
            dec.scaling_in_field = scaling_in_field(dec.L, dec.ortho, dec.field, &missing);
            for (const auto& m : missing) {
                dec.certificates.push_back("row scaling needs " + m.to_string());
            }
        }
    }
    // Equal factors in several blocks yield the same text; keep the first.
    std::vector<std::string> unique;
    for (auto& c : dec.certificates) {
        if (std::find(unique.begin(), unique.end(), c) == unique.end()) {
            unique.push_back(std::move(c));
        }
    }
    dec.certificates = std::move(unique);
    return dec;
}

double residual(const Decomposition& dec, const Form& f)
{
    const Form diff = expansion(dec) - f;
    return diff.max_magnitude() / std::max(1.0, f.max_magnitude());
}

bool verify(const Decomposition& dec, const Form& f)
{
    if (dec.n != f.nvars() || dec.degree != f.degree()) {
        return false;
    }
    if (dec.verdict == Verdict::diagonalizable && dec.lambdas.size() != dec.L.rows()) {
        return false;
    }
    const Form diff = expansion(dec) - f;
    if (!dec.field || dec.field->exact()) {
        return diff.is_zero();
    }
    return diff.max_magnitude() <= dec.field->tolerance() * std::max(1.0, f.max_magnitude());
}

Ortho ortho_check(const Matrix& l)
{
    if (!l.square()) {
        throw NotSquare("orthogonality check needs a square matrix of forms");
    }
    if (gram_of(l, false).is_diagonal()) {
        return Ortho::orthogonal;
    }
    if (gram_of(l, true).is_diagonal()) {
        return Ortho::unitary;
    }
    return Ortho::neither;
}

bool scaling_in_field(const Matrix& l, Ortho kind, const FieldPtr& field, std::vector<NeedsExtension>* missing)
{
    if (kind != Ortho::orthogonal && kind != Ortho::unitary) {
        return false;
    }
    const Matrix g = gram_of(l, kind == Ortho::unitary);
    bool ok = true;
    for (std::size_t i = 0; i < g.rows(); ++i) {
        const SqrtResult r = try_sqrt(g(i, i), field);
        if (const auto* need = std::get_if<NeedsExtension>(&r)) {
            ok = false;
            if (missing) {
                const bool seen = std::any_of(missing->begin(), missing->end(), [&](const NeedsExtension& m) {
                    return m.radicand && need->radicand && *m.radicand == *need->radicand;
                });
                if (!seen) {
                    missing->push_back(*need);
                }
            }
        }
    }
    return ok;
}

bool odeco_precheck(const SymTensor& a)
{
    for (const auto& [idx, v] : a.entries()) {
        if (!v.is_real()) {
            throw NotReal("tensor entry " + v.to_string() + " is not real");
        }
    }
    if (a.order() < 2) {
        return true;
    }
    const auto slices = all_slices(a);
    for (std::size_t i = 0; i < slices.size(); ++i) {
        for (std::size_t j = i + 1; j < slices.size(); ++j) {
            if (slices[i] * slices[j] != slices[j] * slices[i]) {
                return false;
            }
        }
    }
    return true;
}

} // namespace diagform
