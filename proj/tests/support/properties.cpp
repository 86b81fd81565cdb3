#include "properties.hpp"

#include <algorithm>
#include <sstream>

#include "diagform/center.hpp"
#include "diagform/errors.hpp"
#include "diagform/harness.hpp"
#include "diagform/rank.hpp"
#include "oracles.hpp"

namespace props {

using namespace diagform;

void Tally::record(bool ok, const std::string& what)
{
    ++trials;
    if (ok) {
        ++passed;
    } else if (first_failure.empty()) {
        first_failure = what;
    }
}

namespace {

std::vector<Vector> scaled_rows(const Matrix& l, const Vector& lambdas)
{
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < l.rows(); ++i) {
        Vector r = l.row(i);
        r.push_back(lambdas[i]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<Vector> scaled_rows(const std::vector<Vector>& forms, const Vector& lambdas)
{
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        Vector r = forms[i];
        r.push_back(lambdas[i]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string label(const char* what, std::uint64_t s)
{
    std::ostringstream os;
    os << what << " seed " << s;
    return os.str();
}

Form odeco_form(std::uint64_t s, std::size_t* n_out = nullptr)
{
    const std::size_t n = 2 + s % 2;
    const unsigned d = 3 + static_cast<unsigned>((s / 2) % 2);
    const Matrix q = random_orthogonal_rational(n, s);
    Rng rng(s ^ 0x9e3779b97f4a7c15ULL);
    Vector lambdas(n);
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i) {
        lambdas[i] = Scalar(rng.nonzero(-4, 4));
        rows.push_back(q.row(i));
    }
    if (n_out) {
        *n_out = n;
    }
    return expand_powersum(lambdas, rows, d);
}

// g(y_1..y_k) + h(y_{k+1}..y_n) pushed through a random invertible change of variables.
Form disguised_sum(std::uint64_t s, std::size_t* first_block)
{
    const std::size_t n = 3 + s % 2;
    const unsigned d = 3 + static_cast<unsigned>((s / 2) % 2);
    const std::size_t k = 2;
    const Form g = random_dense_form(k, d, s);
    const Form h = random_dense_form(n - k, d, s + 7919);
    Form sum(n, d);
    for (const auto& [e, c] : g.terms()) {
        Exponent full(n, 0);
        std::copy(e.begin(), e.end(), full.begin());
        sum.add_term(full, c);
    }
    for (const auto& [e, c] : h.terms()) {
        Exponent full(n, 0);
        std::copy(e.begin(), e.end(), full.begin() + static_cast<long>(k));
        sum.add_term(full, c);
    }
    Rng rng(s * 3 + 1);
    const Matrix m = random_full_rank(n, n, rng, -2, 2);
    *first_block = k;
    return substitute(sum, m);
}

} // namespace

bool blocks_separate(const Form& f, const Decomposition& dec)
{
    std::vector<int> owner(dec.n, -1);
    for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
        for (auto c : dec.blocks[b].columns) {
            owner[c] = static_cast<int>(b);
        }
    }
    const SymTensor t = congruence(gram_tensor(f), dec.P);
    for (const auto& [idx, value] : t.entries()) {
        for (auto i : idx) {
            if (owner[static_cast<std::size_t>(i)] != owner[static_cast<std::size_t>(idx.front())]) {
                return false;
            }
        }
    }
    return true;
}

Tally round_trip(std::size_t trials, std::uint64_t seed)
{
    Tally t;
    for (std::size_t i = 0; i < trials; ++i) {
        const std::size_t n = 1 + i % 4;
        const unsigned d = 3 + static_cast<unsigned>((i / 4) % 2);
        const std::uint64_t s = seed + i;
        const GroundTruth g = random_diagonalizable(n, d, s);
        const Decomposition dec = decompose(g.form, FieldConfig::rationals());
        const bool ok = dec.verdict == Verdict::diagonalizable && verify(dec, g.form) &&
                        oracle::same_rows_up_to_permutation(scaled_rows(dec.L, dec.lambdas),
                                                            scaled_rows(g.forms, g.lambdas));
        t.record(ok, label("round trip", s));
    }
    return t;
}

Tally center_conjugation(std::size_t trials, std::uint64_t seed)
{
    Tally t;
    for (std::size_t i = 0; i < trials; ++i) {
        const std::uint64_t s = seed + i;
        Form f(0, 0);
        if (i % 2 == 0) {
            f = random_diagonalizable(2 + i % 3, 3 + static_cast<unsigned>((i / 2) % 2), s).form;
        } else {
            std::size_t k = 0;
            f = disguised_sum(s, &k);
        }
        const SymTensor a = gram_tensor(f);
        Rng rng(s + 17);
        const Matrix p = random_full_rank(a.dim(), a.dim(), rng);
        const Matrix pinv = inverse(p);
        std::vector<Matrix> moved;
        for (const auto& x : center_basis(a).basis) {
            moved.push_back(pinv * x * p);
        }
        t.record(oracle::spans_equal(center_basis(congruence(a, p)).basis, moved), label("conjugation", s));
    }
    return t;
}

Tally generic_centrality(std::size_t trials, std::uint64_t seed)
{
    Tally t;
    for (std::size_t i = 0; i < trials; ++i) {
        const std::uint64_t s = seed + i;
        const SymTensor a = gram_tensor(random_dense_form(3, 3, s, 9));
        bool ok = false;
        try {
            ok = center_dim(a) == 1;
        } catch (const DegenerateInput&) {
            ok = false;
        }
        t.record(ok, label("centrality", s));
    }
    return t;
}

Tally odeco_positive(std::size_t trials, std::uint64_t seed)
{
    Tally t;
    for (std::size_t i = 0; i < trials; ++i) {
        const std::uint64_t s = seed + i;
        const Form f = odeco_form(s);
        const Decomposition dec = decompose(f, FieldConfig::rationals());
        const bool ok = odeco_precheck(gram_tensor(f)) && dec.verdict == Verdict::diagonalizable &&
                        dec.ortho == Ortho::orthogonal && verify(dec, f);
        t.record(ok, label("odeco", s));
    }
    return t;
}

Tally odeco_perturbed(std::size_t trials, std::uint64_t seed)
{
    Tally t;
    for (std::size_t i = 0; i < trials; ++i) {
        const std::uint64_t s = seed + i;
        std::size_t n = 0;
        const Form f = odeco_form(s, &n);
        SymTensor a = gram_tensor(f);
        const auto keys = sorted_multi_indices(n, f.degree());
        Rng rng(s + 101);
        const MultiIndex key = keys[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(keys.size()) - 1))];
        a.set(key, a.get(key) + Scalar(rng.nonzero(-3, 3)));
        t.record(!odeco_precheck(a), label("perturbed odeco", s));
    }
    return t;
}

Tally rank_law(std::size_t trials, std::uint64_t seed)
{
    Tally t;
    for (std::size_t i = 0; i < trials; ++i) {
        const std::uint64_t s = seed + i;
        const std::size_t n = 2 + i % 3;
        const std::size_t r = 1 + (i / 3) % (n - 1);
        const unsigned d = 3 + static_cast<unsigned>((i / 7) % 2);
        Matrix lin;
        const Form f = random_degenerate(n, r, d, s, &lin);
        const SymTensor a = gram_tensor(f);
        const Reduction red = reduce_nondegenerate(a);
        bool ok = slicing_rank(a) == r && n - radical_basis(a).size() == r && red.r == r &&
                  radical_basis(red.reduced).empty();
        if (ok) {
            const Matrix back = inverse(red.P).block(0, 0, r, n);
            ok = substitute(form_from_gram(red.reduced), back) == f;
        }
        t.record(ok, label("rank law", s));
    }
    return t;
}

Tally seed_uniqueness(std::size_t trials, std::uint64_t seed)
{
    Tally t;
    for (std::size_t i = 0; i < trials; ++i) {
        const std::uint64_t s = seed + i;
        const GroundTruth g = random_diagonalizable(2 + i % 3, 3 + static_cast<unsigned>(i % 2), s);
        DecomposeOptions a;
        a.seed = 1;
        DecomposeOptions b;
        b.seed = 1000 + s;
        const Decomposition da = decompose(g.form, FieldConfig::rationals(), a);
        const Decomposition db = decompose(g.form, FieldConfig::rationals(), b);
        t.record(oracle::same_rows_up_to_permutation(scaled_rows(da.L, da.lambdas), scaled_rows(db.L, db.lambdas)),
                 label("uniqueness", s));
    }
    return t;
}

Tally block_separation(std::size_t trials, std::uint64_t seed)
{
    Tally t;
    for (std::size_t i = 0; i < trials; ++i) {
        const std::uint64_t s = seed + i;
        std::size_t k = 0;
        const Form f = disguised_sum(s, &k);
        const Decomposition dec = decompose(f, FieldConfig::rationals());
        const bool split = dec.verdict == Verdict::direct_sum || dec.verdict == Verdict::diagonalizable;
        t.record(split && dec.blocks.size() >= 2 && blocks_separate(f, dec) && verify(dec, f),
                 label("block separation", s));
    }
    return t;
}

Tally generic_verdict(std::size_t trials, std::uint64_t seed)
{
    Tally t;
    for (std::size_t i = 0; i < trials; ++i) {
        const std::uint64_t s = seed + i;
        const Form f = random_dense_form(3 + i % 2, 3 + static_cast<unsigned>((i / 2) % 2), s, 9);
        const Decomposition dec = decompose(f, FieldConfig::rationals());
        t.record(dec.verdict == Verdict::central_indecomposable && dec.center_dim == 1, label("generic verdict", s));
    }
    return t;
}

} // namespace props
