#include "diagform/idem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "diagform/errors.hpp"

namespace diagform {

UPoly min_poly(const Matrix& x)
{
    if (!x.square()) {
        throw NotSquare("minimal polynomial of a non-square matrix");
    }
    const std::size_t n = x.rows();
    std::vector<Vector> powers;
    Matrix p = Matrix::identity(n);
    for (std::size_t k = 0; k <= n; ++k) {
        powers.push_back(p.vectorize());
        const auto kernel = nullspace(Matrix::from_columns(powers, n * n));
        if (!kernel.empty()) {
            Vector c = kernel.front();
            const Scalar lead = c.back();
            for (auto& v : c) {
                v /= lead;
            }
            return UPoly(std::move(c));
        }
        p = p * x;
    }
    throw Error("no annihilating polynomial of degree <= n");
}

namespace {

struct Component {
    UPoly poly;
    unsigned multiplicity = 1;
    std::optional<NeedsExtension> extension;
    bool proven_irreducible = true;
};

Matrix random_element(const CenterBasis& z, std::mt19937_64& rng)
{
    Matrix r(z.n, z.n);
    for (const auto& b : z.basis) {
        const long c = static_cast<long>(rng() % 11) - 5;
        if (c != 0) {
            r += Scalar(c) * b;
        }
    }
    return r;
}

std::size_t component_dimension(const CenterBasis& z, const Matrix& eps)
{
    std::vector<Vector> images;
    for (const auto& b : z.basis) {
        images.push_back((eps * b).vectorize());
    }
    return rank_of(images);
}

unsigned multiplicity_in(const UPoly& mu, const UPoly& g)
{
    unsigned e = 0;
    UPoly q = mu;
    while (q.degree() >= g.degree()) {
        auto [quot, rem] = divmod(q, g);
        if (!rem.is_zero()) {
            break;
        }
        q = quot;
        ++e;
    }
    return e;
}

// Builds the idempotents for mu = prod g_j^{e_j} evaluated at r.
IdempotentSplit assemble(const CenterBasis& z, const Matrix& r, const UPoly& mu, std::vector<Component> comps,
                         const FieldPtr& field)
{
    IdempotentSplit out;
    out.element = r;
    out.element_min_poly = mu;
    out.field = field;
    std::vector<Matrix> eps;
    std::vector<SplitFactor> factors;
    for (auto& c : comps) {
        const UPoly mu_j = c.poly.pow(c.multiplicity);
        const UPoly cofactor = divmod(mu, mu_j).first;
        const Bezout b = extended_gcd(cofactor, mu_j);
        const UPoly interp = divmod(b.s * cofactor, mu).second;
        Matrix e = evaluate(interp, r);
        SplitFactor f;
        f.poly = c.poly;
        f.multiplicity = c.multiplicity;
        f.component_dim = component_dimension(z, e);
        f.extension = c.extension;
        f.proven_irreducible = c.proven_irreducible;
        if (f.component_dim != static_cast<std::size_t>(c.poly.degree()) * c.multiplicity) {
            out.complete = false;
        }
        if (f.extension) {
            out.extension_requests.push_back(*f.extension);
        }
        if (c.poly.degree() >= 3) {
            out.irreducible_factors.push_back(c.poly);
        }
        eps.push_back(std::move(e));
        factors.push_back(std::move(f));
    }
    std::vector<std::size_t> ranks;
    for (const auto& e : eps) {
        ranks.push_back(rank(e));
    }
    std::vector<std::size_t> order(eps.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ranks[a] < ranks[b]; });
    for (std::size_t k : order) {
        out.idempotents.push_back(eps[k]);
        out.ranks.push_back(ranks[k]);
        out.factors.push_back(factors[k]);
    }
    return out;
}

IdempotentSplit split_exact(const CenterBasis& z, const Matrix& r, FieldPtr& field, int& budget)
{
    const UPoly mu = min_poly(r);
    const UPoly mu_sf = squarefree_part(mu);
    std::vector<TowerFactor> tf;
    while (true) {
        tf = factor_over_field(mu_sf, field);
        bool adjoined = false;
        if (budget > 0) {
            for (const auto& f : tf) {
                if (f.extension && f.extension->radicand) {
                    field = field->adjoin(*f.extension->radicand);
                    --budget;
                    adjoined = true;
                    break;
                }
            }
        }
        if (!adjoined) {
            break;
        }
    }
    std::vector<Component> comps;
    for (const auto& f : tf) {
        comps.push_back({f.poly, multiplicity_in(mu, f.poly), f.extension, f.proven_irreducible});
    }
    IdempotentSplit out = assemble(z, r, mu, std::move(comps), field);
    if (mu_sf.degree() < mu.degree()) {
        out.certificate = SemisimpleCertificate::nilpotent_witness;
        out.nilpotent = evaluate(mu_sf, r);
    }
    return out;
}

// Eigenvalues of r clustered within sqrt(tol) relative to the spectral radius.
IdempotentSplit split_float(const CenterBasis& z, const Matrix& r, const FieldPtr& field)
{
    const std::size_t n = z.n;
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r(i, j).value();
        }
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    const Eigen::VectorXcd ev = solver.eigenvalues();
    double radius = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        radius = std::max(radius, std::abs(ev(i)));
    }
    const double ctol = std::sqrt(field->tolerance()) * (1.0 + radius);

    std::vector<std::complex<double>> centers;
    std::vector<unsigned> counts;
    std::vector<std::complex<double>> sums;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        bool placed = false;
        for (std::size_t c = 0; c < centers.size(); ++c) {
            if (std::abs(ev(i) - centers[c]) <= ctol) {
                sums[c] += ev(i);
                ++counts[c];
                centers[c] = sums[c] / static_cast<double>(counts[c]);
                placed = true;
                break;
            }
        }
        if (!placed) {
            centers.push_back(ev(i));
            sums.push_back(ev(i));
            counts.push_back(1);
        }
    }

    // prod (r - theta_j) vanishes iff r is semisimple.
    Matrix nil = Matrix::identity(n);
    for (const auto& c : centers) {
        nil = nil * (r - Scalar::from_complex(field, c) * Matrix::identity(n));
    }
    double nil_mag = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            nil_mag = std::max(nil_mag, nil(i, j).magnitude());
        }
    }
    const bool semisimple = nil_mag <= ctol * std::pow(1.0 + radius, static_cast<double>(centers.size()));

    std::vector<Component> comps;
    UPoly mu = UPoly::constant(Scalar::one(field));
    for (std::size_t c = 0; c < centers.size(); ++c) {
        Component comp;
        comp.poly = UPoly::linear(Scalar::from_complex(field, centers[c]));
        comp.multiplicity = semisimple ? 1 : counts[c];
        mu = mu * comp.poly.pow(comp.multiplicity);
        comps.push_back(std::move(comp));
    }
    IdempotentSplit out = assemble(z, r, mu, std::move(comps), field);
    if (!semisimple) {
        out.certificate = SemisimpleCertificate::nilpotent_witness;
        out.nilpotent = nil;
    }
    return out;
}

IdempotentSplit trivial_split(const CenterBasis& z, const FieldPtr& field)
{
    IdempotentSplit out;
    out.idempotents.push_back(Matrix::identity(z.n));
    out.ranks.push_back(z.n);
    SplitFactor f;
    f.poly = UPoly::linear(Scalar::one(field));
    f.component_dim = z.dim();
    out.factors.push_back(f);
    out.element = Matrix::identity(z.n);
    out.element_min_poly = f.poly;
    out.field = field;
    out.complete = z.dim() == 1;
    return out;
}

} // namespace

IdempotentSplit split_idempotents(const CenterBasis& z, const FieldConfig& cfg, int retries, std::uint64_t seed)
{
    FieldPtr field = Field::make(cfg);
    for (const auto& b : z.basis) {
        for (std::size_t i = 0; i < z.n; ++i) {
            for (std::size_t j = 0; j < z.n; ++j) {
                field = common_field(field, b(i, j).field());
            }
        }
    }
    if (z.dim() <= 1) {
        return trivial_split(z, field);
    }

    std::mt19937_64 rng(seed);
    int budget = cfg.max_adjoin;
    std::optional<IdempotentSplit> best;
    std::optional<Matrix> witness;
    const int attempts = std::max(1, retries);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        const Matrix r = random_element(z, rng);
        const FieldPtr before = field;
        IdempotentSplit cand = field->exact() ? split_exact(z, r, field, budget) : split_float(z, r, field);
        if (cand.nilpotent && !witness) {
            witness = cand.nilpotent;
        }
        if (field != before) {
            best.reset();
        }
        if (!best || cand.idempotents.size() > best->idempotents.size() || (cand.complete && !best->complete)) {
            best = std::move(cand);
        }
        if (best->complete) {
            break;
        }
    }
    if (witness && !best->nilpotent) {
        best->certificate = SemisimpleCertificate::nilpotent_witness;
        best->nilpotent = witness;
    }
    best->field = field;
    return *best;
}

bool is_rank1_trace1(const Matrix& e)
{
    return e.square() && rank(e) == 1 && e.trace().is_one();
}

std::vector<std::vector<Vector>> mult_table(const CenterBasis& z)
{
    std::vector<std::vector<Vector>> table(z.dim(), std::vector<Vector>(z.dim()));
    for (std::size_t i = 0; i < z.dim(); ++i) {
        for (std::size_t j = 0; j < z.dim(); ++j) {
            auto c = coordinates_in(z.basis, z.basis[i] * z.basis[j]);
            if (!c) {
                throw NotClosed("product of basis elements " + std::to_string(i + 1) + " and " +
                                std::to_string(j + 1) + " leaves the span");
            }
            table[i][j] = std::move(*c);
        }
    }
    return table;
}

UPoly canonical_quadratic(long d)
{
    if (((d % 4) + 4) % 4 == 1) {
        return UPoly({Scalar::rational(1 - d, 4), Scalar(-1), Scalar(1)});
    }
    return UPoly({Scalar(-d), Scalar(0), Scalar(1)});
}

const char* to_string(AlgebraFactor::Kind kind)
{
    switch (kind) {
    case AlgebraFactor::Kind::ground:
        return "ground";
    case AlgebraFactor::Kind::quadratic:
        return "quadratic";
    case AlgebraFactor::Kind::higher:
        return "higher";
    case AlgebraFactor::Kind::local_nonsemisimple:
        return "local_nonsemisimple";
    case AlgebraFactor::Kind::unresolved:
        return "unresolved";
    }
    return "unknown";
}

std::string AlgebraFactor::to_string(const std::string& ground) const
{
    switch (kind) {
    case Kind::ground:
        return ground;
    case Kind::quadratic:
    case Kind::higher:
        return ground + "[t]/(" + poly.to_string() + ")";
    case Kind::local_nonsemisimple:
        return ground + "[t]/((" + poly.to_string() + ")^" + std::to_string(nilpotency) + ")";
    case Kind::unresolved:
        return "unresolved(dim " + std::to_string(dim) + ")";
    }
    return "?";
}

std::string AlgebraDescription::to_string() const
{
    std::string out;
    for (const auto& f : factors) {
        if (!out.empty()) {
            out += " x ";
        }
        out += f.to_string(ground);
    }
    return out;
}

bool AlgebraDescription::split() const
{
    return std::all_of(factors.begin(), factors.end(),
                       [](const AlgebraFactor& f) { return f.kind == AlgebraFactor::Kind::ground; });
}

AlgebraDescription classify_algebra(const CenterBasis& z, const IdempotentSplit& split)
{
    (void)z;
    AlgebraDescription desc;
    desc.ground = split.field ? split.field->describe() : "Q";
    for (const auto& f : split.factors) {
        AlgebraFactor a;
        a.dim = f.component_dim;
        a.poly = f.poly;
        a.nilpotency = f.multiplicity;
        const auto deg = static_cast<std::size_t>(f.poly.degree());
        if (f.component_dim != deg * f.multiplicity) {
            a.kind = AlgebraFactor::Kind::unresolved;
        } else if (f.multiplicity > 1) {
            a.kind = AlgebraFactor::Kind::local_nonsemisimple;
        } else if (deg == 1) {
            a.kind = AlgebraFactor::Kind::ground;
        } else if (deg == 2) {
            a.kind = AlgebraFactor::Kind::quadratic;
            if (f.extension && f.extension->radicand) {
                a.discriminant = *f.extension->radicand;
                a.poly = canonical_quadratic(*a.discriminant);
            }
        } else {
            a.kind = AlgebraFactor::Kind::higher;
        }
        desc.factors.push_back(std::move(a));
    }
    return desc;
}

} // namespace diagform
