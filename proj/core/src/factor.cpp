#include "diagform/factor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "diagform/errors.hpp"

namespace diagform {

namespace {

using Complex = std::complex<long double>;
using CPoly = std::vector<Complex>;

constexpr long double kImagSlack = 1e-7L;
constexpr long double kMaxReliable = 1e15L;
// Candidate budget for the cross-embedding factor search.
constexpr double kSearchBudget = 2.0e5;

Complex horner(const CPoly& c, Complex z)
{
    Complex acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

// Coefficients (constant first) of prod (t - z) over the selected roots.
CPoly expand_roots(const std::vector<Complex>& roots, const std::vector<int>& pick)
{
    CPoly c{Complex(1)};
    for (int i : pick) {
        CPoly next(c.size() + 1, Complex(0));
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= c[k] * roots[static_cast<std::size_t>(i)];
        }
        c = std::move(next);
    }
    return c;
}

std::vector<std::vector<int>> subsets_of_size(const std::vector<int>& pool, int size)
{
    std::vector<std::vector<int>> out;
    const int n = static_cast<int>(pool.size());
    if (size > n || size < 0) {
        return out;
    }
    std::vector<int> idx(static_cast<std::size_t>(size));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        std::vector<int> pick;
        for (int i : idx) {
            pick.push_back(pool[static_cast<std::size_t>(i)]);
        }
        out.push_back(std::move(pick));
        int k = size - 1;
        while (k >= 0 && idx[static_cast<std::size_t>(k)] == n - size + k) {
            --k;
        }
        if (k < 0) {
            break;
        }
        ++idx[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < size; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

double binomial(int n, int k)
{
    double r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

CPoly embed_poly(const UPoly& p, unsigned signs)
{
    CPoly c;
    for (const auto& s : p.coeffs()) {
        c.push_back(s.embed(signs));
    }
    return c;
}

std::optional<mpz_class> round_integer(long double x, bool* reliable)
{
    if (std::fabs(x) > kMaxReliable) {
        if (reliable) {
            *reliable = false;
        }
        return std::nullopt;
    }
    const long double r = std::round(x);
    if (std::fabs(x - r) > 1e-4L * std::max(1.0L, std::fabs(x))) {
        return std::nullopt;
    }
    mpz_class z;
    mpz_set_d(z.get_mpz_t(), static_cast<double>(r));
    return z;
}

// Search for a monic factor of degree `e` of q over the tower. Returns the
// factor, or nothing; `exhausted` is cleared when the candidate space was too
// large to enumerate.
std::optional<UPoly> search_factor(const UPoly& q, int e, const FieldPtr& field, bool* exhausted)
{
    const int deg = q.degree();
    const std::size_t height = field->tower_height();
    const unsigned embeddings = 1u << height;
    if (std::pow(binomial(deg, e), static_cast<double>(embeddings)) > kSearchBudget) {
        *exhausted = false;
        return std::nullopt;
    }

    std::vector<int> all(static_cast<std::size_t>(deg));
    std::iota(all.begin(), all.end(), 0);
    const auto picks = subsets_of_size(all, e);

    // candidate coefficient vectors per embedding and subset
    std::vector<std::vector<CPoly>> cand(embeddings);
    for (unsigned s = 0; s < embeddings; ++s) {
        const auto roots = numeric_roots(embed_poly(q, s));
        for (const auto& pick : picks) {
            cand[s].push_back(expand_roots(roots, pick));
        }
    }

    std::vector<Complex> basis_id(field->dimension());
    for (unsigned mask = 0; mask < field->dimension(); ++mask) {
        basis_id[mask] = field->basis_value(mask, 0);
    }

    std::vector<std::size_t> choice(embeddings, 0);
    while (true) {
        bool ok = true;
        std::vector<Scalar> coeffs;
        for (int j = 0; j < e && ok; ++j) {
            std::vector<mpq_class> coords(field->dimension());
            for (unsigned mask = 0; mask < field->dimension() && ok; ++mask) {
                Complex acc = 0;
                for (unsigned s = 0; s < embeddings; ++s) {
                    const long double chi = (std::popcount(mask & s) & 1) ? -1.0L : 1.0L;
                    acc += chi * cand[s][choice[s]][static_cast<std::size_t>(j)];
                }
                acc /= static_cast<long double>(embeddings);
                acc /= basis_id[mask];
                if (std::fabs(acc.imag()) > 1e-6L * std::max(1.0L, std::abs(acc))) {
                    ok = false;
                    break;
                }
                auto r = recover_rational(acc.real());
                if (!r) {
                    ok = false;
                    break;
                }
                coords[mask] = *r;
            }
            if (ok) {
                coeffs.push_back(Scalar::from_coords(field, std::move(coords)));
            }
        }
        if (ok) {
            coeffs.push_back(Scalar::one(field));
            UPoly h(std::move(coeffs));
            if (divmod(q, h).second.is_zero()) {
                return h;
            }
        }
        std::size_t k = 0;
        while (k < embeddings && ++choice[k] == picks.size()) {
            choice[k] = 0;
            ++k;
        }
        if (k == embeddings) {
            break;
        }
    }
    return std::nullopt;
}

void refine(const UPoly& q, const FieldPtr& field, bool rational_irreducible, bool reliable,
            std::vector<TowerFactor>& out)
{
    const int deg = q.degree();
    if (deg <= 0) {
        return;
    }
    if (deg == 1) {
        out.push_back({q, std::nullopt, true});
        return;
    }
    if (deg == 2) {
        const Scalar b = q.coeff(1);
        const Scalar c = q.coeff(0);
        const Scalar disc = b * b - Scalar(4) * c;
        auto root = try_sqrt(disc, field);
        if (auto* s = std::get_if<Scalar>(&root)) {
            const Scalar half = Scalar::rational(1, 2);
            out.push_back({UPoly::linear((-b + *s) * half), std::nullopt, true});
            out.push_back({UPoly::linear((-b - *s) * half), std::nullopt, true});
        } else {
            out.push_back({q, std::get<NeedsExtension>(root), true});
        }
        return;
    }
    if (field->tower_height() == 0 && rational_irreducible) {
        out.push_back({q, std::nullopt, reliable});
        return;
    }
    bool exhausted = true;
    for (int e = 1; e <= deg / 2; ++e) {
        if (auto h = search_factor(q, e, field, &exhausted)) {
            const UPoly rest = divmod(q, *h).first;
            refine(*h, field, false, reliable, out);
            refine(rest, field, false, reliable, out);
            return;
        }
    }
    out.push_back({q, std::nullopt, exhausted && reliable});
}

} // namespace

std::vector<Complex> numeric_roots(const std::vector<Complex>& coeffs_in)
{
    CPoly c = coeffs_in;
    while (!c.empty() && std::abs(c.back()) == 0.0L) {
        c.pop_back();
    }
    if (c.size() <= 1) {
        return {};
    }
    const std::size_t deg = c.size() - 1;
    const Complex lead = c.back();
    for (auto& x : c) {
        x /= lead;
    }
    using CMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
    CMat comp = CMat::Zero(static_cast<long>(deg), static_cast<long>(deg));
    for (std::size_t i = 1; i < deg; ++i) {
        comp(static_cast<long>(i), static_cast<long>(i - 1)) = 1;
    }
    for (std::size_t i = 0; i < deg; ++i) {
        comp(static_cast<long>(i), static_cast<long>(deg - 1)) = -c[i];
    }
    Eigen::ComplexEigenSolver<CMat> solver(comp, false);
    std::vector<Complex> roots;
    CPoly dc;
    for (std::size_t i = 1; i < c.size(); ++i) {
        dc.push_back(c[i] * static_cast<long double>(i));
    }
    for (long i = 0; i < static_cast<long>(deg); ++i) {
        Complex z = solver.eigenvalues()(i);
        for (int it = 0; it < 4; ++it) {
            const Complex d = horner(dc, z);
            if (std::abs(d) == 0.0L) {
                break;
            }
            const Complex step = horner(c, z) / d;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                break;
            }
            z -= step;
        }
        roots.push_back(z);
    }
    return roots;
}

std::optional<mpq_class> recover_rational(long double x, long max_denominator, long double tolerance)
{
    if (!std::isfinite(x) || std::fabs(x) > kMaxReliable) {
        return std::nullopt;
    }
    // convergents h/k of the continued fraction of x
    long double rem = x;
    mpz_class h_prev = 1, h = 0, k_prev = 0, k = 1;
    for (int iter = 0; iter < 64; ++iter) {
        const long double a_ld = std::floor(rem);
        mpz_class a;
        mpz_set_d(a.get_mpz_t(), static_cast<double>(a_ld));
        mpz_class h_next = a * h_prev + h;
        mpz_class k_next = a * k_prev + k;
        h = h_prev;
        k = k_prev;
        h_prev = h_next;
        k_prev = k_next;
        if (k_prev > max_denominator) {
            break;
        }
        mpq_class cand(h_prev, k_prev);
        cand.canonicalize();
        if (std::fabs(static_cast<long double>(cand.get_d()) - x) <= tolerance * std::max(1.0L, std::fabs(x))) {
            return cand;
        }
        const long double frac = rem - a_ld;
        if (frac < 1e-18L) {
            break;
        }
        rem = 1.0L / frac;
    }
    return std::nullopt;
}

std::vector<UPoly> factor_rational(const UPoly& p_in, bool* reliable)
{
    if (reliable) {
        *reliable = true;
    }
    if (!p_in.is_rational()) {
        throw FieldError("factor_rational needs rational coefficients");
    }
    UPoly q = p_in.monic();
    if (q.degree() <= 0) {
        return {};
    }
    if (q.degree() == 1) {
        return {q};
    }
    // leading coefficient of the primitive integer multiple of q
    mpz_class lcm_den = 1;
    for (const auto& c : q.coeffs()) {
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.to_rational().get_den_mpz_t());
    }
    mpz_class content = 0;
    for (const auto& c : q.coeffs()) {
        mpq_class scaled = c.to_rational() * lcm_den;
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_num_mpz_t());
    }
    const mpz_class lead = lcm_den / content;
    const long double lead_ld = static_cast<long double>(lead.get_d());

    std::vector<Complex> roots = numeric_roots(embed_poly(q, 0));
    std::vector<int> remaining(roots.size());
    std::iota(remaining.begin(), remaining.end(), 0);

    std::vector<UPoly> factors;
    int size = 1;
    while (2 * size <= q.degree()) {
        bool found = false;
        for (const auto& pick : subsets_of_size(remaining, size)) {
            const CPoly cand = expand_roots(roots, pick);
            bool ok = true;
            std::vector<Scalar> coeffs;
            for (std::size_t j = 0; j + 1 < cand.size(); ++j) {
                if (std::fabs(cand[j].imag()) > kImagSlack * std::max(1.0L, std::abs(cand[j]))) {
                    ok = false;
                    break;
                }
                auto z = round_integer(cand[j].real() * lead_ld, reliable);
                if (!z) {
                    ok = false;
                    break;
                }
                mpq_class c(*z, lead);
                c.canonicalize();
                coeffs.emplace_back(c);
            }
            if (!ok) {
                continue;
            }
            coeffs.emplace_back(1L);
            UPoly h(std::move(coeffs));
            auto [quot, rem] = divmod(q, h);
            if (!rem.is_zero()) {
                continue;
            }
            factors.push_back(h);
            q = quot;
            std::vector<int> rest;
            for (int i : remaining) {
                if (std::find(pick.begin(), pick.end(), i) == pick.end()) {
                    rest.push_back(i);
                }
            }
            remaining = std::move(rest);
            found = true;
            break;
        }
        if (!found) {
            ++size;
        }
    }
    if (q.degree() >= 1) {
        factors.push_back(q);
    }
    return factors;
}

std::vector<TowerFactor> factor_over_field(const UPoly& p, const FieldPtr& field)
{
    if (!field->exact()) {
        throw FieldError("factor_over_field needs an exact field");
    }
    std::vector<TowerFactor> out;
    const UPoly q = p.monic();
    if (q.is_rational()) {
        bool reliable = true;
        for (const auto& piece : factor_rational(q, &reliable)) {
            std::vector<Scalar> lifted;
            for (const auto& c : piece.coeffs()) {
                lifted.push_back(c.lift(field));
            }
            refine(UPoly(std::move(lifted)), field, true, reliable, out);
        }
    } else {
        refine(q, field, false, true, out);
    }
    return out;
}

} // namespace diagform
