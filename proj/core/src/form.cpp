#include "diagform/form.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "diagform/errors.hpp"

namespace diagform {

MultiIndex to_multi_index(const Exponent& e)
{
    MultiIndex idx;
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (int k = 0; k < e[i]; ++k) {
            idx.push_back(static_cast<int>(i));
        }
    }
    return idx;
}

Exponent to_exponent(const MultiIndex& idx, std::size_t n)
{
    Exponent e(n, 0);
    for (int i : idx) {
        if (i < 0 || static_cast<std::size_t>(i) >= n) {
            throw IndexOutOfRange("variable index " + std::to_string(i + 1) + " out of range");
        }
        ++e[static_cast<std::size_t>(i)];
    }
    return e;
}

mpz_class multinomial(const Exponent& e)
{
    const unsigned long d = static_cast<unsigned long>(std::accumulate(e.begin(), e.end(), 0));
    mpz_class num;
    mpz_fac_ui(num.get_mpz_t(), d);
    for (int k : e) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
        num /= f;
    }
    return num;
}

std::vector<MultiIndex> sorted_multi_indices(std::size_t n, unsigned d)
{
    std::vector<MultiIndex> out;
    if (n == 0) {
        if (d == 0) {
            out.emplace_back();
        }
        return out;
    }
    MultiIndex idx(d, 0);
    while (true) {
        out.push_back(idx);
        int k = static_cast<int>(d) - 1;
        while (k >= 0 && idx[static_cast<std::size_t>(k)] == static_cast<int>(n) - 1) {
            --k;
        }
        if (k < 0) {
            break;
        }
        const int v = idx[static_cast<std::size_t>(k)] + 1;
        for (std::size_t j = static_cast<std::size_t>(k); j < d; ++j) {
            idx[j] = v;
        }
    }
    return out;
}

// ----------------------------------------------------------------------- Form

Form::Form(std::size_t nvars, unsigned degree) : nvars_(nvars), degree_(degree) {}

Form::Form(std::size_t nvars, unsigned degree, const Terms& terms) : Form(nvars, degree)
{
    for (const auto& [e, c] : terms) {
        add_term(e, c);
    }
}

Scalar Form::coeff(const Exponent& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar() : it->second;
}

void Form::add_term(const Exponent& e, const Scalar& c)
{
    if (e.size() != nvars_) {
        throw DimensionMismatch("exponent vector has the wrong length");
    }
    if (std::any_of(e.begin(), e.end(), [](int k) { return k < 0; }) ||
        static_cast<unsigned>(std::accumulate(e.begin(), e.end(), 0)) != degree_) {
        throw NotHomogeneous("monomial degree differs from " + std::to_string(degree_));
    }
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (!c.is_zero()) {
            terms_.emplace(e, c);
        }
        return;
    }
    it->second += c;
    if (it->second.is_zero()) {
        terms_.erase(it);
    }
}

Scalar Form::evaluate(const Vector& point) const
{
    if (point.size() != nvars_) {
        throw DimensionMismatch("evaluation point has the wrong length");
    }
    Scalar acc;
    for (const auto& [e, c] : terms_) {
        Scalar t = c;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i]) {
                t *= point[i].pow(static_cast<unsigned>(e[i]));
            }
        }
        acc += t;
    }
    return acc;
}

double Form::max_magnitude() const
{
    double m = 0;
    for (const auto& [e, c] : terms_) {
        m = std::max(m, c.magnitude());
    }
    return m;
}

std::string Form::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    for (const auto& [e, c] : terms_) {
        std::string mono;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (!e[i]) {
                continue;
            }
            if (!mono.empty()) {
                mono += "*";
            }
            mono += "x" + std::to_string(i + 1);
            if (e[i] > 1) {
                mono += "^" + std::to_string(e[i]);
            }
        }
        std::string term;
        std::string cs = c.to_string();
        if (c.is_compound()) {
            cs = "(" + cs + ")";
        }
        if (mono.empty()) {
            term = cs;
        } else if (c.is_one()) {
            term = mono;
        } else if ((-c).is_one()) {
            term = "-" + mono;
        } else {
            term = cs + "*" + mono;
        }
        if (!out.empty() && term[0] != '-') {
            out += "+";
        }
        out += term;
    }
    return out;
}

Form& Form::operator+=(const Form& rhs)
{
    if (rhs.nvars_ != nvars_ || rhs.degree_ != degree_) {
        throw DimensionMismatch("form sum needs equal variable counts and degrees");
    }
    for (const auto& [e, c] : rhs.terms_) {
        add_term(e, c);
    }
    return *this;
}

Form& Form::operator-=(const Form& rhs)
{
    if (rhs.nvars_ != nvars_ || rhs.degree_ != degree_) {
        throw DimensionMismatch("form difference needs equal variable counts and degrees");
    }
    for (const auto& [e, c] : rhs.terms_) {
        add_term(e, -c);
    }
    return *this;
}

Form operator*(const Form& a, const Form& b)
{
    if (a.nvars_ != b.nvars_) {
        throw DimensionMismatch("form product needs equal variable counts");
    }
    Form out(a.nvars_, a.degree_ + b.degree_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
            }
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Form operator*(const Scalar& c, const Form& a)
{
    Form out(a.nvars_, a.degree_);
    for (const auto& [e, x] : a.terms_) {
        out.add_term(e, c * x);
    }
    return out;
}

bool operator==(const Form& a, const Form& b)
{
    if (a.nvars_ != b.nvars_ || a.degree_ != b.degree_) {
        return false;
    }
    return (a - b).is_zero();
}

Form linear_form(const Vector& coeffs)
{
    Form l(coeffs.size(), 1);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        Exponent e(coeffs.size(), 0);
        e[j] = 1;
        l.add_term(e, coeffs[j]);
    }
    return l;
}

Form power(const Form& f, unsigned exponent)
{
    Form result(f.nvars(), 0);
    result.add_term(Exponent(f.nvars(), 0), Scalar(1));
    for (unsigned k = 0; k < exponent; ++k) {
        result = result * f;
    }
    return result;
}

Form substitute(const Form& f, const Matrix& m)
{
    if (m.rows() != f.nvars()) {
        throw DimensionMismatch("substitution matrix needs one row per variable");
    }
    // powers[i][k] = (row_i . y)^k
    std::vector<std::vector<Form>> powers(f.nvars());
    for (std::size_t i = 0; i < f.nvars(); ++i) {
        const Form l = linear_form(m.row(i));
        Form acc(m.cols(), 0);
        acc.add_term(Exponent(m.cols(), 0), Scalar(1));
        powers[i].push_back(acc);
        for (unsigned k = 1; k <= f.degree(); ++k) {
            acc = acc * l;
            powers[i].push_back(acc);
        }
    }
    Form out(m.cols(), f.degree());
    for (const auto& [e, c] : f.terms()) {
        Form t(m.cols(), 0);
        t.add_term(Exponent(m.cols(), 0), c);
        for (std::size_t i = 0; i < f.nvars(); ++i) {
            if (e[i]) {
                t = t * powers[i][static_cast<std::size_t>(e[i])];
            }
        }
        out += t;
    }
    return out;
}

// ------------------------------------------------------------------ SymTensor

SymTensor::SymTensor(std::size_t dim, unsigned order) : dim_(dim), order_(order) {}

void SymTensor::check_index(const MultiIndex& idx) const
{
    if (idx.size() != order_) {
        throw DimensionMismatch("multi-index length differs from tensor order");
    }
    for (int i : idx) {
        if (i < 0 || static_cast<std::size_t>(i) >= dim_) {
            throw IndexOutOfRange("tensor index " + std::to_string(i + 1) + " out of range");
        }
    }
}

Scalar SymTensor::get(MultiIndex idx) const
{
    check_index(idx);
    std::sort(idx.begin(), idx.end());
    auto it = entries_.find(idx);
    return it == entries_.end() ? Scalar() : it->second;
}

void SymTensor::set(MultiIndex idx, const Scalar& value)
{
    check_index(idx);
    std::sort(idx.begin(), idx.end());
    if (value.is_zero()) {
        entries_.erase(idx);
    } else {
        entries_[idx] = value;
    }
}

bool SymTensor::is_diagonal() const
{
    for (const auto& [idx, v] : entries_) {
        if (idx.front() != idx.back()) {
            return false;
        }
    }
    return true;
}

SymTensor SymTensor::restrict_to(const std::vector<int>& vars) const
{
    SymTensor out(vars.size(), order_);
    for (const auto& idx : sorted_multi_indices(vars.size(), order_)) {
        MultiIndex orig;
        for (int i : idx) {
            orig.push_back(vars[static_cast<std::size_t>(i)]);
        }
        out.set(idx, get(orig));
    }
    return out;
}

bool operator==(const SymTensor& a, const SymTensor& b)
{
    if (a.dim_ != b.dim_ || a.order_ != b.order_) {
        return false;
    }
    for (const auto& [idx, v] : a.entries_) {
        if (v != b.get(idx)) {
            return false;
        }
    }
    for (const auto& [idx, v] : b.entries_) {
        if (v != a.get(idx)) {
            return false;
        }
    }
    return true;
}

SymTensor gram_tensor(const Form& f)
{
    SymTensor a(f.nvars(), f.degree());
    for (const auto& [e, c] : f.terms()) {
        a.set(to_multi_index(e), c / Scalar(mpq_class(multinomial(e))));
    }
    return a;
}

Form form_from_gram(const SymTensor& a)
{
    Form f(a.dim(), a.order());
    for (const auto& [idx, v] : a.entries()) {
        const Exponent e = to_exponent(idx, a.dim());
        f.add_term(e, v * Scalar(mpq_class(multinomial(e))));
    }
    return f;
}

SymTensor congruence(const SymTensor& a, const Matrix& p)
{
    const std::size_t n = a.dim();
    const unsigned d = a.order();
    if (p.rows() != n) {
        throw DimensionMismatch("congruence matrix needs " + std::to_string(n) + " rows");
    }
    const std::size_t m = p.cols();

    std::vector<std::size_t> dims(d, n);
    std::size_t total = 1;
    for (unsigned k = 0; k < d; ++k) {
        total *= n;
    }
    std::vector<Scalar> dense(total);
    // dense fill, mode 0 most significant
    for (std::size_t flat = 0; flat < total; ++flat) {
        MultiIndex idx(d);
        std::size_t rem = flat;
        for (unsigned k = d; k-- > 0;) {
            idx[k] = static_cast<int>(rem % n);
            rem /= n;
        }
        std::sort(idx.begin(), idx.end());
        auto it = a.entries().find(idx);
        if (it != a.entries().end()) {
            dense[flat] = it->second;
        }
    }

    for (unsigned mode = 0; mode < d; ++mode) {
        std::size_t outer = 1;
        for (unsigned k = 0; k < mode; ++k) {
            outer *= dims[k];
        }
        std::size_t inner = 1;
        for (unsigned k = mode + 1; k < d; ++k) {
            inner *= dims[k];
        }
        const std::size_t len = dims[mode];
        std::vector<Scalar> next(outer * m * inner);
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t i = 0; i < len; ++i) {
                for (std::size_t in = 0; in < inner; ++in) {
                    const Scalar& x = dense[(o * len + i) * inner + in];
                    if (x.is_zero()) {
                        continue;
                    }
                    for (std::size_t j = 0; j < m; ++j) {
                        const Scalar& pij = p(i, j);
                        if (pij.is_zero()) {
                            continue;
                        }
                        next[(o * m + j) * inner + in] += x * pij;
                    }
                }
            }
        }
        dense = std::move(next);
        dims[mode] = m;
    }

    SymTensor b(m, d);
    for (const auto& idx : sorted_multi_indices(m, d)) {
        std::size_t flat = 0;
        for (int i : idx) {
            flat = flat * m + static_cast<std::size_t>(i);
        }
        b.set(idx, dense[flat]);
    }
    return b;
}

Matrix slice(const SymTensor& a, const MultiIndex& tail)
{
    if (a.order() < 2 || tail.size() != a.order() - 2) {
        throw DimensionMismatch("slice tail must have length d-2");
    }
    for (int i : tail) {
        if (i < 0 || static_cast<std::size_t>(i) >= a.dim()) {
            throw IndexOutOfRange("slice index " + std::to_string(i + 1) + " out of range");
        }
    }
    const std::size_t n = a.dim();
    Matrix s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            MultiIndex idx = tail;
            idx.push_back(static_cast<int>(i));
            idx.push_back(static_cast<int>(j));
            const Scalar v = a.get(idx);
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    return s;
}

std::vector<Matrix> all_slices(const SymTensor& a)
{
    std::vector<Matrix> out;
    for (const auto& tail : sorted_multi_indices(a.dim(), a.order() - 2)) {
        out.push_back(slice(a, tail));
    }
    return out;
}

Matrix hessian_at(const Form& f, const Vector& p)
{
    const std::size_t n = f.nvars();
    if (p.size() != n) {
        throw DimensionMismatch("hessian point has the wrong length");
    }
    Matrix h(n, n);
    for (const auto& [e, c] : f.terms()) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                Exponent de = e;
                long factor;
                if (i == j) {
                    factor = static_cast<long>(de[i]) * (de[i] - 1);
                    de[i] -= 2;
                } else {
                    factor = static_cast<long>(de[i]) * de[j];
                    de[i] -= 1;
                    de[j] -= 1;
                }
                if (factor == 0) {
                    continue;
                }
                Scalar t = c * Scalar(factor);
                for (std::size_t k = 0; k < n; ++k) {
                    if (de[k]) {
                        t *= p[k].pow(static_cast<unsigned>(de[k]));
                    }
                }
                h(i, j) += t;
                if (i != j) {
                    h(j, i) += t;
                }
            }
        }
    }
    return h;
}

} // namespace diagform
