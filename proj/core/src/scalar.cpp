#include "diagform/scalar.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "diagform/errors.hpp"

namespace diagform {

namespace {

using Coords = std::vector<mpq_class>;

bool all_zero(const Coords& c)
{
    return std::all_of(c.begin(), c.end(), [](const mpq_class& q) { return sgn(q) == 0; });
}

// Product in the subtower spanned by the first `height` radicands. Both inputs
// have 2^height coordinates.
Coords mul_coords(const Coords& a, const Coords& b, const Field& field)
{
    const std::size_t dim = a.size();
    if (dim == 1) {
        return {a[0] * b[0]};
    }
    Coords out(dim, mpq_class(0));
    mpq_class term;
    for (unsigned i = 0; i < dim; ++i) {
        if (sgn(a[i]) == 0) {
            continue;
        }
        for (unsigned j = 0; j < dim; ++j) {
            if (sgn(b[j]) == 0) {
                continue;
            }
            term = a[i] * b[j];
            term *= field.radicand_product(i & j);
            out[i ^ j] += term;
        }
    }
    return out;
}

Coords low_half(const Coords& x) { return Coords(x.begin(), x.begin() + static_cast<long>(x.size() / 2)); }
Coords high_half(const Coords& x) { return Coords(x.begin() + static_cast<long>(x.size() / 2), x.end()); }

Coords join(Coords lo, const Coords& hi)
{
    lo.insert(lo.end(), hi.begin(), hi.end());
    return lo;
}

Coords sub_coords(Coords a, const Coords& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] -= b[i];
    }
    return a;
}

Coords scale_coords(Coords a, const mpq_class& s)
{
    for (auto& q : a) {
        q *= s;
    }
    return a;
}

// x = a + b*sqrt(m) with m the top radicand; N(x) = a^2 - m b^2 lives one level down.
Coords relative_norm(const Coords& x, const Field& field)
{
    const std::size_t height = std::countr_zero(x.size());
    const mpq_class m(field.radicands()[height - 1]);
    Coords a = low_half(x);
    Coords b = high_half(x);
    return sub_coords(mul_coords(a, a, field), scale_coords(mul_coords(b, b, field), m));
}

Coords inv_coords(const Coords& x, const Field& field)
{
    if (x.size() == 1) {
        if (sgn(x[0]) == 0) {
            throw DivisionByZero();
        }
        return {1 / x[0]};
    }
    Coords n_inv = inv_coords(relative_norm(x, field), field);
    Coords lo = mul_coords(low_half(x), n_inv, field);
    Coords hi = scale_coords(mul_coords(high_half(x), n_inv, field), mpq_class(-1));
    return join(std::move(lo), hi);
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q)
{
    if (sgn(q) < 0) {
        return std::nullopt;
    }
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
        return std::nullopt;
    }
    mpq_class r(sqrt(num), sqrt(den));
    r.canonicalize();
    return r;
}

std::optional<Coords> sqrt_coords(const Coords& x, const Field& field)
{
    if (x.size() == 1) {
        auto r = rational_sqrt(x[0]);
        if (!r) {
            return std::nullopt;
        }
        return Coords{*r};
    }
    const std::size_t height = std::countr_zero(x.size());
    const mpq_class m(field.radicands()[height - 1]);
    Coords a = low_half(x);
    Coords b = high_half(x);
    const Coords zero(a.size(), mpq_class(0));
    if (all_zero(b)) {
        if (auto r = sqrt_coords(a, field)) {
            return join(std::move(*r), zero);
        }
        // (z sqrt(m))^2 = m z^2
        if (auto z = sqrt_coords(scale_coords(a, 1 / m), field)) {
            return join(zero, *z);
        }
        return std::nullopt;
    }
    auto s = sqrt_coords(relative_norm(x, field), field);
    if (!s) {
        return std::nullopt;
    }
    for (int sign : {1, -1}) {
        Coords u2 = a;
        for (std::size_t i = 0; i < u2.size(); ++i) {
            u2[i] = (u2[i] + sign * (*s)[i]) / 2;
        }
        auto u = sqrt_coords(u2, field);
        if (!u || all_zero(*u)) {
            continue;
        }
        Coords v = mul_coords(b, inv_coords(scale_coords(*u, mpq_class(2)), field), field);
        Coords cand = join(*u, v);
        // u^2 + m v^2 = a holds by construction of u; 2uv = b by construction of v.
        return cand;
    }
    return std::nullopt;
}

bool is_perfect_square(const mpz_class& z)
{
    return sgn(z) >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

// Distinct prime-like factors of |z| by trial division; an unfactored cofactor
// is returned as one entry.
std::vector<mpz_class> prime_support(mpz_class z)
{
    std::vector<mpz_class> primes;
    z = abs(z);
    for (unsigned long p = 2; p <= 1000000 && z > 1; ++p) {
        if (mpz_divisible_ui_p(z.get_mpz_t(), p) == 0) {
            continue;
        }
        primes.emplace_back(p);
        while (mpz_divisible_ui_p(z.get_mpz_t(), p) != 0) {
            z /= p;
        }
        if (mpz_class(p) * p > z) {
            break;
        }
    }
    if (z > 1) {
        primes.push_back(z);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return primes;
}

std::string format_double(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace

// ---------------------------------------------------------------- FieldConfig

void FieldConfig::validate() const
{
    if (tolerance < 0) {
        throw FieldError("tolerance must be nonnegative");
    }
    if (max_adjoin < 0) {
        throw FieldError("max_adjoin must be nonnegative");
    }
    if (mode == Mode::floating) {
        if (!adjoined.empty()) {
            throw FieldError("floating mode does not take adjoined radicands");
        }
        return;
    }
    if (adjoined.size() > 16) {
        throw FieldError("at most 16 radicands are supported");
    }
    for (std::size_t i = 0; i < adjoined.size(); ++i) {
        const long m = adjoined[i];
        if (m == 0 || m == 1) {
            throw FieldError("radicand " + std::to_string(m) + " does not define an extension");
        }
        if (squarefree_part(mpq_class(m)) != m) {
            throw FieldError("radicand " + std::to_string(m) + " is not squarefree");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (adjoined[j] == m) {
                throw FieldError("radicand " + std::to_string(m) + " adjoined twice");
            }
        }
    }
    const std::size_t k = adjoined.size();
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        mpz_class prod = 1;
        for (std::size_t i = 0; i < k; ++i) {
            if ((mask >> i) & 1u) {
                prod *= adjoined[i];
            }
        }
        if (is_perfect_square(prod)) {
            std::string msg = "radicands are multiplicatively dependent:";
            for (std::size_t i = 0; i < k; ++i) {
                if ((mask >> i) & 1u) {
                    msg += " " + std::to_string(adjoined[i]);
                }
            }
            throw FieldError(msg + " multiply to a square");
        }
    }
}

FieldConfig FieldConfig::tower(std::vector<long> radicands, int max_adjoin)
{
    FieldConfig cfg;
    cfg.adjoined = std::move(radicands);
    cfg.max_adjoin = max_adjoin;
    return cfg;
}

FieldConfig FieldConfig::floating(double tolerance)
{
    FieldConfig cfg;
    cfg.mode = Mode::floating;
    cfg.tolerance = tolerance;
    return cfg;
}

// ---------------------------------------------------------------------- Field

FieldPtr Field::make(const FieldConfig& cfg)
{
    cfg.validate();
    std::shared_ptr<Field> f(new Field());
    f->mode_ = cfg.mode;
    f->tolerance_ = cfg.tolerance;
    if (cfg.mode == Mode::exact) {
        f->radicands_ = cfg.adjoined;
    }
    const std::size_t dim = f->dimension();
    f->products_.resize(dim);
    for (unsigned mask = 0; mask < dim; ++mask) {
        mpz_class prod = 1;
        for (std::size_t i = 0; i < f->radicands_.size(); ++i) {
            if ((mask >> i) & 1u) {
                prod *= f->radicands_[i];
            }
        }
        f->products_[mask] = prod;
    }
    for (std::size_t i = 0; i < f->radicands_.size(); ++i) {
        if (f->radicands_[i] < 0) {
            f->negative_mask_ |= 1u << i;
        }
    }
    return f;
}

const FieldPtr& Field::rationals()
{
    static const FieldPtr q = Field::make(FieldConfig{});
    return q;
}

std::complex<long double> Field::basis_value(unsigned mask, unsigned signs) const
{
    std::complex<long double> v = 1.0L;
    for (std::size_t i = 0; i < radicands_.size(); ++i) {
        if (!((mask >> i) & 1u)) {
            continue;
        }
        const long m = radicands_[i];
        std::complex<long double> r = m > 0 ? std::complex<long double>(std::sqrt(static_cast<long double>(m)), 0)
                                            : std::complex<long double>(0, std::sqrt(static_cast<long double>(-m)));
        if ((signs >> i) & 1u) {
            r = -r;
        }
        v *= r;
    }
    return v;
}

FieldPtr Field::adjoin(long radicand) const
{
    FieldConfig cfg = config();
    cfg.adjoined.push_back(radicand);
    return Field::make(cfg);
}

bool Field::contains(const Field& sub) const noexcept
{
    if (!exact()) {
        return true;
    }
    if (!sub.exact() || sub.radicands_.size() > radicands_.size()) {
        return false;
    }
    return std::equal(sub.radicands_.begin(), sub.radicands_.end(), radicands_.begin());
}

FieldConfig Field::config() const
{
    FieldConfig cfg;
    cfg.mode = mode_;
    cfg.tolerance = tolerance_;
    cfg.adjoined = radicands_;
    return cfg;
}

std::string Field::describe() const
{
    if (!exact()) {
        std::ostringstream os;
        os << "C[float, tol=" << tolerance_ << "]";
        return os.str();
    }
    if (radicands_.empty()) {
        return "Q";
    }
    std::string s = "Q(";
    for (std::size_t i = 0; i < radicands_.size(); ++i) {
        s += (i ? ", sqrt(" : "sqrt(") + std::to_string(radicands_[i]) + ")";
    }
    return s + ")";
}

// --------------------------------------------------------------------- Scalar

Scalar::Scalar() : field_(Field::rationals()), coords_{mpq_class(0)} {}

Scalar::Scalar(long value) : field_(Field::rationals()), coords_{mpq_class(value)} {}

Scalar::Scalar(mpq_class value) : field_(Field::rationals()), coords_{std::move(value)}
{
    coords_[0].canonicalize();
}

Scalar Scalar::rational(long num, long den)
{
    if (den == 0) {
        throw DivisionByZero();
    }
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

Scalar Scalar::zero(const FieldPtr& field)
{
    return Scalar(0L).lift(field);
}

Scalar Scalar::one(const FieldPtr& field)
{
    return Scalar(1L).lift(field);
}

Scalar Scalar::from_coords(FieldPtr field, std::vector<mpq_class> coords)
{
    if (!field->exact()) {
        throw FieldError("coordinates require an exact field");
    }
    if (coords.size() != field->dimension()) {
        throw FieldError("coordinate count does not match the tower dimension");
    }
    Scalar s;
    s.field_ = std::move(field);
    for (auto& c : coords) {
        c.canonicalize();
    }
    s.coords_ = std::move(coords);
    return s;
}

Scalar Scalar::from_complex(FieldPtr field, std::complex<double> value)
{
    if (field->exact()) {
        throw FieldError("complex values require a floating field");
    }
    Scalar s;
    s.field_ = std::move(field);
    s.coords_.clear();
    s.value_ = value;
    return s;
}

Scalar Scalar::radical(const FieldPtr& field, std::size_t index)
{
    if (!field->exact() || index >= field->tower_height()) {
        throw FieldError("no such radicand");
    }
    std::vector<mpq_class> c(field->dimension(), mpq_class(0));
    c[std::size_t{1} << index] = 1;
    return from_coords(field, std::move(c));
}

std::complex<double> Scalar::value() const
{
    if (!exact()) {
        return value_;
    }
    auto v = embed(0);
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

std::complex<long double> Scalar::embed(unsigned signs) const
{
    if (!exact()) {
        return {value_.real(), value_.imag()};
    }
    std::complex<long double> v = 0.0L;
    for (unsigned mask = 0; mask < coords_.size(); ++mask) {
        if (sgn(coords_[mask]) == 0) {
            continue;
        }
        const long double c = static_cast<long double>(coords_[mask].get_d());
        v += c * field_->basis_value(mask, signs);
    }
    return v;
}

bool Scalar::is_zero() const
{
    if (!exact()) {
        return std::abs(value_) <= field_->tolerance();
    }
    return all_zero(coords_);
}

bool Scalar::is_one() const
{
    if (!exact()) {
        return std::abs(value_ - 1.0) <= field_->tolerance();
    }
    return coords_[0] == 1 && std::all_of(coords_.begin() + 1, coords_.end(),
                                          [](const mpq_class& q) { return sgn(q) == 0; });
}

bool Scalar::is_rational() const
{
    return exact() && std::all_of(coords_.begin() + 1, coords_.end(),
                                  [](const mpq_class& q) { return sgn(q) == 0; });
}

mpq_class Scalar::to_rational() const
{
    if (!is_rational()) {
        throw FieldError("scalar " + to_string() + " is not rational");
    }
    return coords_[0];
}

bool Scalar::is_real() const
{
    if (!exact()) {
        return std::abs(value_.imag()) <= field_->tolerance();
    }
    const unsigned neg = field_->negative_mask();
    for (unsigned mask = 0; mask < coords_.size(); ++mask) {
        if ((std::popcount(mask & neg) & 1) && sgn(coords_[mask]) != 0) {
            return false;
        }
    }
    return true;
}

Scalar Scalar::conj() const
{
    Scalar out = *this;
    if (!exact()) {
        out.value_ = std::conj(value_);
        return out;
    }
    const unsigned neg = field_->negative_mask();
    for (unsigned mask = 0; mask < out.coords_.size(); ++mask) {
        if (std::popcount(mask & neg) & 1) {
            out.coords_[mask] = -out.coords_[mask];
        }
    }
    return out;
}

Scalar Scalar::inv() const
{
    Scalar out = *this;
    if (!exact()) {
        if (is_zero()) {
            throw DivisionByZero();
        }
        out.value_ = 1.0 / value_;
        return out;
    }
    out.coords_ = inv_coords(coords_, *field_);
    return out;
}

Scalar Scalar::pow(unsigned exponent) const
{
    Scalar result = one(field_);
    Scalar base = *this;
    while (exponent) {
        if (exponent & 1u) {
            result *= base;
        }
        exponent >>= 1;
        if (exponent) {
            base *= base;
        }
    }
    return result;
}

Scalar Scalar::lift(const FieldPtr& target) const
{
    if (target == field_) {
        return *this;
    }
    if (!target->contains(*field_)) {
        throw FieldError("cannot embed " + field_->describe() + " into " + target->describe());
    }
    if (!target->exact()) {
        return from_complex(target, value());
    }
    Scalar out;
    out.field_ = target;
    out.coords_ = coords_;
    out.coords_.resize(target->dimension(), mpq_class(0));
    return out;
}

bool Scalar::is_compound() const
{
    if (!exact()) {
        return !is_real() && std::abs(value_.real()) > field_->tolerance();
    }
    return std::count_if(coords_.begin(), coords_.end(), [](const mpq_class& q) { return sgn(q) != 0; }) > 1;
}

std::string Scalar::to_string() const
{
    if (!exact()) {
        const double tol = field_->tolerance();
        const double re = std::abs(value_.real()) <= tol ? 0.0 : value_.real();
        const double im = std::abs(value_.imag()) <= tol ? 0.0 : value_.imag();
        if (im == 0.0) {
            return format_double(re);
        }
        std::string imag_part = format_double(std::abs(im)) + "*sqrt(-1)";
        if (re == 0.0) {
            return (im < 0 ? "-" : "") + imag_part;
        }
        return "(" + format_double(re) + (im < 0 ? "-" : "+") + imag_part + ")";
    }
    std::string out;
    for (unsigned mask = 0; mask < coords_.size(); ++mask) {
        const mpq_class& c = coords_[mask];
        if (sgn(c) == 0) {
            continue;
        }
        std::string term;
        if (mask == 0) {
            term = c.get_str();
        } else {
            std::string rad;
            for (std::size_t i = 0; i < field_->tower_height(); ++i) {
                if ((mask >> i) & 1u) {
                    rad += (rad.empty() ? "" : "*") + std::string("sqrt(") + std::to_string(field_->radicands()[i]) + ")";
                }
            }
            if (c == 1) {
                term = rad;
            } else if (c == -1) {
                term = "-" + rad;
            } else {
                term = c.get_str() + "*" + rad;
            }
        }
        if (!out.empty() && term[0] != '-') {
            out += "+";
        }
        out += term;
    }
    return out.empty() ? "0" : out;
}

Scalar Scalar::operator-() const
{
    Scalar out = *this;
    if (!exact()) {
        out.value_ = -value_;
    } else {
        for (auto& c : out.coords_) {
            c = -c;
        }
    }
    return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs)
{
    if (field_ == rhs.field_ && exact()) {
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            coords_[i] += rhs.coords_[i];
        }
        return *this;
    }
    FieldPtr f = common_field(field_, rhs.field_);
    Scalar r = rhs.lift(f);
    *this = lift(f);
    if (!f->exact()) {
        value_ += r.value_;
    } else {
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            coords_[i] += r.coords_[i];
        }
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs)
{
    return *this += -rhs;
}

Scalar& Scalar::operator*=(const Scalar& rhs)
{
    if (field_ == rhs.field_ && exact()) {
        coords_ = mul_coords(coords_, rhs.coords_, *field_);
        return *this;
    }
    FieldPtr f = common_field(field_, rhs.field_);
    Scalar r = rhs.lift(f);
    *this = lift(f);
    if (!f->exact()) {
        value_ *= r.value_;
    } else {
        coords_ = mul_coords(coords_, r.coords_, *f);
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs)
{
    return *this *= rhs.inv();
}

bool operator==(const Scalar& lhs, const Scalar& rhs)
{
    if (lhs.exact() && rhs.exact()) {
        if (lhs.field_ == rhs.field_) {
            return lhs.coords_ == rhs.coords_;
        }
        FieldPtr f = common_field(lhs.field_, rhs.field_);
        return lhs.lift(f).coords_ == rhs.lift(f).coords_;
    }
    return (lhs - rhs).is_zero();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s)
{
    return os << s.to_string();
}

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b)
{
    if (a == b) {
        return a;
    }
    if (!a->exact()) {
        return a;
    }
    if (!b->exact()) {
        return b;
    }
    if (a->contains(*b)) {
        return a;
    }
    if (b->contains(*a)) {
        return b;
    }
    throw FieldError("incompatible towers " + a->describe() + " and " + b->describe());
}

Scalar tower_mul(const Scalar& a, const Scalar& b)
{
    return a * b;
}

Scalar tower_inv(const Scalar& a)
{
    return a.inv();
}

std::string NeedsExtension::to_string() const
{
    if (radicand) {
        return "sqrt(" + std::to_string(*radicand) + ")";
    }
    return "sqrt(" + element.to_string() + ")";
}

SqrtResult try_sqrt(const Scalar& a, const FieldPtr& field)
{
    if (!field->exact() || !a.exact()) {
        FieldPtr f = field->exact() ? a.field() : field;
        return Scalar::from_complex(f, std::sqrt(a.value()));
    }
    Scalar x = a.lift(common_field(a.field(), field));
    if (x.is_zero()) {
        return x;
    }
    if (auto r = sqrt_coords(x.coords(), *x.field())) {
        return Scalar::from_coords(x.field(), std::move(*r));
    }
    NeedsExtension need{std::nullopt, x};
    auto to_long = [](const mpz_class& z) -> std::optional<long> {
        if (!z.fits_slong_p()) {
            return std::nullopt;
        }
        return z.get_si();
    };
    if (x.is_rational()) {
        need.radicand = to_long(squarefree_part(x.to_rational()));
        return need;
    }
    // sqrt(x) = sqrt(x/m) * sqrt(m) for some squarefree m built from the
    // primes of the absolute norm, when such an m exists.
    std::vector<mpq_class> n = x.coords();
    while (n.size() > 1) {
        n = relative_norm(n, *x.field());
    }
    std::vector<mpz_class> primes = prime_support(n[0].get_num());
    for (auto& p : prime_support(n[0].get_den())) {
        primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    if (primes.size() <= 10) {
        for (unsigned mask = 0; mask < (1u << primes.size()); ++mask) {
            mpz_class m = 1;
            for (std::size_t i = 0; i < primes.size(); ++i) {
                if ((mask >> i) & 1u) {
                    m *= primes[i];
                }
            }
            for (int sign : {1, -1}) {
                mpz_class cand = m * sign;
                if (cand == 1) {
                    continue;
                }
                if (sqrt_coords(scale_coords(x.coords(), mpq_class(1) / mpq_class(cand)), *x.field())) {
                    need.radicand = to_long(cand);
                    return need;
                }
            }
        }
    }
    return need;
}

mpz_class squarefree_part(const mpq_class& q)
{
    if (sgn(q) == 0) {
        throw FieldError("squarefree part of zero");
    }
    mpz_class s = abs(q.get_num() * q.get_den());
    mpz_class result = 1;
    for (unsigned long p = 2; p <= 1000000; ++p) {
        if (mpz_class(p) * p > s) {
            break;
        }
        unsigned count = 0;
        while (mpz_divisible_ui_p(s.get_mpz_t(), p) != 0) {
            s /= p;
            ++count;
        }
        if (count & 1u) {
            result *= p;
        }
    }
    if (s > 1 && !is_perfect_square(s)) {
        result *= s;
    }
    return sgn(q) < 0 ? mpz_class(-result) : result;
}

} // namespace diagform
