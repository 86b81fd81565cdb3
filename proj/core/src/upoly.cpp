#include "diagform/upoly.hpp"

#include <algorithm>

#include "diagform/errors.hpp"

namespace diagform {

UPoly::UPoly(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs))
{
    trim();
}

void UPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back().is_zero()) {
        coeffs_.pop_back();
    }
}

UPoly UPoly::constant(const Scalar& c)
{
    return UPoly({c});
}

UPoly UPoly::monomial(const Scalar& c, unsigned degree)
{
    std::vector<Scalar> v(degree + 1, Scalar::zero(c.field()));
    v[degree] = c;
    return UPoly(std::move(v));
}

UPoly UPoly::linear(const Scalar& root)
{
    return UPoly({-root, Scalar::one(root.field())});
}

Scalar UPoly::coeff(std::size_t i) const
{
    return i < coeffs_.size() ? coeffs_[i] : Scalar();
}

const Scalar& UPoly::leading() const
{
    if (coeffs_.empty()) {
        throw Error("leading coefficient of the zero polynomial");
    }
    return coeffs_.back();
}

UPoly UPoly::monic() const
{
    if (is_zero()) {
        return *this;
    }
    const Scalar inv = leading().inv();
    UPoly out = *this;
    for (auto& c : out.coeffs_) {
        c *= inv;
    }
    out.coeffs_.back() = Scalar::one(out.coeffs_.back().field());
    return out;
}

UPoly UPoly::derivative() const
{
    std::vector<Scalar> v;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        v.push_back(coeffs_[i] * Scalar(static_cast<long>(i)));
    }
    return UPoly(std::move(v));
}

bool UPoly::is_rational() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c.is_rational(); });
}

Scalar UPoly::eval(const Scalar& x) const
{
    Scalar acc = Scalar::zero(x.field());
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

UPoly UPoly::pow(unsigned e) const
{
    UPoly result({Scalar(1)});
    for (unsigned i = 0; i < e; ++i) {
        result = result * *this;
    }
    return result;
}

std::string UPoly::to_string(std::string_view var) const
{
    if (is_zero()) {
        return "0";
    }
    std::string out;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const Scalar& c = coeffs_[k];
        if (c.is_zero()) {
            continue;
        }
        std::string mono;
        if (k >= 1) {
            mono = std::string(var);
            if (k > 1) {
                mono += "^" + std::to_string(k);
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

UPoly operator+(const UPoly& a, const UPoly& b)
{
    std::vector<Scalar> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = a.coeff(i) + b.coeff(i);
    }
    return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a, const UPoly& b)
{
    std::vector<Scalar> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = a.coeff(i) - b.coeff(i);
    }
    return UPoly(std::move(v));
}

UPoly operator*(const UPoly& a, const UPoly& b)
{
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<Scalar> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return UPoly(std::move(v));
}

UPoly operator*(const Scalar& c, const UPoly& a)
{
    std::vector<Scalar> v = a.coeffs_;
    for (auto& x : v) {
        x = c * x;
    }
    return UPoly(std::move(v));
}

bool operator==(const UPoly& a, const UPoly& b)
{
    return (a - b).is_zero();
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b)
{
    if (b.is_zero()) {
        throw DivisionByZero();
    }
    std::vector<Scalar> rem = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) {
        return {UPoly(), a};
    }
    std::vector<Scalar> quot(static_cast<std::size_t>(a.degree() - db + 1));
    const Scalar lead_inv = b.leading().inv();
    for (int k = a.degree() - db; k >= 0; --k) {
        const Scalar q = rem[static_cast<std::size_t>(k + db)] * lead_inv;
        quot[static_cast<std::size_t>(k)] = q;
        if (q.is_zero()) {
            continue;
        }
        for (int j = 0; j <= db; ++j) {
            rem[static_cast<std::size_t>(k + j)] -= q * b.coeffs()[static_cast<std::size_t>(j)];
        }
        rem[static_cast<std::size_t>(k + db)] = Scalar::zero(rem[static_cast<std::size_t>(k + db)].field());
    }
    rem.resize(static_cast<std::size_t>(db));
    return {UPoly(std::move(quot)), UPoly(std::move(rem))};
}

UPoly gcd(const UPoly& a, const UPoly& b)
{
    UPoly x = a;
    UPoly y = b;
    while (!y.is_zero()) {
        UPoly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Bezout extended_gcd(const UPoly& a, const UPoly& b)
{
    UPoly r0 = a, r1 = b;
    UPoly s0({Scalar(1)}), s1;
    UPoly t0, t1({Scalar(1)});
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UPoly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        UPoly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) {
        return {r0, s0, t0};
    }
    const Scalar inv = r0.leading().inv();
    return {inv * r0, inv * s0, inv * t0};
}

UPoly squarefree_part(const UPoly& a)
{
    if (a.degree() <= 0) {
        return a.monic();
    }
    return divmod(a, gcd(a, a.derivative())).first.monic();
}

} // namespace diagform
