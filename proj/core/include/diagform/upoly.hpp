#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diagform/scalar.hpp"

namespace diagform {

/// Dense univariate polynomial over the working field, coefficients stored
/// from the constant term upward with no trailing zeros.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Scalar> coeffs);

    static UPoly constant(const Scalar& c);
    /// c * t^degree
    static UPoly monomial(const Scalar& c, unsigned degree);
    /// t - root
    static UPoly linear(const Scalar& root);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }
    Scalar coeff(std::size_t i) const;
    const Scalar& leading() const;

    UPoly monic() const;
    UPoly derivative() const;
    bool is_rational() const;
    Scalar eval(const Scalar& x) const;
    UPoly pow(unsigned e) const;

    std::string to_string(std::string_view var = "t") const;

    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const Scalar& c, const UPoly& a);
    friend bool operator==(const UPoly& a, const UPoly& b);

private:
    void trim();
    std::vector<Scalar> coeffs_;
};

/// Quotient and remainder; throws DivisionByZero for a zero divisor.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);

/// Monic greatest common divisor (zero when both inputs are zero).
UPoly gcd(const UPoly& a, const UPoly& b);

struct Bezout {
    UPoly g;
    UPoly s;
    UPoly t;
};

/// g = s*a + t*b with g the monic gcd.
Bezout extended_gcd(const UPoly& a, const UPoly& b);

/// Largest squarefree divisor, a / gcd(a, a').
UPoly squarefree_part(const UPoly& a);

} // namespace diagform
