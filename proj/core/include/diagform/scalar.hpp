#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace diagform {

enum class Mode { exact, floating };

/// Selects the working field for one run.
///
/// In exact mode the field is the tower Q(sqrt(m1), ..., sqrt(mk)) over the
/// `adjoined` radicands. `max_adjoin` is the number of further radicands the
/// idempotent splitter may append on its own when a quadratic factor needs
/// one; zero keeps every computation inside the named field. In floating mode
/// the field is C with absolute tolerance `tolerance` and `adjoined` must be
/// empty.
struct FieldConfig {
    Mode mode = Mode::exact;
    std::vector<long> adjoined;
    double tolerance = 1e-9;
    int max_adjoin = 0;

    /// Throws FieldError when the radicands are not squarefree, repeat, equal
    /// 0 or 1, or when some subset multiplies to a perfect square.
    void validate() const;

    static FieldConfig rationals() { return {}; }
    static FieldConfig tower(std::vector<long> radicands, int max_adjoin = 0);
    static FieldConfig floating(double tolerance = 1e-9);
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Immutable description of a working field. Exact fields store the radicand
/// list; an element is a dense vector of 2^k rational coordinates over the
/// basis sqrt(m_{i1}) * ... * sqrt(m_{ij}), indexed by the bitmask of the
/// radicands involved.
class Field {
public:
    static FieldPtr make(const FieldConfig& cfg);
    static const FieldPtr& rationals();

    Mode mode() const noexcept { return mode_; }
    bool exact() const noexcept { return mode_ == Mode::exact; }
    double tolerance() const noexcept { return tolerance_; }
    const std::vector<long>& radicands() const noexcept { return radicands_; }
    std::size_t tower_height() const noexcept { return radicands_.size(); }
    std::size_t dimension() const noexcept { return std::size_t{1} << radicands_.size(); }

    /// Product of the radicands selected by `mask`; sqrt(b_a) * sqrt(b_b) =
    /// radicand_product(a & b) * sqrt(b_{a ^ b}).
    const mpz_class& radicand_product(unsigned mask) const { return products_[mask]; }

    /// Bitmask of the negative radicands (the basis elements that are
    /// imaginary under the standard embedding).
    unsigned negative_mask() const noexcept { return negative_mask_; }

    /// Numeric value of basis element `mask` under the embedding that sends
    /// sqrt(m_i) to (-1)^{bit i of signs} times the principal root.
    std::complex<long double> basis_value(unsigned mask, unsigned signs = 0) const;

    FieldPtr adjoin(long radicand) const;

    /// True when `sub` is this field or a subtower obtained by dropping
    /// trailing radicands.
    bool contains(const Field& sub) const noexcept;

    FieldConfig config() const;
    std::string describe() const;

private:
    Field() = default;

    Mode mode_ = Mode::exact;
    double tolerance_ = 1e-9;
    std::vector<long> radicands_;
    std::vector<mpz_class> products_;
    unsigned negative_mask_ = 0;
};

/// An element of the working field.
class Scalar {
public:
    Scalar();
    Scalar(long value); // NOLINT(google-explicit-constructor)
    Scalar(int value) : Scalar(static_cast<long>(value)) {} // NOLINT
    Scalar(mpq_class value); // NOLINT(google-explicit-constructor)

    static Scalar rational(long num, long den);
    static Scalar zero(const FieldPtr& field);
    static Scalar one(const FieldPtr& field);
    static Scalar from_coords(FieldPtr field, std::vector<mpq_class> coords);
    static Scalar from_complex(FieldPtr field, std::complex<double> value);
    /// sqrt(m_i) for the i-th radicand of an exact field.
    static Scalar radical(const FieldPtr& field, std::size_t index);

    const FieldPtr& field() const noexcept { return field_; }
    bool exact() const noexcept { return field_->exact(); }
    const std::vector<mpq_class>& coords() const noexcept { return coords_; }

    /// Standard numeric embedding (principal square roots).
    std::complex<double> value() const;
    /// Embedding selected by a sign pattern on the radicands.
    std::complex<long double> embed(unsigned signs = 0) const;
    double magnitude() const { return std::abs(value()); }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    mpq_class to_rational() const;
    /// Real under the standard embedding.
    bool is_real() const;

    /// Complex conjugate: negates the coordinates carrying an odd number of
    /// negative radicands (exact), std::conj (floating).
    Scalar conj() const;
    Scalar inv() const;
    Scalar pow(unsigned exponent) const;
    /// Re-expresses this element in a field that contains its own.
    Scalar lift(const FieldPtr& target) const;

    /// True when printing needs parentheses inside a product.
    bool is_compound() const;
    std::string to_string() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
    friend bool operator==(const Scalar& lhs, const Scalar& rhs);
    friend bool operator!=(const Scalar& lhs, const Scalar& rhs) { return !(lhs == rhs); }

private:
    FieldPtr field_;
    std::vector<mpq_class> coords_;
    std::complex<double> value_{};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// The field that holds both operands; throws FieldError when neither tower
/// extends the other.
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

Scalar tower_mul(const Scalar& a, const Scalar& b);
/// Throws DivisionByZero for a == 0.
Scalar tower_inv(const Scalar& a);

/// A square root that is missing from the current tower. `radicand` is the
/// squarefree integer to adjoin when one exists; otherwise only `element` (the
/// value whose root is needed) is known.
struct NeedsExtension {
    std::optional<long> radicand;
    Scalar element;

    std::string to_string() const;
};

using SqrtResult = std::variant<Scalar, NeedsExtension>;

/// Square root inside the tower of `field` (exact mode). Floating mode always
/// succeeds with the principal root.
SqrtResult try_sqrt(const Scalar& a, const FieldPtr& field);

/// Squarefree kernel s of a nonzero rational q, so that q = s * c^2 with c
/// rational. Trial division up to 10^6, then a perfect-square test on the
/// cofactor.
mpz_class squarefree_part(const mpq_class& q);

} // namespace diagform
