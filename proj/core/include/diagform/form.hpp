#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diagform/matrix.hpp"
#include "diagform/scalar.hpp"

namespace diagform {

/// Exponent vector (e_1, ..., e_n) of a monomial x1^e_1 * ... * xn^e_n.
using Exponent = std::vector<int>;
/// Nondecreasing list of 0-based variable indices (i_1 <= ... <= i_d).
using MultiIndex = std::vector<int>;

MultiIndex to_multi_index(const Exponent& e);
Exponent to_exponent(const MultiIndex& idx, std::size_t n);
/// d! / (m_1! ... m_n!) for the multiplicities of the exponent vector.
mpz_class multinomial(const Exponent& e);
/// All sorted multi-indices of length d over n variables, in lexicographic order.
std::vector<MultiIndex> sorted_multi_indices(std::size_t n, unsigned d);

/// Homogeneous polynomial of degree d in x1..xn. Zero coefficients are never
/// stored; iteration runs in graded lexicographic order (x1^d first).
class Form {
public:
    using Terms = std::map<Exponent, Scalar, std::greater<>>;

    Form(std::size_t nvars, unsigned degree);
    Form(std::size_t nvars, unsigned degree, const Terms& terms);

    std::size_t nvars() const noexcept { return nvars_; }
    unsigned degree() const noexcept { return degree_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    Scalar coeff(const Exponent& e) const;
    /// Adds c to the coefficient of x^e; throws NotHomogeneous on a degree clash.
    void add_term(const Exponent& e, const Scalar& c);

    Scalar evaluate(const Vector& point) const;
    /// Largest coefficient magnitude under the standard embedding.
    double max_magnitude() const;

    /// Canonical text: "coef*x1^e1*x2^e2" terms joined by +/-, unit
    /// coefficients omitted, compound coefficients parenthesized.
    std::string to_string() const;

    Form& operator+=(const Form& rhs);
    Form& operator-=(const Form& rhs);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(const Form& a, const Form& b);
    friend Form operator*(const Scalar& c, const Form& a);
    friend bool operator==(const Form& a, const Form& b);
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

private:
    std::size_t nvars_;
    unsigned degree_;
    Terms terms_;
};

/// The linear form sum_j coeffs[j] * x_{j+1}.
Form linear_form(const Vector& coeffs);
/// l^d by repeated multiplication.
Form power(const Form& f, unsigned exponent);
/// f(M y): M has f.nvars() rows, the result has M.cols() variables.
Form substitute(const Form& f, const Matrix& m);

/// Symmetric d-tensor stored by sorted multi-index; absent keys are zero.
class SymTensor {
public:
    SymTensor(std::size_t dim, unsigned order);

    std::size_t dim() const noexcept { return dim_; }
    unsigned order() const noexcept { return order_; }
    const std::map<MultiIndex, Scalar>& entries() const noexcept { return entries_; }

    /// Any index order is accepted; the key is sorted before lookup.
    Scalar get(MultiIndex idx) const;
    void set(MultiIndex idx, const Scalar& value);

    bool is_zero() const noexcept { return entries_.empty(); }
    bool is_diagonal() const;
    /// Sub-tensor on the listed variables (in that order).
    SymTensor restrict_to(const std::vector<int>& vars) const;

    friend bool operator==(const SymTensor& a, const SymTensor& b);
    friend bool operator!=(const SymTensor& a, const SymTensor& b) { return !(a == b); }

private:
    void check_index(const MultiIndex& idx) const;

    std::size_t dim_;
    unsigned order_;
    std::map<MultiIndex, Scalar> entries_;
};

SymTensor gram_tensor(const Form& f);
Form form_from_gram(const SymTensor& a);

/// d-congruence A P^d: B_{j1..jd} = sum a_{i1..id} p_{i1 j1} ... p_{id jd},
/// the Gram tensor of f(P y). P may be rectangular (n rows).
SymTensor congruence(const SymTensor& a, const Matrix& p);

/// The n x n matrix (a_{i1 i2 tail})_{i1,i2}; `tail` has length d-2 and 0-based entries.
Matrix slice(const SymTensor& a, const MultiIndex& tail);
/// Slices for every sorted tail.
std::vector<Matrix> all_slices(const SymTensor& a);

/// Second partial derivatives of f evaluated at p.
Matrix hessian_at(const Form& f, const Vector& p);

/// Parses the polynomial grammar: sums and products of coefficients,
/// variables x1..xn, integer powers, parentheses, rationals p/q, decimals and
/// sqrt(m). Throws SyntaxError, NotHomogeneous or DegreeTooLow (d < 3).
/// `nvars` overrides the variable count inferred from the highest index.
Form parse_form(std::string_view text, const FieldPtr& field, std::optional<std::size_t> nvars = std::nullopt);
Form parse_form(std::string_view text, const FieldConfig& cfg, std::optional<std::size_t> nvars = std::nullopt);

/// Parses a constant expression in the same grammar.
Scalar parse_scalar(std::string_view text, const FieldPtr& field);

} // namespace diagform
